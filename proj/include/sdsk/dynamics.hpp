#pragma once

// Graph dynamical system maps over a NetworkModel: G-local maps, synchronous
// and sequential composition, phase spaces and their cycle structures.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sdsk/error.hpp"
#include "sdsk/model.hpp"
#include "sdsk/orientation.hpp"

namespace sdsk {

using SystemState = std::vector<Value>;
using StateIndex = std::uint64_t;
using Digit = std::uint16_t;

inline constexpr std::uint64_t default_state_budget = std::uint64_t{1} << 24;

// Mixed-radix encoding of states; vertex 1 is the least significant digit and
// the digit of a value is its position in the sorted domain.
class StateSpace {
 public:
  StateSpace() = default;

  explicit StateSpace(const NetworkModel& m, std::uint64_t budget = default_state_budget)
      : domains_(m.variables.size()) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
      domains_[i] = m.variables[i].domain;
      strides_.push_back(size);
      if (__builtin_mul_overflow(size, domains_[i].size(), &size) || size > budget)
        throw BudgetExceeded("state space of " + m.name + " exceeds the budget of " +
                             std::to_string(budget) + " states");
    }
    size_ = size;
  }

  std::uint64_t size() const noexcept { return size_; }
  std::size_t dimension() const noexcept { return domains_.size(); }
  std::size_t radix(std::size_t i) const { return domains_[i].size(); }
  std::uint64_t stride(std::size_t i) const { return strides_[i]; }
  const Domain& domain(std::size_t i) const { return domains_[i]; }

  void check(std::span<const Value> x) const {
    if (x.size() != domains_.size()) throw InputError("state has wrong dimension");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!domains_[i].contains(x[i]))
        throw InputError("value " + std::to_string(x[i]) + " outside domain of vertex " +
                         std::to_string(i + 1));
  }

  StateIndex encode(std::span<const Value> x) const {
    check(x);
    StateIndex code = 0;
    for (std::size_t i = 0; i < x.size(); ++i) code += *domains_[i].index_of(x[i]) * strides_[i];
    return code;
  }

  SystemState decode(StateIndex code) const {
    SystemState x(domains_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = domains_[i].values[code % domains_[i].size()];
      code /= domains_[i].size();
    }
    return x;
  }

  // Rank of the state in lexicographic order of (x_1, ..., x_n).
  std::uint64_t lexicographic_rank(StateIndex code) const {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < domains_.size(); ++i)
      rank = rank * domains_[i].size() + (code / strides_[i]) % domains_[i].size();
    return rank;
  }

 private:
  std::vector<Domain> domains_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

struct ParallelUpdate {
  friend bool operator==(const ParallelUpdate&, const ParallelUpdate&) = default;
};

using UpdateScheme = std::variant<ParallelUpdate, UpdateOrder>;

inline std::string to_string(const UpdateScheme& u) {
  if (std::holds_alternative<ParallelUpdate>(u)) return "parallel";
  return std::get<UpdateOrder>(u).to_string();
}

namespace detail {

inline void check_order(const NetworkModel& m, const UpdateOrder& pi) {
  if (!pi.is_permutation_of(m.size()))
    throw InputError("update order " + pi.to_string() + " is not a permutation of the " +
                     std::to_string(m.size()) + " vertices of " + m.name);
}

inline Value apply_rule(const NetworkModel& m, const ParameterAssignment& params, std::size_t i,
                        std::span<const Value> x) {
  Value v = evaluate(*m.rules[i], x, params.values);
  if (!m.variables[i].domain.contains(v))
    throw InputError("rule for '" + m.variables[i].name + "' produced " + std::to_string(v) +
                     ", outside its domain");
  return v;
}

}  // namespace detail

// F_i: replace x_i by f_i(x[i]); vertex ids are 1-based.
inline SystemState local_map(const NetworkModel& m, const ParameterAssignment& params, Vertex i,
                             const SystemState& x) {
  validate_assignment(m, params);
  if (i < 1 || i > m.size()) throw InputError("vertex " + std::to_string(i) + " out of range");
  StateSpace(m, UINT64_MAX).check(x);
  SystemState y = x;
  y[i - 1] = detail::apply_rule(m, params, i - 1, x);
  return y;
}

inline SystemState synchronous_map(const NetworkModel& m, const ParameterAssignment& params,
                                   const SystemState& x) {
  validate_assignment(m, params);
  StateSpace(m, UINT64_MAX).check(x);
  SystemState y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = detail::apply_rule(m, params, i, x);
  return y;
}

// F_pi = F_{pi_n} o ... o F_{pi_1}: each vertex sees the partially updated state.
inline SystemState sequential_map(const NetworkModel& m, const ParameterAssignment& params,
                                  const UpdateOrder& pi, const SystemState& x) {
  validate_assignment(m, params);
  detail::check_order(m, pi);
  StateSpace(m, UINT64_MAX).check(x);
  SystemState y = x;
  for (Vertex v : pi.sequence) y[v - 1] = detail::apply_rule(m, params, v - 1, y);
  return y;
}

// Each rule tabulated over the digits of the variables it reads, for one
// parameter assignment. This is the fast path used to build phase spaces.
class CompiledRules {
 public:
  CompiledRules(const NetworkModel& m, const ParameterAssignment& params,
                std::uint64_t state_budget = default_state_budget)
      : space_(m, state_budget), params_(params), model_name_(m.name) {
    validate_assignment(m, params);
    if (space_.size() > std::numeric_limits<std::uint32_t>::max())
      throw BudgetExceeded("successor arrays hold 32-bit state codes");
    const std::size_t n = m.size();
    rules_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<SymbolRef> refs;
      collect_refs(*m.rules[i], refs);
      Table& t = rules_[i];
      for (const auto& r : refs)
        if (r.scope == Scope::variable) t.reads.push_back(r.index);
      std::sort(t.reads.begin(), t.reads.end());
      t.reads.erase(std::unique(t.reads.begin(), t.reads.end()), t.reads.end());
      std::size_t entries = 1;
      for (auto r : t.reads) {
        t.strides.push_back(entries);
        entries *= space_.radix(r);
      }
      t.values.resize(entries);
      SystemState x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = space_.domain(j).values.front();
      for (std::size_t idx = 0; idx < entries; ++idx) {
        for (std::size_t k = 0; k < t.reads.size(); ++k)
          x[t.reads[k]] = space_.domain(t.reads[k]).values[(idx / t.strides[k]) % space_.radix(t.reads[k])];
        Value v = detail::apply_rule(m, params, i, x);
        t.values[idx] = static_cast<Digit>(*space_.domain(i).index_of(v));
      }
    }
  }

  const StateSpace& space() const noexcept { return space_; }
  const ParameterAssignment& parameters() const noexcept { return params_; }
  const std::string& model_name() const noexcept { return model_name_; }
  std::size_t size() const noexcept { return rules_.size(); }

  Digit next_digit(std::size_t i, std::span<const Digit> digits) const {
    const Table& t = rules_[i];
    std::size_t idx = 0;
    for (std::size_t k = 0; k < t.reads.size(); ++k) idx += digits[t.reads[k]] * t.strides[k];
    return t.values[idx];
  }

  // successor[s] = F(s) for every state s.
  void fill_successors(const UpdateScheme& update, std::vector<std::uint32_t>& successor) const {
    const std::size_t n = rules_.size();
    const auto* order = std::get_if<UpdateOrder>(&update);
    if (order && !order->is_permutation_of(n))
      throw InputError("update order " + order->to_string() + " is not a permutation of 1.." +
                       std::to_string(n));
    std::vector<Vertex> sequence;
    if (order) sequence = order->sequence;
    successor.resize(space_.size());
    std::vector<Digit> digits(n, 0), work(n, 0);
    for (std::uint64_t s = 0; s < space_.size(); ++s) {
      if (order) {
        work = digits;
        for (Vertex v : sequence) work[v - 1] = next_digit(v - 1, work);
      } else {
        for (std::size_t i = 0; i < n; ++i) work[i] = next_digit(i, digits);
      }
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n; ++i) code += work[i] * space_.stride(i);
      successor[s] = static_cast<std::uint32_t>(code);
      for (std::size_t i = 0; i < n; ++i) {
        if (++digits[i] < space_.radix(i)) break;
        digits[i] = 0;
      }
    }
  }

 private:
  struct Table {
    std::vector<std::size_t> reads;
    std::vector<std::size_t> strides;
    std::vector<Digit> values;
  };

  StateSpace space_;
  ParameterAssignment params_;
  std::string model_name_;
  std::vector<Table> rules_;
};

struct PhaseSpace {
  std::vector<std::uint32_t> successor;
  StateSpace space;
  std::string model_name;
  std::string parameters;  // "name=value,..."
  UpdateScheme update;

  std::uint64_t size() const noexcept { return successor.size(); }

  // "state_code,successor_code" lines.
  std::string to_csv() const {
    std::string out = "state_code,successor_code\n";
    for (std::size_t s = 0; s < successor.size(); ++s)
      out += std::to_string(s) + "," + std::to_string(successor[s]) + "\n";
    return out;
  }
};

inline PhaseSpace phase_space(const CompiledRules& rules, const UpdateScheme& update) {
  PhaseSpace ps{{}, rules.space(), rules.model_name(), {}, update};
  rules.fill_successors(update, ps.successor);
  return ps;
}

inline PhaseSpace phase_space(const NetworkModel& m, const ParameterAssignment& params,
                              const UpdateScheme& update,
                              std::uint64_t state_budget = default_state_budget) {
  if (const auto* pi = std::get_if<UpdateOrder>(&update)) detail::check_order(m, *pi);
  PhaseSpace ps = phase_space(CompiledRules(m, params, state_budget), update);
  ps.parameters = to_string(m, params);
  return ps;
}

struct CycleWitness {
  std::size_t length;
  StateIndex state;  // lexicographically least state on the cycle
  friend auto operator<=>(const CycleWitness&, const CycleWitness&) = default;
};

// Multiset of cycle lengths. Equality and ordering ignore witnesses.
struct CycleStructure {
  std::map<std::size_t, std::size_t> counts;  // length -> number of cycles
  std::vector<CycleWitness> witnesses;        // sorted; empty when not requested

  std::size_t cycle_count() const {
    std::size_t total = 0;
    for (auto [len, c] : counts) total += c;
    return total;
  }

  std::size_t periodic_points() const {
    std::size_t total = 0;
    for (auto [len, c] : counts) total += len * c;
    return total;
  }

  // "{1(2), 2(3)}", ascending by length.
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto [len, c] : counts) {
      if (!first) out += ", ";
      first = false;
      out += std::to_string(len) + "(" + std::to_string(c) + ")";
    }
    return out + "}";
  }

  bool has_fixed_point(StateIndex s) const {
    return std::binary_search(witnesses.begin(), witnesses.end(), CycleWitness{1, s});
  }

  CycleStructure& operator+=(const CycleStructure& other) {
    for (auto [len, c] : other.counts) counts[len] += c;
    witnesses.clear();
    return *this;
  }

  friend bool operator==(const CycleStructure& a, const CycleStructure& b) {
    return a.counts == b.counts;
  }
};

inline CycleStructure operator+(CycleStructure a, const CycleStructure& b) {
  a += b;
  return a;
}

// Periodic points of a functional graph by successor walks with three-state
// marking (unvisited, on the current walk, resolved). `scratch` may be reused
// across calls to avoid reallocation.
inline CycleStructure cycle_structure(std::span<const std::uint32_t> successor,
                                      const StateSpace* space, std::vector<std::uint8_t>& scratch,
                                      std::vector<std::uint32_t>& path) {
  enum : std::uint8_t { unvisited = 0, on_path = 1, resolved = 2 };
  CycleStructure out;
  scratch.assign(successor.size(), unvisited);
  for (std::uint32_t start = 0; start < successor.size(); ++start) {
    if (scratch[start] != unvisited) continue;
    path.clear();
    std::uint32_t x = start;
    while (scratch[x] == unvisited) {
      scratch[x] = on_path;
      path.push_back(x);
      x = successor[x];
    }
    if (scratch[x] == on_path) {
      std::size_t length = 0;
      std::uint32_t best = x;
      std::uint32_t y = x;
      do {
        ++length;
        if (space && space->lexicographic_rank(y) < space->lexicographic_rank(best)) best = y;
        y = successor[y];
      } while (y != x);
      ++out.counts[length];
      if (space) out.witnesses.push_back({length, best});
    }
    for (auto p : path) scratch[p] = resolved;
  }
  std::sort(out.witnesses.begin(), out.witnesses.end());
  return out;
}

inline CycleStructure cycle_structure(const PhaseSpace& ps) {
  std::vector<std::uint8_t> scratch;
  std::vector<std::uint32_t> path;
  return cycle_structure(ps.successor, &ps.space, scratch, path);
}

}  // namespace sdsk
