#pragma once

// Deletion-contraction evaluation of alpha(G) (acyclic orientations) and
// kappa(G) (kappa-classes).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdsk/error.hpp"
#include "sdsk/graph.hpp"

namespace sdsk {

struct CountResult {
  std::uint64_t value = 0;
  std::string graph_fingerprint;
};

enum class Invariant { alpha, kappa };

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t sum = 0;
  if (__builtin_add_overflow(a, b, &sum)) throw OverflowError("count exceeds 64 bits");
  return sum;
}

// Memo key: sorted edge list after dropping isolated vertices and renumbering
// the rest contiguously. Neither invariant sees isolated vertices.
inline std::string canonical_key(const SimpleGraph& g) {
  std::vector<Vertex> relabel(g.vertex_count() + 1, 0);
  Vertex next = 0;
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    if (g.degree(v) > 0) relabel[v] = ++next;
  std::string key;
  key.reserve(g.edge_count() * 2 * sizeof(Vertex));
  for (const auto& e : g.edges()) {
    Vertex pair[2] = {relabel[e.u], relabel[e.v]};
    key.append(reinterpret_cast<const char*>(pair), sizeof(pair));
  }
  return key;
}

}  // namespace detail

// Evaluates alpha or kappa by deletion-contraction. Pivots default to the
// lexicographically least edge (alpha) or least cycle edge (kappa); a custom
// pivot picker receives the admissible edges and must return one of them.
class DeletionContraction {
 public:
  using PivotFn = std::function<Edge(const SimpleGraph&, const std::vector<Edge>&)>;

  explicit DeletionContraction(Invariant which, PivotFn pivot = {}, bool memoize = true)
      : which_(which), pivot_(std::move(pivot)), memoize_(memoize) {}

  std::uint64_t operator()(const SimpleGraph& g) { return evaluate(g); }

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  std::uint64_t evaluate(const SimpleGraph& g) {
    if (g.is_forest()) {
      if (which_ == Invariant::kappa) return 1;
      if (g.edge_count() >= 64) throw OverflowError("alpha of forest exceeds 64 bits");
      return std::uint64_t{1} << g.edge_count();
    }
    std::string key;
    if (memoize_) {
      key = detail::canonical_key(g);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const Edge e = choose_pivot(g);
    std::uint64_t value = detail::checked_add(evaluate(contract_edge(g, e)),
                                              evaluate(delete_edge(g, e)));
    if (memoize_) memo_.emplace(std::move(key), value);
    return value;
  }

  Edge choose_pivot(const SimpleGraph& g) const {
    if (which_ == Invariant::alpha) {
      if (!pivot_) return g.edges().front();
      return pivot_(g, g.edges());
    }
    if (!pivot_) return *find_cycle_edge(g);
    auto bridge = bridge_flags(g);
    std::vector<Edge> admissible;
    for (std::size_t k = 0; k < g.edge_count(); ++k)
      if (!bridge[k]) admissible.push_back(g.edges()[k]);
    return pivot_(g, admissible);
  }

  Invariant which_;
  PivotFn pivot_;
  bool memoize_;
  std::unordered_map<std::string, std::uint64_t> memo_;
};

// Number of acyclic orientations. Accepts disconnected graphs.
inline CountResult alpha(const SimpleGraph& g) {
  return {DeletionContraction(Invariant::alpha)(g), g.fingerprint()};
}

// Number of kappa-classes; 1 for any forest.
inline CountResult kappa(const SimpleGraph& g) {
  return {DeletionContraction(Invariant::kappa)(g), g.fingerprint()};
}

}  // namespace sdsk
