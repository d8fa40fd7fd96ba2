#pragma once

// End-to-end attractor-structure analysis: evaluate every kappa-class
// representative under each parameter assignment, group representatives by
// cycle structure, and summarize (kappa_F, bistability, multiset sizes,
// orientation mass per class).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdsk/counting.hpp"
#include "sdsk/dynamics.hpp"
#include "sdsk/error.hpp"
#include "sdsk/model.hpp"
#include "sdsk/orientation.hpp"
#include "sdsk/parallel.hpp"

namespace sdsk {

enum class GraphChoice { base, extended };

inline const char* to_string(GraphChoice g) { return g == GraphChoice::base ? "base" : "extended"; }

struct AnalysisOptions {
  unsigned workers = 1;
  std::uint64_t state_budget = default_state_budget;
  // Upper bound on alpha(G) for orientation-mass accounting.
  std::uint64_t enumeration_budget = 10'000'000;
  bool orientation_mass = true;
};

struct CycleClass {
  CycleStructure structure;  // multiset sum over the analysed parameter assignments
  std::string multiset;
  std::uint64_t frequency = 0;  // kappa-classes of the reported graph
  UpdateOrder representative;
  std::optional<std::uint64_t> orientation_mass;
};

struct ParameterSummary {
  std::string parameters;  // "name=value,..."
  std::uint64_t kappa_f = 0;
  std::uint64_t bistable = 0;  // kappa-classes with exactly two cycles of equal length
};

struct CycleClassReport {
  std::string model_name;
  std::string model_hash;
  GraphChoice graph = GraphChoice::base;
  std::string graph_fingerprint;
  std::string base_graph_fingerprint;
  Vertex source_vertex = 0;
  std::string cycle_basis;
  std::uint64_t alpha = 0;
  std::uint64_t kappa = 0;
  std::uint64_t alpha_multiplier = 1;
  std::uint64_t kappa_multiplier = 1;
  std::vector<std::string> parameter_sets;
  std::vector<CycleClass> classes;  // descending frequency, ties by multiset string
  std::vector<ParameterSummary> per_parameter;

  std::size_t kappa_f() const noexcept { return classes.size(); }
};

struct BistabilityReport {
  std::vector<ParameterSummary> rows;
};

inline bool is_bistable(const CycleStructure& cs) {
  return cs.counts.size() == 1 && cs.counts.begin()->second == 2;
}

// Cycle structures for every (assignment, representative) pair.
struct RepresentativeSweep {
  SimpleGraph graph;
  Vertex source = 0;
  std::vector<UpdateOrder> representatives;
  std::vector<ParameterAssignment> assignments;
  std::vector<std::vector<CycleStructure>> structures;  // [assignment][representative]
};

inline std::vector<ParameterAssignment> resolve_assignments(
    const NetworkModel& m, const std::vector<ParameterAssignment>& requested) {
  if (requested.empty()) return all_assignments(m);
  for (const auto& a : requested) validate_assignment(m, a);
  return requested;
}

inline RepresentativeSweep sweep_representatives(const NetworkModel& m,
                                                 const std::vector<ParameterAssignment>& params,
                                                 const AnalysisOptions& options) {
  RepresentativeSweep s;
  s.graph = dependency_graph(m);
  if (!s.graph.is_connected())
    throw InputError("dependency graph of " + m.name + " is disconnected");
  s.source = max_degree_vertex(s.graph);
  s.representatives = kappa_class_representatives(s.graph, s.source);
  s.assignments = resolve_assignments(m, params);
  std::vector<CompiledRules> compiled;
  compiled.reserve(s.assignments.size());
  for (const auto& a : s.assignments) compiled.emplace_back(m, a, options.state_budget);

  const std::size_t reps = s.representatives.size();
  s.structures.assign(s.assignments.size(), std::vector<CycleStructure>(reps));
  // Chunks of representatives keep per-task scratch allocation amortized.
  constexpr std::size_t chunk = 64;
  const std::size_t chunks_per_assignment = (reps + chunk - 1) / chunk;
  parallel_for(s.assignments.size() * chunks_per_assignment, options.workers, [&](std::size_t job) {
    const std::size_t p = job / chunks_per_assignment;
    const std::size_t first = (job % chunks_per_assignment) * chunk;
    const std::size_t last = std::min(reps, first + chunk);
    std::vector<std::uint32_t> successor, path;
    std::vector<std::uint8_t> scratch;
    for (std::size_t r = first; r < last; ++r) {
      compiled[p].fill_successors(s.representatives[r], successor);
      s.structures[p][r] = cycle_structure(successor, nullptr, scratch, path);
    }
  });
  return s;
}

inline std::vector<ParameterSummary> summarize(const NetworkModel& m, const RepresentativeSweep& s) {
  std::vector<ParameterSummary> rows;
  for (std::size_t p = 0; p < s.assignments.size(); ++p) {
    ParameterSummary row;
    row.parameters = to_string(m, s.assignments[p]);
    std::set<std::string> distinct;
    for (const auto& cs : s.structures[p]) {
      distinct.insert(cs.to_string());
      row.bistable += is_bistable(cs);
    }
    row.kappa_f = distinct.size();
    rows.push_back(std::move(row));
  }
  return rows;
}

// Per-representative orientation counts: every acyclic orientation of g is
// assigned to the representative with the same nu-vector.
inline std::vector<std::uint64_t> kappa_class_masses(const SimpleGraph& g,
                                                     const std::vector<UpdateOrder>& reps,
                                                     std::uint64_t enumeration_budget) {
  const std::uint64_t total = alpha(g).value;
  if (total > enumeration_budget)
    throw BudgetExceeded("alpha(G) = " + std::to_string(total) + " exceeds the enumeration budget");
  const CycleBasis basis = cycle_basis(g);
  std::map<NuVector, std::size_t> index;
  for (std::size_t r = 0; r < reps.size(); ++r)
    index.emplace(nu_vector(basis, orientation_from_permutation(g, reps[r])), r);
  if (index.size() != reps.size()) throw Error("representatives share a nu-vector");
  std::vector<std::uint64_t> mass(reps.size(), 0);
  for_each_acyclic_orientation(g, [&](const AcyclicOrientation& o) {
    auto it = index.find(nu_vector(basis, o));
    if (it == index.end()) throw Error("orientation " + o.to_string() + " matches no representative");
    ++mass[it->second];
  });
  return mass;
}

namespace detail {

// Extended reporting multiplies base counts by alpha(G')/alpha(G) and
// kappa(G')/kappa(G). That is exact when each promoted parameter is read by at
// most two variables and those are adjacent: the new vertex is then a pendant
// (x2 orientations, x1 kappa) or closes a triangle over an edge (x3, x2), and
// identity rules leave F_pi unchanged.
inline std::pair<std::uint64_t, std::uint64_t> extension_multipliers(const NetworkModel& m,
                                                                     const SimpleGraph& base,
                                                                     const SimpleGraph& extended) {
  for (std::size_t p = 0; p < m.parameters.size(); ++p) {
    std::set<Vertex> readers;
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
      std::vector<SymbolRef> refs;
      collect_refs(*m.rules[i], refs);
      for (const auto& r : refs)
        if (r.scope == Scope::parameter && r.index == p) readers.insert(static_cast<Vertex>(i + 1));
    }
    if (readers.size() > 2 ||
        (readers.size() == 2 && !base.has_edge(*readers.begin(), *readers.rbegin())))
      throw InputError("parameter '" + m.parameters[p].name +
                       "' is not attached to a single vertex or edge; extended counts would not "
                       "be a uniform multiple of the base counts");
  }
  const std::uint64_t a = alpha(base).value, a2 = alpha(extended).value;
  const std::uint64_t k = kappa(base).value, k2 = kappa(extended).value;
  if (a2 % a != 0 || k2 % k != 0) throw Error("extended counts are not multiples of base counts");
  return {a2 / a, k2 / k};
}

}  // namespace detail

// Groups kappa-class representatives by cycle structure. With several
// assignments the grouping key is the multiset sum over all of them. For the
// extended graph, parameters count as vertices: frequencies and masses are
// scaled to kappa- and alpha-classes of G'.
inline CycleClassReport classify_sweep(const NetworkModel& m, GraphChoice graph,
                                       const RepresentativeSweep& s, const AnalysisOptions& options = {}) {
  if (graph == GraphChoice::extended && s.assignments.size() != all_assignments(m).size())
    throw InputError("extended analysis covers every parameter assignment; drop --params");

  CycleClassReport report;
  report.model_name = m.name;
  report.model_hash = model_hash(m);
  report.graph = graph;
  report.base_graph_fingerprint = s.graph.fingerprint();
  report.source_vertex = s.source;
  report.cycle_basis = cycle_basis(s.graph).describe();
  for (const auto& a : s.assignments) report.parameter_sets.push_back(to_string(m, a));
  report.per_parameter = summarize(m, s);

  if (graph == GraphChoice::extended) {
    SimpleGraph g2 = extended_graph(m);
    auto [am, km] = detail::extension_multipliers(m, s.graph, g2);
    report.alpha_multiplier = am;
    report.kappa_multiplier = km;
    report.graph_fingerprint = g2.fingerprint();
    report.alpha = alpha(g2).value;
    report.kappa = kappa(g2).value;
  } else {
    report.graph_fingerprint = report.base_graph_fingerprint;
    report.alpha = alpha(s.graph).value;
    report.kappa = kappa(s.graph).value;
  }

  std::vector<std::uint64_t> mass;
  if (options.orientation_mass) mass = kappa_class_masses(s.graph, s.representatives, options.enumeration_budget);

  std::map<std::string, std::size_t> slot;
  for (std::size_t r = 0; r < s.representatives.size(); ++r) {
    CycleStructure combined;
    for (std::size_t p = 0; p < s.assignments.size(); ++p) combined += s.structures[p][r];
    std::string key = combined.to_string();
    auto [it, fresh] = slot.emplace(key, report.classes.size());
    if (fresh) {
      CycleClass c;
      c.structure = combined;
      c.multiset = key;
      c.representative = s.representatives[r];
      if (options.orientation_mass) c.orientation_mass = 0;
      report.classes.push_back(std::move(c));
    }
    CycleClass& c = report.classes[it->second];
    c.frequency += report.kappa_multiplier;
    if (options.orientation_mass) *c.orientation_mass += mass[r] * report.alpha_multiplier;
  }
  std::sort(report.classes.begin(), report.classes.end(), [](const CycleClass& a, const CycleClass& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.multiset < b.multiset;
  });
  return report;
}

inline CycleClassReport classify(const NetworkModel& m, GraphChoice graph,
                                 const std::vector<ParameterAssignment>& params,
                                 const AnalysisOptions& options = {}) {
  if (graph == GraphChoice::extended && !params.empty() && params.size() != all_assignments(m).size())
    throw InputError("extended analysis covers every parameter assignment; drop --params");
  return classify_sweep(m, graph, sweep_representatives(m, params, options), options);
}

inline BistabilityReport bistability(const NetworkModel& m,
                                     const std::vector<ParameterAssignment>& params,
                                     const AnalysisOptions& options = {}) {
  return {summarize(m, sweep_representatives(m, params, options))};
}

// Number of cycles in a class's multiset -> total frequency.
inline std::map<std::size_t, std::uint64_t> multiset_size_histogram(const CycleClassReport& report) {
  std::map<std::size_t, std::uint64_t> out;
  for (const auto& c : report.classes) out[c.structure.cycle_count()] += c.frequency;
  return out;
}

struct DistributionEntry {
  std::size_t rank = 0;  // 1-based
  std::string multiset;
  std::uint64_t mass = 0;
  double percentage = 0;
};

// Cycle-equivalence classes ordered by descending share of acyclic orientations.
inline std::vector<DistributionEntry> orientation_distribution(const CycleClassReport& report) {
  std::vector<DistributionEntry> out;
  std::uint64_t total = 0;
  for (const auto& c : report.classes) {
    if (!c.orientation_mass) throw InputError("report was built without orientation masses");
    out.push_back({0, c.multiset, *c.orientation_mass, 0.0});
    total += *c.orientation_mass;
  }
  std::sort(out.begin(), out.end(), [](const DistributionEntry& a, const DistributionEntry& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.multiset < b.multiset;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = i + 1;
    out[i].percentage = 100.0 * static_cast<double>(out[i].mass) / static_cast<double>(total);
  }
  return out;
}

inline std::vector<DistributionEntry> orientation_distribution(const NetworkModel& m,
                                                               GraphChoice graph,
                                                               const AnalysisOptions& options = {}) {
  AnalysisOptions with_mass = options;
  with_mass.orientation_mass = true;
  return orientation_distribution(classify(m, graph, {}, with_mass));
}

// Independent check of the representative pipeline: evaluate all n! update
// orders and collect the distinct (assignment-summed) cycle structures.
inline std::vector<CycleStructure> bruteforce_classify(const NetworkModel& m,
                                                       const std::vector<ParameterAssignment>& params,
                                                       std::size_t max_vertices = 7,
                                                       std::uint64_t state_budget = default_state_budget) {
  if (m.size() > max_vertices)
    throw BudgetExceeded(std::to_string(m.size()) + "! update orders exceed the brute-force bound of " +
                         std::to_string(max_vertices) + " vertices");
  auto assignments = resolve_assignments(m, params);
  std::vector<CompiledRules> compiled;
  for (const auto& a : assignments) compiled.emplace_back(m, a, state_budget);
  UpdateOrder pi;
  for (Vertex v = 1; v <= m.size(); ++v) pi.sequence.push_back(v);
  std::map<std::string, CycleStructure> distinct;
  std::vector<std::uint32_t> successor, path;
  std::vector<std::uint8_t> scratch;
  do {
    CycleStructure combined;
    for (const auto& rules : compiled) {
      rules.fill_successors(pi, successor);
      combined += cycle_structure(successor, nullptr, scratch, path);
    }
    distinct.emplace(combined.to_string(), combined);
  } while (std::next_permutation(pi.sequence.begin(), pi.sequence.end()));
  std::vector<CycleStructure> out;
  for (auto& [key, cs] : distinct) out.push_back(std::move(cs));
  return out;
}

}  // namespace sdsk
