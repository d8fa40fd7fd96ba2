#pragma once

// Acyclic orientations of a SimpleGraph: the permutation -> orientation map,
// linear extensions, clicks (source-to-sink flips), Coleman nu-vectors, full
// enumeration and the complete set of kappa-class representatives.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "sdsk/error.hpp"
#include "sdsk/graph.hpp"

namespace sdsk {

// A permutation of the vertex ids 1..n, applied left to right.
struct UpdateOrder {
  std::vector<Vertex> sequence;

  std::size_t size() const noexcept { return sequence.size(); }

  bool is_permutation_of(std::size_t n) const {
    if (sequence.size() != n) return false;
    std::vector<char> seen(n, 0);
    for (auto v : sequence) {
      if (v < 1 || v > n || seen[v - 1]) return false;
      seen[v - 1] = 1;
    }
    return true;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(sequence[i]);
    }
    return out + ")";
  }

  friend auto operator<=>(const UpdateOrder&, const UpdateOrder&) = default;
};

// sigma(pi) = (pi_2, ..., pi_n, pi_1)
inline UpdateOrder cyclic_shift(const UpdateOrder& pi) {
  UpdateOrder out = pi;
  if (!out.sequence.empty())
    std::rotate(out.sequence.begin(), out.sequence.begin() + 1, out.sequence.end());
  return out;
}

// Direction per edge index: forward means edge {u,v} (u < v) is directed u -> v.
// The graph must outlive the orientation.
class AcyclicOrientation {
 public:
  AcyclicOrientation(const SimpleGraph& graph, std::vector<char> forward)
      : graph_(&graph), forward_(std::move(forward)) {
    if (forward_.size() != graph.edge_count())
      throw InputError("orientation size does not match edge count");
  }

  const SimpleGraph& graph() const noexcept { return *graph_; }
  const std::vector<char>& forward() const noexcept { return forward_; }

  // Tail and head of edge k.
  Vertex tail(std::size_t k) const {
    const Edge& e = graph_->edges()[k];
    return forward_[k] ? e.u : e.v;
  }
  Vertex head(std::size_t k) const {
    const Edge& e = graph_->edges()[k];
    return forward_[k] ? e.v : e.u;
  }

  // True iff a -> b under this orientation; {a,b} must be an edge.
  bool directed(Vertex a, Vertex b) const {
    auto k = graph_->edge_index(Edge(a, b));
    if (!k) throw InputError("edge " + sdsk::to_string(Edge(a, b)) + " not in graph");
    return tail(*k) == a;
  }

  std::size_t in_degree(Vertex v) const {
    std::size_t d = 0;
    for (auto [w, k] : graph_->incidences(v)) d += head(k) == v;
    return d;
  }

  // Directed pairs in lexicographic edge order.
  std::vector<std::pair<Vertex, Vertex>> arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(forward_.size());
    for (std::size_t k = 0; k < forward_.size(); ++k) out.emplace_back(tail(k), head(k));
    return out;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t k = 0; k < forward_.size(); ++k) {
      if (k) out += ",";
      out += "(" + std::to_string(tail(k)) + "," + std::to_string(head(k)) + ")";
    }
    return out + "]";
  }

  friend bool operator==(const AcyclicOrientation& a, const AcyclicOrientation& b) {
    return (a.graph_ == b.graph_ || *a.graph_ == *b.graph_) && a.forward_ == b.forward_;
  }

 private:
  const SimpleGraph* graph_;
  std::vector<char> forward_;
};

inline bool is_acyclic(const SimpleGraph& g, const std::vector<char>& forward) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    ++indegree[(forward[k] ? e.v : e.u) - 1];
  }
  std::vector<Vertex> ready;
  for (Vertex v = 1; v <= n; ++v)
    if (!indegree[v - 1]) ready.push_back(v);
  std::size_t emitted = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++emitted;
    for (auto [w, k] : g.incidences(v)) {
      bool out = forward[k] ? g.edges()[k].u == v : g.edges()[k].v == v;
      if (out && --indegree[w - 1] == 0) ready.push_back(w);
    }
  }
  return emitted == n;
}

// O(pi): {i,j} is directed i -> j when i precedes j in pi.
inline AcyclicOrientation orientation_from_permutation(const SimpleGraph& g,
                                                       const UpdateOrder& pi) {
  if (!pi.is_permutation_of(g.vertex_count()))
    throw InputError("update order " + pi.to_string() + " is not a permutation of 1.." +
                     std::to_string(g.vertex_count()));
  std::vector<std::size_t> position(g.vertex_count());
  for (std::size_t i = 0; i < pi.size(); ++i) position[pi.sequence[i] - 1] = i;
  std::vector<char> forward(g.edge_count());
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    forward[k] = position[e.u - 1] < position[e.v - 1];
  }
  return AcyclicOrientation(g, std::move(forward));
}

// Topological order that always emits the smallest ready vertex.
inline UpdateOrder linear_extension(const AcyclicOrientation& o) {
  const SimpleGraph& g = o.graph();
  std::vector<std::size_t> indegree(g.vertex_count());
  for (Vertex v = 1; v <= g.vertex_count(); ++v) indegree[v - 1] = o.in_degree(v);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    if (!indegree[v - 1]) ready.push(v);
  UpdateOrder pi;
  pi.sequence.reserve(g.vertex_count());
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    pi.sequence.push_back(v);
    for (auto [w, k] : g.incidences(v))
      if (o.tail(k) == v && --indegree[w - 1] == 0) ready.push(w);
  }
  if (pi.size() != g.vertex_count()) throw InputError("directed cycle detected in orientation");
  return pi;
}

inline std::vector<Vertex> sources(const AcyclicOrientation& o) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= o.graph().vertex_count(); ++v)
    if (o.in_degree(v) == 0) out.push_back(v);
  return out;
}

// Source-to-sink flip at v.
inline AcyclicOrientation click(const AcyclicOrientation& o, Vertex v) {
  if (!o.graph().contains_vertex(v) || o.in_degree(v) != 0)
    throw InputError("vertex " + std::to_string(v) + " is not a source");
  std::vector<char> forward = o.forward();
  for (auto [w, k] : o.graph().incidences(v)) forward[k] = !forward[k];
  return AcyclicOrientation(o.graph(), std::move(forward));
}

// nu_C(O) = (#edges of C traversed along O) - (#traversed against O).
inline int nu_scalar(const Cycle& c, const AcyclicOrientation& o) {
  int nu = 0;
  const std::size_t k = c.length();
  for (std::size_t i = 0; i < k; ++i) {
    Vertex a = c.vertices[i], b = c.vertices[(i + 1) % k];
    auto idx = o.graph().edge_index(Edge(a, b));
    if (!idx || a == b) throw InputError("cycle edge " + to_string(Edge(a, b)) + " missing");
    nu += o.tail(*idx) == a ? 1 : -1;
  }
  return nu;
}

using NuVector = std::vector<int>;

inline NuVector nu_vector(const CycleBasis& basis, const AcyclicOrientation& o) {
  NuVector out;
  out.reserve(basis.size());
  for (const auto& c : basis.cycles) out.push_back(nu_scalar(c, o));
  return out;
}

inline std::string to_string(const NuVector& nu) {
  std::string out = "(";
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(nu[i]);
  }
  return out + ")";
}

inline bool kappa_equivalent(const CycleBasis& basis, const AcyclicOrientation& a,
                             const AcyclicOrientation& b) {
  if (!(a.graph() == b.graph())) throw InputError("orientations over different graphs");
  return nu_vector(basis, a) == nu_vector(basis, b);
}

// Calls visit(const AcyclicOrientation&) once per acyclic orientation of g.
// Edges are fixed in index order; a direction is pruned as soon as it closes
// a directed cycle with the edges already placed.
template <class Visitor>
void for_each_acyclic_orientation(const SimpleGraph& g, Visitor&& visit) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  std::vector<std::vector<Vertex>> out(n);
  std::vector<char> forward(m, 0);
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  std::vector<Vertex> stack;

  auto reaches = [&](Vertex from, Vertex to) {
    if (++stamp == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      stamp = 1;
    }
    stack.assign(1, from);
    mark[from - 1] = stamp;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (Vertex y : out[x - 1]) {
        if (mark[y - 1] != stamp) {
          mark[y - 1] = stamp;
          stack.push_back(y);
        }
      }
    }
    return false;
  };

  auto place = [&](auto& self, std::size_t k) -> void {
    if (k == m) {
      visit(AcyclicOrientation(g, forward));
      return;
    }
    const Edge e = g.edges()[k];
    for (int dir = 1; dir >= 0; --dir) {
      Vertex tail = dir ? e.u : e.v, head = dir ? e.v : e.u;
      if (reaches(head, tail)) continue;
      forward[k] = static_cast<char>(dir);
      out[tail - 1].push_back(head);
      self(self, k + 1);
      out[tail - 1].pop_back();
    }
  };
  place(place, 0);
}

inline std::vector<AcyclicOrientation> enumerate_acyclic(const SimpleGraph& g) {
  std::vector<AcyclicOrientation> all;
  for_each_acyclic_orientation(g, [&](const AcyclicOrientation& o) { all.push_back(o); });
  return all;
}

// Generate all 2^|E| orientations and keep the acyclic ones. Only usable on
// small graphs; retained to cross-check the pruned enumeration.
inline std::vector<AcyclicOrientation> enumerate_acyclic_by_filter(const SimpleGraph& g) {
  const std::size_t m = g.edge_count();
  if (m >= 30) throw BudgetExceeded("2^" + std::to_string(m) + " orientations is too many");
  std::vector<AcyclicOrientation> all;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<char> forward(m);
    for (std::size_t k = 0; k < m; ++k) forward[k] = !((mask >> (m - 1 - k)) & 1U);
    if (is_acyclic(g, forward)) all.emplace_back(g, std::move(forward));
  }
  return all;
}

// Smallest-id vertex of maximal degree.
inline Vertex max_degree_vertex(const SimpleGraph& g) {
  if (g.vertex_count() == 0) throw InputError("graph has no vertices");
  Vertex best = 1;
  for (Vertex v = 2; v <= g.vertex_count(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  return best;
}

// Acyclic orientations of G with `source` as the unique source, built from the
// acyclic orientations of G - source whose sources are all adjacent to it.
template <class Visitor>
void for_each_unique_source_orientation(const SimpleGraph& g, Vertex source, Visitor&& visit) {
  if (g.vertex_count() == 0) throw InputError("graph has no vertices");
  if (!g.is_connected()) throw InputError("kappa representatives require a connected graph");
  auto reduced = delete_vertex(g, source);
  const SimpleGraph& rest = reduced.graph;
  std::vector<char> adjacent(rest.vertex_count(), 0);
  for (Vertex x = 1; x <= rest.vertex_count(); ++x)
    adjacent[x - 1] = g.has_edge(reduced.original[x - 1], source);
  // Edge index in g for every edge of rest.
  std::vector<std::size_t> lift(rest.edge_count());
  for (std::size_t k = 0; k < rest.edge_count(); ++k) {
    const Edge& e = rest.edges()[k];
    lift[k] = *g.edge_index(Edge(reduced.original[e.u - 1], reduced.original[e.v - 1]));
  }
  for_each_acyclic_orientation(rest, [&](const AcyclicOrientation& o) {
    for (Vertex x = 1; x <= rest.vertex_count(); ++x)
      if (!adjacent[x - 1] && o.in_degree(x) == 0) return;
    std::vector<char> forward(g.edge_count(), 0);
    for (std::size_t k = 0; k < rest.edge_count(); ++k) {
      // Relabelling is monotone, so edge direction flags carry over unchanged.
      forward[lift[k]] = o.forward()[k];
    }
    for (auto [w, k] : g.incidences(source)) forward[k] = g.edges()[k].u == source;
    visit(AcyclicOrientation(g, std::move(forward)));
  });
}

// One update order per kappa-class: (v, linear extension of O) for every
// O in Acyc(G - v) without a source outside N(v).
inline std::vector<UpdateOrder> kappa_class_representatives(const SimpleGraph& g,
                                                            Vertex source) {
  std::vector<UpdateOrder> reps;
  for_each_unique_source_orientation(g, source, [&](const AcyclicOrientation& o) {
    // With v the unique source, the smallest-first extension of O starts with v.
    reps.push_back(linear_extension(o));
  });
  return reps;
}

inline std::vector<UpdateOrder> kappa_class_representatives(const SimpleGraph& g) {
  if (g.vertex_count() == 0) throw InputError("graph has no vertices");
  return kappa_class_representatives(g, max_degree_vertex(g));
}

}  // namespace sdsk
