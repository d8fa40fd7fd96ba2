#pragma once

// Undirected simple graphs and the structural operations the orientation
// and counting code is built on. Vertex ids are 1-based everywhere.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdsk/error.hpp"

namespace sdsk {

using Vertex = std::uint32_t;

// Unordered pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

// As-modeled dependency graph: directed, may contain loops and duplicates.
struct RawDigraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<Vertex, Vertex>> arcs;
};

class SimpleGraph {
 public:
  SimpleGraph() = default;

  explicit SimpleGraph(std::size_t vertex_count) : n_(vertex_count), adjacency_(vertex_count) {}

  // Edges may be given in any order; loops, duplicates and out-of-range
  // endpoints are rejected.
  SimpleGraph(std::size_t vertex_count, std::vector<Edge> edges)
      : n_(vertex_count), edges_(std::move(edges)), adjacency_(vertex_count) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Edge& e = edges_[k];
      if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
      if (e.u < 1 || e.v > n_) throw InputError("edge " + to_string(e) + " out of range");
      if (k > 0 && edges_[k - 1] == e) throw InputError("duplicate edge " + to_string(e));
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      adjacency_[edges_[k].u - 1].push_back({edges_[k].v, k});
      adjacency_[edges_[k].v - 1].push_back({edges_[k].u, k});
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  }

  struct Incidence {
    Vertex neighbor;
    std::size_t edge;
    friend auto operator<=>(const Incidence&, const Incidence&) = default;
  };

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Sorted lexicographically; positions are the edge indices used by orientations.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Incident (neighbor, edge index) pairs of v, sorted by neighbor.
  const std::vector<Incidence>& incidences(Vertex v) const { return adjacency_.at(v - 1); }

  std::size_t degree(Vertex v) const { return incidences(v).size(); }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (const auto& inc : incidences(v)) out.push_back(inc.neighbor);
    return out;
  }

  std::optional<std::size_t> edge_index(Edge e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  bool has_edge(Vertex a, Vertex b) const { return a != b && edge_index(Edge(a, b)).has_value(); }

  bool contains_vertex(Vertex v) const noexcept { return v >= 1 && v <= n_; }

  std::size_t component_count() const {
    std::vector<char> seen(n_, 0);
    std::size_t components = 0;
    for (Vertex start = 1; start <= n_; ++start) {
      if (seen[start - 1]) continue;
      ++components;
      std::vector<Vertex> stack{start};
      seen[start - 1] = 1;
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (const auto& inc : incidences(x)) {
          if (!seen[inc.neighbor - 1]) {
            seen[inc.neighbor - 1] = 1;
            stack.push_back(inc.neighbor);
          }
        }
      }
    }
    return components;
  }

  bool is_connected() const { return n_ > 0 && component_count() == 1; }

  bool is_forest() const { return edges_.size() + component_count() == n_; }

  // Edge-list exchange format: "vertices N" then one "i j" per line.
  std::string to_edge_list() const {
    std::ostringstream out;
    out << "vertices " << n_ << '\n';
    for (const auto& e : edges_) out << e.u << ' ' << e.v << '\n';
    return out.str();
  }

  // FNV-1a over the vertex count and sorted edge list, as 16 hex digits.
  std::string fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    };
    mix(n_);
    for (const auto& e : edges_) {
      mix(e.u);
      mix(e.v);
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return out;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

inline SimpleGraph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    auto fail = [&](const std::string& why) {
      return InputError("edge list line " + std::to_string(line_no) + ": " + why);
    };
    if (!n) {
      long long count = 0;
      if (first != "vertices" || !(fields >> count) || count < 1)
        throw fail("expected header 'vertices N' with N >= 1");
      n = static_cast<std::size_t>(count);
      continue;
    }
    long long a = 0, b = 0;
    std::istringstream pair(line);
    if (!(pair >> a >> b)) throw fail("expected 'i j'");
    std::string rest;
    if (pair >> rest) throw fail("trailing text '" + rest + "'");
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > *n || static_cast<std::size_t>(b) > *n)
      throw fail("vertex id out of range");
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!n) throw InputError("edge list: missing 'vertices N' header");
  return SimpleGraph(*n, std::move(edges));
}

inline SimpleGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

// G -> G_c: drop loops, forget direction, merge parallel edges.
inline SimpleGraph combinatorialize(const RawDigraph& g) {
  std::vector<Edge> edges;
  for (auto [a, b] : g.arcs) {
    if (a < 1 || b < 1 || a > g.vertex_count || b > g.vertex_count)
      throw InputError("arc (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    if (a != b) edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SimpleGraph(g.vertex_count, std::move(edges));
}

inline SimpleGraph delete_edge(const SimpleGraph& g, Edge e) {
  if (!g.edge_index(e)) throw InputError("edge " + to_string(e) + " not present");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  for (const auto& f : g.edges())
    if (f != e) edges.push_back(f);
  return SimpleGraph(g.vertex_count(), std::move(edges));
}

// Merges e.v into e.u (the smaller id) and shifts every id above e.v down by one.
inline SimpleGraph contract_edge(const SimpleGraph& g, Edge e) {
  if (!g.edge_index(e)) throw InputError("edge " + to_string(e) + " not present");
  auto relabel = [&](Vertex x) -> Vertex {
    if (x == e.v) return e.u;
    return x > e.v ? x - 1 : x;
  };
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& f : g.edges()) {
    Vertex a = relabel(f.u), b = relabel(f.v);
    if (a != b) edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SimpleGraph(g.vertex_count() - 1, std::move(edges));
}

// G minus vertex v, renumbered contiguously. `original` maps new ids to old ids.
struct VertexDeletion {
  SimpleGraph graph;
  std::vector<Vertex> original;
};

inline VertexDeletion delete_vertex(const SimpleGraph& g, Vertex v) {
  if (!g.contains_vertex(v)) throw InputError("vertex " + std::to_string(v) + " not present");
  VertexDeletion out;
  for (Vertex x = 1; x <= g.vertex_count(); ++x)
    if (x != v) out.original.push_back(x);
  auto relabel = [v](Vertex x) -> Vertex { return x > v ? x - 1 : x; };
  std::vector<Edge> edges;
  for (const auto& f : g.edges())
    if (f.u != v && f.v != v) edges.emplace_back(relabel(f.u), relabel(f.v));
  out.graph = SimpleGraph(g.vertex_count() - 1, std::move(edges));
  return out;
}

// Bridge flags indexed by edge index (iterative lowlink search).
inline std::vector<char> bridge_flags(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> bridge(g.edge_count(), 0);
  std::vector<std::size_t> order(n, 0), low(n, 0);
  std::size_t clock = 0;
  struct Frame {
    Vertex vertex;
    std::size_t parent_edge;
    std::size_t next;
  };
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  for (Vertex root = 1; root <= n; ++root) {
    if (order[root - 1]) continue;
    std::vector<Frame> stack{{root, none, 0}};
    order[root - 1] = low[root - 1] = ++clock;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& inc = g.incidences(top.vertex);
      if (top.next < inc.size()) {
        auto [w, edge] = inc[top.next++];
        if (edge == top.parent_edge) continue;
        if (order[w - 1]) {
          low[top.vertex - 1] = std::min(low[top.vertex - 1], order[w - 1]);
        } else {
          order[w - 1] = low[w - 1] = ++clock;
          stack.push_back({w, edge, 0});
        }
        continue;
      }
      Frame done = top;
      stack.pop_back();
      if (!stack.empty()) {
        Vertex parent = stack.back().vertex;
        low[parent - 1] = std::min(low[parent - 1], low[done.vertex - 1]);
        if (low[done.vertex - 1] > order[parent - 1]) bridge[done.parent_edge] = 1;
      }
    }
  }
  return bridge;
}

// Lexicographically least edge lying on a cycle, or nullopt for a forest.
inline std::optional<Edge> find_cycle_edge(const SimpleGraph& g) {
  auto bridge = bridge_flags(g);
  for (std::size_t k = 0; k < g.edge_count(); ++k)
    if (!bridge[k]) return g.edges()[k];
  return std::nullopt;
}

// A closed walk (v0, v1, ..., v_{k-1}); the closing step back to v0 is implicit.
struct Cycle {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.size(); }

  std::string to_string() const {
    std::string out = "(";
    for (auto v : vertices) out += std::to_string(v) + ",";
    return out + (vertices.empty() ? ")" : std::to_string(vertices.front()) + ")");
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct CycleBasis {
  std::vector<Cycle> cycles;

  std::size_t size() const noexcept { return cycles.size(); }

  std::string describe() const {
    std::string out;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      if (i) out += " ";
      out += cycles[i].to_string();
    }
    return out;
  }
};

// Fundamental cycles of a BFS tree rooted at 1. For each non-tree edge {a,b}
// (a < b, lexicographic order) the cycle is a -> b followed by the tree path back to a.
inline CycleBasis cycle_basis(const SimpleGraph& g) {
  if (!g.is_connected()) throw InputError("cycle basis requires a connected graph");
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> parent(n, 0);
  std::vector<std::size_t> depth(n, 0);
  std::vector<char> tree_edge(g.edge_count(), 0), seen(n, 0);
  std::queue<Vertex> frontier;
  frontier.push(1);
  seen[0] = 1;
  while (!frontier.empty()) {
    Vertex x = frontier.front();
    frontier.pop();
    for (auto [w, edge] : g.incidences(x)) {
      if (seen[w - 1]) continue;
      seen[w - 1] = 1;
      parent[w - 1] = x;
      depth[w - 1] = depth[x - 1] + 1;
      tree_edge[edge] = 1;
      frontier.push(w);
    }
  }
  CycleBasis basis;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (tree_edge[k]) continue;
    const Edge e = g.edges()[k];
    // Climb from both ends to the common ancestor.
    std::vector<Vertex> from_a{e.u}, from_b{e.v};
    Vertex a = e.u, b = e.v;
    while (a != b) {
      if (depth[a - 1] >= depth[b - 1]) {
        a = parent[a - 1];
        from_a.push_back(a);
      } else {
        b = parent[b - 1];
        from_b.push_back(b);
      }
    }
    // Closed walk u, v, ..., ancestor, ..., u with the final u dropped.
    Cycle c;
    c.vertices.push_back(e.u);
    c.vertices.insert(c.vertices.end(), from_b.begin(), from_b.end());
    c.vertices.insert(c.vertices.end(), from_a.rbegin() + 1, from_a.rend());
    c.vertices.pop_back();
    basis.cycles.push_back(std::move(c));
  }
  return basis;
}

}  // namespace sdsk
