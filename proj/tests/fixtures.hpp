#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sdsk/builtin.hpp"
#include "sdsk/graph.hpp"
#include "sdsk/model.hpp"

namespace fixtures {

using sdsk::Edge;
using sdsk::SimpleGraph;
using sdsk::Value;
using sdsk::Vertex;

inline SimpleGraph example_graph() { return SimpleGraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}}); }

inline SimpleGraph complete(Vertex n) {
  std::vector<Edge> e;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) e.push_back({a, b});
  return SimpleGraph(n, e);
}

inline SimpleGraph cycle(Vertex n) {
  std::vector<Edge> e;
  for (Vertex a = 1; a < n; ++a) e.push_back({a, a + 1});
  e.push_back({1, n});
  return SimpleGraph(n, e);
}

inline SimpleGraph path(Vertex n) {
  std::vector<Edge> e;
  for (Vertex a = 1; a < n; ++a) e.push_back({a, a + 1});
  return SimpleGraph(n, e);
}

inline SimpleGraph star(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex a = 2; a <= leaves + 1; ++a) e.push_back({1, a});
  return SimpleGraph(leaves + 1, e);
}

// Hub 1 joined to a rim cycle 2..rim+1.
inline SimpleGraph wheel(Vertex rim) {
  std::vector<Edge> e;
  for (Vertex a = 2; a <= rim + 1; ++a) {
    e.push_back({1, a});
    e.push_back({a, a == rim + 1 ? Vertex{2} : a + 1});
  }
  return SimpleGraph(rim + 1, e);
}

inline SimpleGraph complete_bipartite(Vertex p, Vertex q) {
  std::vector<Edge> e;
  for (Vertex a = 1; a <= p; ++a)
    for (Vertex b = p + 1; b <= p + q; ++b) e.push_back({a, b});
  return SimpleGraph(p + q, e);
}

inline SimpleGraph q3() { return std::get<SimpleGraph>(sdsk::builtin("q3")); }
inline SimpleGraph lac_graph() { return sdsk::dependency_graph(sdsk::builtin_model("lac-operon")); }
inline SimpleGraph celegans_graph() { return sdsk::dependency_graph(sdsk::builtin_model("celegans")); }

// Connected graphs with at most six vertices.
inline std::vector<std::pair<std::string, SimpleGraph>> small_graphs() {
  return {{"K2", complete(2)},     {"K3", complete(3)},       {"K4", complete(4)},
          {"C5", cycle(5)},        {"example", example_graph()}, {"star5", star(5)},
          {"W5", wheel(5)},        {"K33", complete_bipartite(3, 3)}, {"P4", path(4)},
          {"K5", complete(5)}};
}

// Connected graphs used where counts are known or cheap.
inline std::vector<std::pair<std::string, SimpleGraph>> all_graphs() {
  auto out = small_graphs();
  out.emplace_back("Q3", q3());
  out.emplace_back("lac", lac_graph());
  out.emplace_back("K6", complete(6));
  return out;
}

inline SimpleGraph random_connected_graph(std::mt19937& rng, Vertex n, double extra_edge_probability) {
  std::vector<Edge> edges;
  for (Vertex v = 2; v <= n; ++v) {
    std::uniform_int_distribution<Vertex> pick(1, v - 1);
    edges.push_back({pick(rng), v});
  }
  std::bernoulli_distribution extra(extra_edge_probability);
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) {
      bool present = false;
      for (const auto& e : edges) present |= e == Edge{a, b};
      if (!present && extra(rng)) edges.push_back({a, b});
    }
  return SimpleGraph(n, edges);
}

// A model over g in which every rule reads its closed neighborhood. Rules mix
// threshold cases and and/or/not terms; vertex 1 is ternary when `ternary`.
inline std::string random_model_text(std::mt19937& rng, const SimpleGraph& g, bool ternary,
                                     const std::string& name = "random") {
  std::string text = "model " + name + "\n";
  auto var = [](Vertex v) { return "x" + std::to_string(v); };
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    text += "var " + var(v) + (ternary && v == 1 ? " in {0,1,2}\n" : " in {0,1}\n");
  std::uniform_int_distribution<int> coin(0, 1);
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    auto nbrs = g.neighbors(v);
    std::vector<Vertex> reads = nbrs;
    reads.push_back(v);
    const Value top = ternary && v == 1 ? 2 : 1;
    std::string rule;
    if (coin(rng)) {
      std::string sum;
      for (Vertex r : reads) sum += (sum.empty() ? "" : " + ") + var(r);
      std::uniform_int_distribution<int> threshold(1, static_cast<int>(reads.size()));
      rule = "case when " + sum + " >= " + std::to_string(threshold(rng)) + " => " + std::to_string(top);
      if (top == 2) rule += " when " + sum + " >= 1 => 1";
      rule += " else 0 end";
    } else {
      for (Vertex r : reads) {
        std::string term = coin(rng) ? "not " + var(r) : var(r);
        rule += rule.empty() ? term : (coin(rng) ? " and " : " or ") + term;
      }
      if (top == 2) rule = "case when " + rule + " => 2 else " + var(nbrs.front()) + " end";
    }
    text += "rule " + var(v) + " := " + rule + "\n";
  }
  return text;
}

}  // namespace fixtures
