#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "fixtures.hpp"
#include "sdsk/counting.hpp"
#include "sdsk/orientation.hpp"

using namespace sdsk;

TEST(Counting, KnownValues) {
  struct Case {
    const char* name;
    SimpleGraph g;
    std::uint64_t alpha, kappa;
  };
  const Case cases[] = {
      {"K1", SimpleGraph(1), 1, 1},
      {"K2", fixtures::complete(2), 2, 1},
      {"K3", fixtures::complete(3), 6, 2},
      {"K4", fixtures::complete(4), 24, 6},
      {"K5", fixtures::complete(5), 120, 24},
      {"C5", fixtures::cycle(5), 30, 4},
      {"P4", fixtures::path(4), 8, 1},
      {"example", fixtures::example_graph(), 18, 4},
      {"Q3", fixtures::q3(), 1862, 133},
      {"lac", fixtures::lac_graph(), 14112, 344},
      {"celegans", fixtures::celegans_graph(), 158208, 5312},
      {"empty3", SimpleGraph(3), 1, 1},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(c.name);
    EXPECT_EQ(alpha(c.g).value, c.alpha);
    EXPECT_EQ(kappa(c.g).value, c.kappa);
    EXPECT_EQ(alpha(c.g).graph_fingerprint, c.g.fingerprint());
  }
}

TEST(Counting, ForestBaseCases) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    // Random trees: alpha = 2^(n-1), kappa = 1.
    Vertex n = 1 + trial % 10;
    SimpleGraph tree = fixtures::random_connected_graph(rng, n, 0.0);
    EXPECT_EQ(alpha(tree).value, std::uint64_t{1} << (n - 1));
    EXPECT_EQ(kappa(tree).value, 1u);
  }
}

TEST(Counting, CycleFormula) {
  // alpha(C_n) = 2^n - 2, kappa(C_n) = n - 1.
  for (Vertex n = 3; n <= 12; ++n) {
    EXPECT_EQ(alpha(fixtures::cycle(n)).value, (std::uint64_t{1} << n) - 2);
    EXPECT_EQ(kappa(fixtures::cycle(n)).value, n - 1u);
  }
}

TEST(Counting, MatchesEnumeration) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    SimpleGraph g = fixtures::random_connected_graph(rng, 2 + trial % 7, 0.45);
    std::uint64_t count = 0;
    for_each_acyclic_orientation(g, [&](const AcyclicOrientation&) { ++count; });
    EXPECT_EQ(alpha(g).value, count);
    EXPECT_EQ(kappa_class_representatives(g).size(), kappa(g).value);
  }
}

TEST(Counting, IndependentOfPivotChoice) {
  std::mt19937 rng(37);
  auto graphs = fixtures::all_graphs();
  for (int trial = 0; trial < 20; ++trial)
    graphs.emplace_back("random", fixtures::random_connected_graph(rng, 4 + trial % 6, 0.4));
  for (const auto& [name, g] : graphs) {
    SCOPED_TRACE(name);
    std::mt19937 pick_rng(41);
    auto random_pivot = [&](const SimpleGraph&, const std::vector<Edge>& admissible) {
      return admissible[std::uniform_int_distribution<std::size_t>(0, admissible.size() - 1)(pick_rng)];
    };
    DeletionContraction a(Invariant::alpha, random_pivot, false);
    DeletionContraction k(Invariant::kappa, random_pivot, false);
    EXPECT_EQ(a(g), alpha(g).value);
    EXPECT_EQ(k(g), kappa(g).value);
  }
}

TEST(Counting, MemoizationAgrees) {
  DeletionContraction plain(Invariant::kappa, {}, false), memo(Invariant::kappa);
  const SimpleGraph g = fixtures::q3();
  EXPECT_EQ(plain(g), memo(g));
  EXPECT_EQ(plain.memo_size(), 0u);
  EXPECT_GT(memo.memo_size(), 0u);
}

TEST(Counting, KappaAtMostAlpha) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    SimpleGraph g = fixtures::random_connected_graph(rng, 2 + trial % 9, 0.5);
    EXPECT_LE(kappa(g).value, alpha(g).value);
    EXPECT_GE(kappa(g).value, 1u);
  }
}

TEST(Counting, Overflow) {
  EXPECT_THROW(detail::checked_add(std::numeric_limits<std::uint64_t>::max(), 1), OverflowError);
  EXPECT_EQ(detail::checked_add(2, 3), 5u);
  // A 64-edge forest has 2^64 orientations.
  std::vector<Edge> edges;
  for (Vertex v = 2; v <= 65; ++v) edges.push_back({1, v});
  SimpleGraph big_star(65, edges);
  EXPECT_THROW(alpha(big_star), OverflowError);
  EXPECT_EQ(kappa(big_star).value, 1u);
}
