#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "sdsk/builtin.hpp"
#include "sdsk/dynamics.hpp"

using namespace sdsk;

namespace {

UpdateOrder random_order(std::mt19937& rng, std::size_t n) {
  UpdateOrder pi;
  pi.sequence.resize(n);
  std::iota(pi.sequence.begin(), pi.sequence.end(), Vertex{1});
  std::shuffle(pi.sequence.begin(), pi.sequence.end(), rng);
  return pi;
}

struct Case {
  std::string name;
  NetworkModel model;
  ParameterAssignment params;
};

std::vector<Case> models_under_test() {
  std::vector<Case> out;
  out.push_back({"bithreshold", builtin_model("bithreshold-example"), {}});
  auto lac = builtin_model("lac-operon");
  for (auto a : {"mu0=0,mu1=0,mu2=1", "mu0=0,mu1=1,mu2=1", "mu0=1,mu1=0,mu2=0"})
    out.push_back({std::string("lac ") + a, lac, parse_assignment(lac, a)});
  auto ce = builtin_model("celegans");
  for (auto a : {"mu0=0,mu1=0", "mu0=2,mu1=1", "mu0=3,mu1=0"})
    out.push_back({std::string("celegans ") + a, ce, parse_assignment(ce, a)});
  std::mt19937 rng(53);
  for (int trial = 0; trial < 12; ++trial) {
    auto g = fixtures::random_connected_graph(rng, 3 + trial % 4, 0.4);
    out.push_back({"random" + std::to_string(trial),
                   parse_model(fixtures::random_model_text(rng, g, trial % 3 == 0)), {}});
  }
  return out;
}

// Least periodic-point state of every cycle, by direct iteration.
std::map<std::size_t, std::size_t> brute_cycle_lengths(const std::vector<std::uint32_t>& succ) {
  const std::size_t n = succ.size();
  std::vector<char> periodic(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t x = s;
    for (std::size_t k = 0; k < n; ++k) x = succ[x];  // now on the cycle
    periodic[x] = 1;
  }
  std::map<std::size_t, std::size_t> counts;
  std::vector<char> done(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (!periodic[s] || done[s]) continue;
    std::size_t len = 0, x = s;
    do {
      done[x] = 1;
      x = succ[x];
      ++len;
    } while (x != s);
    ++counts[len];
  }
  return counts;
}

}  // namespace

TEST(StateSpace, EncodeDecode) {
  auto m = builtin_model("celegans");
  StateSpace space(m);
  EXPECT_EQ(space.size(), 3072u);
  EXPECT_EQ(space.radix(0), 3u);
  EXPECT_EQ(space.stride(1), 3u);
  for (StateIndex code = 0; code < space.size(); ++code) ASSERT_EQ(space.encode(space.decode(code)), code);
  SystemState x(11, 0);
  x[0] = 2;
  EXPECT_EQ(space.encode(x), 2u);
  x[0] = 3;
  EXPECT_THROW(space.encode(x), InputError);
  EXPECT_THROW(space.encode(SystemState(3, 0)), InputError);
}

TEST(StateSpace, LexicographicRankPutsX1First) {
  auto m = parse_model("model t\nvar a in {0,1,2}\nvar b in {0,1}\nrule a := a\nrule b := b\n");
  StateSpace space(m);
  std::vector<std::uint64_t> rank_of_sorted;
  for (Value a : {0, 1, 2})
    for (Value b : {0, 1}) rank_of_sorted.push_back(space.lexicographic_rank(space.encode(SystemState{a, b})));
  EXPECT_EQ(rank_of_sorted, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5}));
}

TEST(StateSpace, Budget) {
  EXPECT_THROW(StateSpace(builtin_model("celegans"), 3000), BudgetExceeded);
  EXPECT_THROW(CompiledRules(builtin_model("lac-operon"), parse_assignment(builtin_model("lac-operon"),
                                                                           "mu0=0,mu1=0,mu2=0"),
                             1000),
               BudgetExceeded);
}

TEST(Maps, ReferenceSemantics) {
  auto m = builtin_model("bithreshold-example");
  SystemState x{1, 0, 0, 0};
  // Parallel: every vertex sees x. x1 has sum 1 < 3 and turns off; others turn on.
  EXPECT_EQ(synchronous_map(m, {}, x), (SystemState{0, 1, 1, 1}));
  // Sequential (1,2,3,4): x1 turns off first, so x2..x4 see an all-zero neighborhood.
  EXPECT_EQ(sequential_map(m, {}, UpdateOrder{{1, 2, 3, 4}}, x), (SystemState{0, 0, 0, 0}));
  EXPECT_EQ(local_map(m, {}, 2, x), (SystemState{1, 1, 0, 0}));
  EXPECT_THROW(sequential_map(m, {}, UpdateOrder{{1, 2, 3}}, x), InputError);
  EXPECT_THROW(local_map(m, {}, 5, x), InputError);
}

TEST(Maps, CompiledTablesMatchReference) {
  std::mt19937 rng(59);
  for (const auto& c : models_under_test()) {
    SCOPED_TRACE(c.name);
    CompiledRules rules(c.model, c.params);
    const auto& space = rules.space();
    std::vector<std::uint32_t> par, seq;
    rules.fill_successors(ParallelUpdate{}, par);
    UpdateOrder pi = random_order(rng, c.model.size());
    rules.fill_successors(pi, seq);
    ASSERT_EQ(par.size(), space.size());
    ASSERT_EQ(seq.size(), space.size());
    const std::uint64_t step = std::max<std::uint64_t>(1, space.size() / 400);
    for (StateIndex code = 0; code < space.size(); code += step) {
      auto x = space.decode(code);
      ASSERT_EQ(par[code], space.encode(synchronous_map(c.model, c.params, x)));
      ASSERT_EQ(seq[code], space.encode(sequential_map(c.model, c.params, pi, x)));
    }
  }
}

TEST(PhaseSpace, OutDegreeOneAndPeriodicBound) {
  std::mt19937 rng(61);
  for (const auto& c : models_under_test()) {
    SCOPED_TRACE(c.name);
    auto ps = phase_space(c.model, c.params, random_order(rng, c.model.size()));
    for (auto s : ps.successor) ASSERT_LT(s, ps.size());
    auto cs = cycle_structure(ps);
    EXPECT_LE(cs.periodic_points(), ps.size());
    EXPECT_GE(cs.cycle_count(), 1u);
    EXPECT_EQ(cs.counts, (brute_cycle_lengths(ps.successor)));
  }
}

TEST(PhaseSpace, WitnessIsLexicographicallyLeastOnItsCycle) {
  auto m = builtin_model("celegans");
  for (const auto& a : all_assignments(m)) {
    auto ps = phase_space(m, a, ParallelUpdate{});
    auto cs = cycle_structure(ps);
    std::size_t total = 0;
    for (const auto& w : cs.witnesses) {
      std::uint64_t least = ps.space.lexicographic_rank(w.state);
      StateIndex x = w.state;
      std::size_t len = 0;
      do {
        EXPECT_GE(ps.space.lexicographic_rank(x), least);
        x = ps.successor[x];
        ++len;
      } while (x != w.state);
      EXPECT_EQ(len, w.length);
      ++total;
    }
    EXPECT_EQ(total, cs.cycle_count());
    EXPECT_TRUE(std::is_sorted(cs.witnesses.begin(), cs.witnesses.end()));
  }
}

TEST(PhaseSpace, CsvDump) {
  auto ps = phase_space(builtin_model("bithreshold-example"), {}, UpdateOrder{{1, 2, 3, 4}});
  auto csv = ps.to_csv();
  EXPECT_EQ(csv.rfind("state_code,successor_code\n0,0\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
}

TEST(CycleStructure, BiThresholdExample) {
  auto m = builtin_model("bithreshold-example");
  EXPECT_EQ(cycle_structure(phase_space(m, {}, ParallelUpdate{})).to_string(), "{1(2), 2(3)}");
  auto seq = cycle_structure(phase_space(m, {}, UpdateOrder{{1, 2, 3, 4}}));
  EXPECT_EQ(seq.to_string(), "{1(2)}");
  StateSpace space(m);
  EXPECT_TRUE(seq.has_fixed_point(space.encode(SystemState{0, 0, 0, 0})));
  EXPECT_TRUE(seq.has_fixed_point(space.encode(SystemState{1, 1, 1, 1})));
}

TEST(CycleStructure, MultisetSum) {
  CycleStructure a, b;
  a.counts = {{1, 2}, {3, 1}};
  b.counts = {{3, 2}, {7, 1}};
  EXPECT_EQ((a + b).to_string(), "{1(2), 3(3), 7(1)}");
  EXPECT_EQ((a + b).cycle_count(), 6u);
  EXPECT_EQ((a + b).periodic_points(), 18u);
  EXPECT_EQ(CycleStructure{}.to_string(), "{}");
}

TEST(Equivalence, SameOrientationSamePhaseSpace) {
  // Update orders with the same induced orientation give identical maps.
  std::mt19937 rng(67);
  for (const auto& c : models_under_test()) {
    SCOPED_TRACE(c.name);
    const SimpleGraph g = dependency_graph(c.model);
    CompiledRules rules(c.model, c.params);
    std::vector<std::uint32_t> a, b;
    for (int trial = 0; trial < 5; ++trial) {
      UpdateOrder pi = random_order(rng, c.model.size());
      UpdateOrder ext = linear_extension(orientation_from_permutation(g, pi));
      rules.fill_successors(pi, a);
      rules.fill_successors(ext, b);
      ASSERT_EQ(a, b) << pi.to_string() << " vs " << ext.to_string();
    }
  }
}

TEST(Equivalence, ShiftConjugatesThroughFirstLocalMap) {
  // F_sigma(pi) o F_{pi_1} = F_{pi_1} o F_pi.
  std::mt19937 rng(71);
  for (const auto& c : models_under_test()) {
    SCOPED_TRACE(c.name);
    CompiledRules rules(c.model, c.params);
    const auto& space = rules.space();
    UpdateOrder pi = random_order(rng, c.model.size());
    std::vector<std::uint32_t> f, g;
    rules.fill_successors(pi, f);
    rules.fill_successors(cyclic_shift(pi), g);
    const std::uint64_t step = std::max<std::uint64_t>(1, space.size() / 300);
    for (StateIndex code = 0; code < space.size(); code += step) {
      auto x = space.decode(code);
      auto phi = [&](const SystemState& y) { return local_map(c.model, c.params, pi.sequence.front(), y); };
      ASSERT_EQ(g[space.encode(phi(x))], space.encode(phi(space.decode(f[code]))));
    }
  }
}

TEST(Equivalence, KappaEquivalentOrdersShareCycleStructure) {
  std::mt19937 rng(73);
  for (const auto& c : models_under_test()) {
    SCOPED_TRACE(c.name);
    const SimpleGraph g = dependency_graph(c.model);
    CompiledRules rules(c.model, c.params);
    for (int trial = 0; trial < 4; ++trial) {
      UpdateOrder pi = random_order(rng, c.model.size());
      auto base = cycle_structure(phase_space(rules, pi));
      auto o = orientation_from_permutation(g, pi);
      for (int click_count = 0; click_count < 6; ++click_count) {
        auto s = sources(o);
        o = click(o, s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)]);
        auto cs = cycle_structure(phase_space(rules, linear_extension(o)));
        ASSERT_EQ(cs, base) << cs.to_string() << " vs " << base.to_string();
      }
    }
  }
}
