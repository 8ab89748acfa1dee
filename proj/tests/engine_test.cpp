#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "semimatch/oracle.hpp"
#include "semimatch/phase_engine.hpp"

namespace semimatch {
namespace {

Params half(Mode mode) { return compute_params(parse_rational("1/2"), mode); }

TEST(Engine, TrapReachesOptimumInFirstPhase) {
  const EdgeList g = generate(GraphKind::kTwoGreedyTrap, 7, 0);
  EdgeStream stream(g, OrderPolicy::kFileOrder);
  const RunResult r = run(stream, half(Mode::kUntilQuiescent), AssertLevel::kFull);
  EXPECT_EQ(r.stats.greedy_size, 2u);
  EXPECT_EQ(r.matching.size(), 3u);
  EXPECT_EQ(r.matching.size(), max_matching_exact(g).opt_size);
  ASSERT_FALSE(r.stats.augmentations_per_phase.empty());
  // Greedy leaves one augmenting path to fill, so only one augmentation exists.
  EXPECT_EQ(r.stats.augmentations_per_phase[0], 1u);
  EXPECT_EQ(r.stats.violation_count, 0u);
}

TEST(Engine, FirstBundleOnTrapAugments) {
  const EdgeList g = generate(GraphKind::kTwoGreedyTrap, 7, 0);
  EdgeStream stream(g, OrderPolicy::kFileOrder);
  Matching m = greedy_maximal(g.n, stream.next_pass());
  Engine engine(half(Mode::kUntilQuiescent));
  PhaseState state = init_phase(m, {4, 16});
  const BundleReport b = engine.run_pass_bundle(state, stream);
  EXPECT_EQ(b.augmentations, 1u);
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(stream.passes_taken(), 4u);
}

TEST(Engine, BundleWithoutActiveNodesStillStreamsThreePasses) {
  const EdgeList g = generate(GraphKind::kPath, 4, 0);
  Matching m(4);
  m.match(0, 1);
  m.match(2, 3);
  for (Mode mode : {Mode::kBudget, Mode::kUntilQuiescent}) {
    EdgeStream stream(g, OrderPolicy::kFileOrder);
    Engine engine(half(mode));
    PhaseState state = init_phase(m, {4, 16});
    engine.run_pass_bundle(state, stream);
    EXPECT_EQ(stream.passes_taken(), 3u);
  }
}

TEST(Engine, PerfectlyMatchedGraph) {
  const EdgeList g = generate(GraphKind::kPath, 6, 0);
  for (Mode mode : {Mode::kBudget, Mode::kUntilQuiescent}) {
    EdgeStream stream(g, OrderPolicy::kFileOrder);
    Matching m = greedy_maximal(g.n, stream.next_pass());
    ASSERT_EQ(m.size(), 3u);
    Engine engine(half(mode));
    const PhaseReport p = engine.run_phase(stream, m);
    EXPECT_EQ(p.augmentations, 0u);
    EXPECT_EQ(p.active_at_end, 0u);
    EXPECT_EQ(p.bundles, 0u);
  }
}

TEST(Engine, PathOfThree) {
  const EdgeList g = generate(GraphKind::kPath, 3, 0);
  EdgeStream stream(g, OrderPolicy::kFileOrder);
  const RunResult r = run(stream, half(Mode::kUntilQuiescent));
  EXPECT_EQ(r.matching.size(), 1u);
  EXPECT_EQ(r.stats.phases, 1u);
  EXPECT_EQ(r.stats.augmentations_per_phase, (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(r.stats.passes, 1 + 3 * r.stats.bundles);
  EXPECT_EQ(r.stats.passes, stream.passes_taken());
}

TEST(Engine, PassAccountingAndValidity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const std::size_t m = rng() % (std::min<std::size_t>(n * (n - 1) / 2, 3 * n) + 1);
    const EdgeList g = generate(GraphKind::kRandom, n, rng(), m);
    const Mode mode = trial % 2 ? Mode::kBudget : Mode::kUntilQuiescent;
    EdgeStream stream(g, OrderPolicy::kPerPassReseed, rng());
    const RunResult r = run(stream, half(mode), AssertLevel::kBoundary);
    EXPECT_EQ(r.stats.passes, stream.passes_taken());
    EXPECT_EQ(r.stats.passes, 1 + 3 * r.stats.bundles);
    EXPECT_FALSE(validate_matching(g, r.matching).has_value());
    EXPECT_TRUE(is_maximal(g, r.matching));
    EXPECT_GE(r.matching.size(), r.stats.greedy_size);
    EXPECT_EQ(r.stats.violation_count, 0u);
    for (std::uint64_t b : r.stats.bundles_per_phase) {
      if (mode == Mode::kBudget) EXPECT_LE(b, 64u);
    }
  }
}

TEST(Engine, BudgetModeStopsAtPhaseBudget) {
  ParamOverrides o;
  o.phase_budget = 1;
  o.bundles_per_phase = 1;
  const Params p = compute_params(parse_rational("1/2"), Mode::kBudget, o);
  const EdgeList g = generate(GraphKind::kPath, 40, 0);
  EdgeStream stream(g, OrderPolicy::kSeededPermutation, 3);
  const RunResult r = run(stream, p);
  EXPECT_LE(r.stats.phases, 1u);
  EXPECT_LE(r.stats.passes, 1u + 3u);
}

TEST(Engine, ActiveNodesAtPhaseEndBelowFraction) {
  std::mt19937_64 rng(23);
  const Params p = half(Mode::kBudget);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng() % 37;
    const EdgeList g = generate(GraphKind::kRandom, n, rng(), std::min(2 * n, n * (n - 1) / 2));
    EdgeStream stream(g, OrderPolicy::kSeededPermutation, rng());
    const RunResult r = run(stream, p);
    std::uint64_t size = r.stats.greedy_size;
    for (std::size_t i = 0; i < r.stats.phases; ++i) {
      size += r.stats.augmentations_per_phase[i];
      const Rational bound = p.active_fraction * Rational(BigInt(size));
      EXPECT_LE(Rational(BigInt(r.stats.active_at_phase_end[i])), bound)
          << "n=" << n << " phase " << i;
    }
  }
}

TEST(Engine, DumpIsReproducible) {
  const EdgeList g = generate(GraphKind::kRandom, 24, 5, 50);
  std::string dumps[2];
  for (std::string& out : dumps) {
    std::ostringstream sink;
    EdgeStream stream(g, OrderPolicy::kPerPassReseed, 8);
    Engine engine(half(Mode::kUntilQuiescent));
    engine.set_dump(&sink);
    engine.run(stream);
    out = sink.str();
  }
  EXPECT_FALSE(dumps[0].empty());
  EXPECT_EQ(dumps[0], dumps[1]);
}

TEST(AssertLevelText, RoundTrips) {
  for (AssertLevel l : {AssertLevel::kOff, AssertLevel::kBoundary, AssertLevel::kFull}) {
    EXPECT_EQ(parse_assert_level(to_string(l)), l);
  }
  EXPECT_THROW(parse_assert_level("loud"), std::invalid_argument);
}

}  // namespace
}  // namespace semimatch
