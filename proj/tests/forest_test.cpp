#include <gtest/gtest.h>

#include "semimatch/invariants.hpp"
#include "semimatch/structure_forest.hpp"

namespace semimatch {
namespace {

constexpr ForestLimits kWide{4, 1000};

Matching matched(std::size_t n, std::initializer_list<Edge> edges) {
  Matching m(n);
  for (const Edge& e : edges) m.match(e.u, e.v);
  return m;
}

// Root 0 with active path (1,2) (3,4) (5,6), labels 1..3; vertex 7 is a
// second free root.
struct ChainFixture : ::testing::Test {
  Matching m = matched(8, {{1, 2}, {3, 4}, {5, 6}});
  PhaseState state{m, kWide};
  StructureId alpha = 0;
  StructureId beta = 0;

  void SetUp() override {
    alpha = state.vertex_owner(0);
    beta = state.vertex_owner(7);
    ASSERT_EQ(state.try_extend(alpha, 0, 1).kind, ExtendKind::kExtended);
    ASSERT_EQ(state.try_extend(alpha, 2, 3).kind, ExtendKind::kExtended);
    ASSERT_EQ(state.try_extend(alpha, 4, 5).kind, ExtendKind::kExtended);
  }
};

TEST(InitPhase, OneStructurePerFreeVertex) {
  Matching m = matched(4, {{1, 2}});
  const PhaseState s = init_phase(m, kWide);
  ASSERT_EQ(s.structures().size(), 2u);
  EXPECT_EQ(s.structure(0).root, 0u);
  EXPECT_EQ(s.structure(1).root, 3u);
  EXPECT_EQ(s.owned_arc_count(), 0u);
  EXPECT_EQ(s.label(1), kInfLabel);
  EXPECT_EQ(s.label(2), kInfLabel);
  EXPECT_EQ(s.stored_count(), 0u);
}

TEST(InitPhase, PerfectMatchingHasNoStructures) {
  Matching m = matched(4, {{0, 1}, {2, 3}});
  const PhaseState s = init_phase(m, kWide);
  EXPECT_TRUE(s.structures().empty());
  EXPECT_EQ(s.active_count(), 0u);
}

TEST(InitPhase, EmptyMatchingOnSingleEdge) {
  Matching m(2);
  EXPECT_EQ(init_phase(m, kWide).structures().size(), 2u);
}

TEST(InitPhase, RejectsZeroLimits) {
  Matching m(2);
  EXPECT_THROW(PhaseState(m, ForestLimits{0, 1}), std::invalid_argument);
}

TEST(TryExtend, ExtendThenAugment) {
  Matching m = matched(4, {{1, 2}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  const ExtendOutcome first = s.try_extend(a, 0, 1);
  EXPECT_EQ(first.kind, ExtendKind::kExtended);
  EXPECT_EQ(first.target, (Arc{1, 2}));
  EXPECT_EQ(s.label(1), 1u);
  EXPECT_EQ(s.structure(a).active_path, (std::vector<Vertex>{1}));
  EXPECT_EQ(s.arc_owner(1), a);
  EXPECT_EQ(s.arc_owner(2), kNoStructure);

  const ExtendOutcome second = s.try_extend(a, 2, 3);
  ASSERT_EQ(second.kind, ExtendKind::kAugmentation);
  ASSERT_TRUE(second.path.has_value());
  const std::vector<Vertex> vs = second.path->vertices();
  const bool forward = vs == std::vector<Vertex>{0, 1, 2, 3};
  const bool backward = vs == std::vector<Vertex>{3, 2, 1, 0};
  EXPECT_TRUE(forward || backward);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(s.augmentations(), 1u);
  for (Vertex v = 0; v < 4; ++v) EXPECT_TRUE(s.removed(v));
}

TEST(TryExtend, ReverseOfOwnArcRefused) {
  // 0 -(1,2)-(3,4); 4 touches 2, whose arc (2,1) reverses an owned arc.
  Matching m = matched(5, {{1, 2}, {3, 4}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  ASSERT_EQ(s.try_extend(a, 0, 1).kind, ExtendKind::kExtended);
  ASSERT_EQ(s.try_extend(a, 2, 3).kind, ExtendKind::kExtended);
  EXPECT_EQ(s.try_extend(a, 4, 2).kind, ExtendKind::kNone);
  EXPECT_EQ(s.arc_owner(2), kNoStructure);
  EXPECT_EQ(s.structure(a).active_path, (std::vector<Vertex>{1, 3}));
}

TEST(TryExtend, RespectsMaxPathLength) {
  Matching m = matched(5, {{1, 2}, {3, 4}});
  PhaseState s(m, ForestLimits{1, 1000});
  const StructureId a = s.vertex_owner(0);
  ASSERT_EQ(s.try_extend(a, 0, 1).kind, ExtendKind::kExtended);
  EXPECT_EQ(s.try_extend(a, 2, 3).kind, ExtendKind::kNone);
}

TEST_F(ChainFixture, OvertakeTailArc) {
  const ExtendOutcome out = state.try_extend(beta, 7, 5);
  EXPECT_EQ(out.kind, ExtendKind::kExtended);
  EXPECT_TRUE(out.overtook);
  EXPECT_EQ(out.target, (Arc{5, 6}));
  EXPECT_EQ(state.arc_owner(5), beta);
  EXPECT_EQ(state.label(5), 1u);
  EXPECT_EQ(state.structure(beta).active_path, (std::vector<Vertex>{5}));
  EXPECT_EQ(state.structure(beta).pause_remaining, 1u);
  EXPECT_EQ(state.structure(alpha).active_path, (std::vector<Vertex>{1, 3}));
  EXPECT_TRUE(state.structure(alpha).overtaken_this_pass);
  EXPECT_EQ(state.counters().overtakes, 1u);

  const AugPath p = state.alternating_path_to(5);
  EXPECT_EQ(p.alpha, 7u);
  EXPECT_EQ(p.arcs, (std::vector<Arc>{{5, 6}}));
}

TEST_F(ChainFixture, OvertakeMidPathLowersDescendantLabels) {
  // beta enters a_2 = (3,4) with an empty path; a_3 = (5,6) follows it.
  const ExtendOutcome out = state.try_extend(beta, 7, 3);
  ASSERT_TRUE(out.overtook);
  // Labels become |P_beta| + 1 + (i - j) for i >= j.
  EXPECT_EQ(state.label(3), 1u);
  EXPECT_EQ(state.label(5), 2u);
  EXPECT_EQ(state.structure(beta).active_path, (std::vector<Vertex>{3, 5}));
  EXPECT_EQ(state.structure(beta).pause_remaining, 2u);
  EXPECT_EQ(state.structure(alpha).active_path, (std::vector<Vertex>{1}));
  EXPECT_EQ(state.arc_owner(5), beta);
  EXPECT_EQ(state.alternating_path_to(5).arcs, (std::vector<Arc>{{3, 4}, {5, 6}}));
}

TEST_F(ChainFixture, NoOvertakeWithoutStrictlySmallerPosition) {
  // Position 1 against label 1.
  EXPECT_EQ(state.try_extend(beta, 7, 1).kind, ExtendKind::kNone);
  EXPECT_EQ(state.arc_owner(1), alpha);
  EXPECT_EQ(state.label(1), 1u);
}

TEST_F(ChainFixture, InvariantsHoldAfterOvertake) {
  InvariantTracker tracker;
  tracker.size_bound = 1000;
  EXPECT_TRUE(check_invariants(state, tracker).empty());
  state.try_extend(beta, 7, 3);
  EXPECT_TRUE(check_invariants(state, tracker).empty());
}

TEST_F(ChainFixture, AlternatingPathIsActivePrefix) {
  const AugPath p = state.alternating_path_to(3);
  EXPECT_EQ(p.alpha, 0u);
  EXPECT_EQ(p.arcs, (std::vector<Arc>{{1, 2}, {3, 4}}));
  EXPECT_THROW(state.alternating_path_to(2), std::invalid_argument);
}

TEST(Backtrack, PopsThenConcludes) {
  Matching m = matched(4, {{1, 2}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  ASSERT_EQ(s.try_extend(a, 0, 1).kind, ExtendKind::kExtended);
  s.backtrack(a);
  EXPECT_TRUE(s.structure(a).active_path.empty());
  EXPECT_EQ(s.arc_owner(1), a);
  EXPECT_TRUE(s.structure(a).active);
  s.backtrack(a);
  EXPECT_FALSE(s.structure(a).active);
  EXPECT_FALSE(s.eligible(a));
  EXPECT_EQ(s.active_count(), 1u);
}

TEST(DetectMerge, JoinsTwoStructures) {
  // a=0 b=1 c=2 d=3 e=4 f=5 with M = {bc, de}.
  Matching m = matched(6, {{1, 2}, {3, 4}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  const StructureId f = s.vertex_owner(5);
  ASSERT_EQ(s.try_extend(a, 0, 1).kind, ExtendKind::kExtended);
  ASSERT_EQ(s.try_extend(f, 5, 4).kind, ExtendKind::kExtended);
  EXPECT_FALSE(s.detect_merge(1, 4).has_value());
  const auto p = s.detect_merge(2, 3);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->arcs.size(), 2u);
  const std::vector<Vertex> vs = p->vertices();
  const bool forward = vs == std::vector<Vertex>{0, 1, 2, 3, 4, 5};
  const bool backward = vs == std::vector<Vertex>{5, 4, 3, 2, 1, 0};
  EXPECT_TRUE(forward || backward);
  EXPECT_EQ(m.size(), 3u);
  EXPECT_FALSE(s.structure(a).alive);
  EXPECT_FALSE(s.structure(f).alive);
}

TEST(DetectMerge, SameStructureOrUnownedIsNone) {
  Matching m = matched(6, {{1, 2}, {3, 4}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  ASSERT_EQ(s.try_extend(a, 0, 1).kind, ExtendKind::kExtended);
  EXPECT_FALSE(s.detect_merge(0, 2).has_value());
  EXPECT_FALSE(s.detect_merge(3, 5).has_value());
  EXPECT_EQ(m.size(), 2u);
}

TEST(RecordStructureEdge, SetSemantics) {
  Matching m = matched(4, {{1, 2}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  ASSERT_EQ(s.try_extend(a, 0, 1).kind, ExtendKind::kExtended);
  const std::size_t base = s.stored_count();
  EXPECT_TRUE(s.record_structure_edge(0, 2));
  EXPECT_EQ(s.stored_count(), base + 1);
  EXPECT_FALSE(s.record_structure_edge(2, 0));
  EXPECT_EQ(s.stored_count(), base + 1);
  EXPECT_FALSE(s.record_structure_edge(2, 3));
  EXPECT_TRUE(s.stored(2, 0));
}

TEST(Pause, SkipsOneBundlePerUnit) {
  Matching m = matched(8, {{1, 2}, {3, 4}, {5, 6}});
  PhaseState s(m, kWide);
  const StructureId a = s.vertex_owner(0);
  const StructureId b = s.vertex_owner(7);
  s.try_extend(a, 0, 1);
  s.try_extend(a, 2, 3);
  s.try_extend(a, 4, 5);
  s.try_extend(b, 7, 5);
  EXPECT_TRUE(s.consume_pause(b));
  EXPECT_FALSE(s.eligible(b));
  EXPECT_FALSE(s.consume_pause(b));
  EXPECT_TRUE(s.eligible(b));
}

TEST(Hold, OnlyIgnoredWhenReleased) {
  Matching m = matched(4, {{1, 2}});
  PhaseState s(m, kWide);
  s.set_on_hold(0, true);
  EXPECT_FALSE(s.eligible(0));
  s.set_ignore_holds(true);
  EXPECT_TRUE(s.eligible(0));
}

TEST(Dump, Format) {
  Matching m = matched(4, {{1, 2}});
  PhaseState s(m, kWide);
  s.try_extend(0, 0, 1);
  s.backtrack(1);
  EXPECT_EQ(s.dump(), "0 | 1>2 | 1>2:1 | 0 | 0\n3 | concluded | - | 0 | 0\n");
  s.try_extend(0, 2, 3);
  EXPECT_EQ(s.dump(), "0 | merged\n3 | merged\n");
}

TEST(Observer, SeesEveryMutation) {
  Matching m = matched(4, {{1, 2}});
  PhaseState s(m, kWide);
  std::vector<std::string> events;
  s.observer = [&](PhaseState&, const char* e) { events.emplace_back(e); };
  s.try_extend(0, 0, 1);
  s.record_structure_edge(0, 2);
  s.backtrack(1);
  EXPECT_EQ(events, (std::vector<std::string>{"extend", "store", "backtrack"}));
}

}  // namespace
}  // namespace semimatch
