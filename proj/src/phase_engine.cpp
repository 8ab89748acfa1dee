#include "semimatch/phase_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace semimatch {
namespace {

constexpr std::size_t kMaxKeptViolations = 64;

bool counters_differ(const ForestCounters& a, const ForestCounters& b) {
  return a.extensions != b.extensions || a.backtracks != b.backtracks || a.merges != b.merges ||
         a.stored_edges != b.stored_edges || a.overtakes != b.overtakes;
}

void add_counters(ForestCounters& total, const ForestCounters& c) {
  total.extensions += c.extensions;
  total.jumps += c.jumps;
  total.overtakes += c.overtakes;
  total.backtracks += c.backtracks;
  total.merges += c.merges;
  total.stored_edges += c.stored_edges;
}

}  // namespace

std::string_view to_string(AssertLevel level) {
  switch (level) {
    case AssertLevel::kOff: return "off";
    case AssertLevel::kBoundary: return "boundary";
    case AssertLevel::kFull: return "full";
  }
  return "?";
}

AssertLevel parse_assert_level(std::string_view text) {
  if (text == "off") return AssertLevel::kOff;
  if (text == "boundary") return AssertLevel::kBoundary;
  if (text == "full") return AssertLevel::kFull;
  throw std::invalid_argument("unknown assertion level: " + std::string(text));
}

Engine::Engine(Params params, AssertLevel asserts) : params_(std::move(params)), asserts_(asserts) {
  tracker_.size_bound = params_.structure_size_bound > std::numeric_limits<std::uint64_t>::max()
                            ? 0
                            : params_.structure_size_bound.convert_to<std::uint64_t>();
}

void Engine::sample_memory(const PhaseState* state, const Matching& m) {
  std::uint64_t words = 3 * m.size();
  if (state != nullptr) {
    std::uint64_t alive = 0;
    for (const Structure& s : state->structures()) alive += s.alive ? 1 : 0;
    words += state->stored_count() + 2 * state->owned_arc_count() + state->active_path_entries() +
             alive;
    for (const Structure& s : state->structures()) {
      if (s.alive) {
        stats_.max_structure_vertices = std::max<std::uint64_t>(stats_.max_structure_vertices,
                                                                 s.vertex_count());
      }
    }
  }
  stats_.peak_words = std::max(stats_.peak_words, words);
}

void Engine::check(PhaseState& state, const char* where) {
  auto found = check_invariants(state, tracker_);
  stats_.invariant_checks = tracker_.checks;
  stats_.max_structure_vertices =
      std::max(stats_.max_structure_vertices, tracker_.max_structure_vertices);
  for (auto& v : found) {
    ++stats_.violation_count;
    if (stats_.violations.size() < kMaxKeptViolations) {
      stats_.violations.push_back("phase " + std::to_string(stats_.phases + 1) + " bundle " +
                                  std::to_string(stats_.bundles) + " after " + where + ": " + v);
    }
  }
}

void Engine::begin_bundle(PhaseState& state, bool& progress) {
  for (StructureId s = 0; s < state.structures().size(); ++s) {
    const Structure& st = state.structure(s);
    if (!st.alive) continue;
    if (state.consume_pause(s)) progress = true;
    state.set_on_hold(s, st.vertex_count() - 1 >= params_.hold_limit);
  }
  state.set_ignore_holds(release_holds_);
}

BundleReport Engine::run_pass_bundle(PhaseState& state, EdgeStream& stream) {
  BundleReport report;
  const ForestCounters before = state.counters();
  begin_bundle(state, report.progress);
  ++stats_.bundles;
  const Matching& m = state.matching();

  // ExtendStructures.
  {
    const auto& edges = stream.next_pass();
    ++stats_.passes;
    state.begin_pass();
    for (const Edge& e : edges) {
      if (m.mate(e.u) == e.v) continue;
      if (state.detect_merge(e.u, e.v)) continue;
      struct Candidate {
        Vertex root;
        StructureId s;
        Vertex w;
        Vertex x;
      };
      Candidate cands[2];
      std::size_t count = 0;
      for (auto [w, x] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (state.removed(w)) continue;
        const StructureId s = state.vertex_owner(w);
        if (s == kNoStructure || !state.eligible(s)) continue;
        cands[count++] = {state.structure(s).root, s, w, x};
      }
      if (count == 2 && cands[1].root < cands[0].root) std::swap(cands[0], cands[1]);
      for (std::size_t i = 0; i < count; ++i) {
        if (state.try_extend(cands[i].s, cands[i].w, cands[i].x).kind != ExtendKind::kNone) break;
      }
    }
    for (StructureId s = 0; s < state.structures().size(); ++s) {
      const Structure& st = state.structure(s);
      if (state.eligible(s) && !st.extended_this_pass && !st.overtaken_this_pass) {
        state.backtrack(s);
      }
    }
    sample_memory(&state, m);
  }

  // EdgeMerge.
  {
    const auto& edges = stream.next_pass();
    ++stats_.passes;
    for (const Edge& e : edges) {
      if (m.mate(e.u) != e.v) state.detect_merge(e.u, e.v);
    }
    sample_memory(&state, m);
  }

  // AugmentStructures.
  {
    const auto& edges = stream.next_pass();
    ++stats_.passes;
    for (const Edge& e : edges) {
      if (m.mate(e.u) != e.v) state.record_structure_edge(e.u, e.v);
    }
    sample_memory(&state, m);
  }

  const ForestCounters& after = state.counters();
  report.augmentations = after.merges - before.merges;
  report.progress = report.progress || counters_differ(before, after);
  report.active_after = state.active_count();
  if (asserts_ != AssertLevel::kOff) check(state, "bundle");
  if (dump_ != nullptr) {
    *dump_ << "phase " << stats_.phases + 1 << " bundle " << stats_.bundles << "\n" << state.dump();
  }
  return report;
}

PhaseReport Engine::run_phase(EdgeStream& stream, Matching& m) {
  PhaseReport report;
  PhaseState state = init_phase(m, {params_.max_path_length, params_.hold_limit});
  tracker_.previous_labels.clear();
  if (asserts_ == AssertLevel::kFull) {
    state.observer = [this](PhaseState& s, const char* event) { check(s, event); };
  }
  report.free_at_start = state.active_count();
  release_holds_ = false;
  const bool quiescent = params_.mode == Mode::kUntilQuiescent;
  while (state.active_count() > 0) {
    if (!quiescent && report.bundles == params_.bundles_per_phase) break;
    const BundleReport bundle = run_pass_bundle(state, stream);
    ++report.bundles;
    if (!quiescent) continue;
    if (bundle.progress) {
      release_holds_ = false;
    } else if (release_holds_) {
      throw std::logic_error("phase stalled with holds released");
    } else {
      // Only structures on hold are left; let them move in the next bundle.
      release_holds_ = true;
    }
  }
  report.augmentations = state.augmentations();
  report.active_at_end = state.active_count();
  add_counters(stats_.totals, state.counters());
  ++stats_.phases;
  stats_.augmentations_per_phase.push_back(report.augmentations);
  stats_.active_at_phase_end.push_back(report.active_at_end);
  stats_.bundles_per_phase.push_back(report.bundles);
  return report;
}

Matching Engine::run(EdgeStream& stream) {
  const auto& first = stream.next_pass();
  ++stats_.passes;
  Matching m = greedy_maximal(stream.base().n, first);
  stats_.greedy_size = m.size();
  sample_memory(nullptr, m);
  while (true) {
    if (params_.mode == Mode::kBudget && params_.phase_budget &&
        stats_.phases >= *params_.phase_budget) {
      break;
    }
    const PhaseReport phase = run_phase(stream, m);
    if (phase.augmentations == 0) break;
  }
  return m;
}

RunResult run(EdgeStream& stream, const Params& params, AssertLevel asserts) {
  Engine engine(params, asserts);
  Matching m = engine.run(stream);
  return {std::move(m), engine.stats()};
}

}  // namespace semimatch
