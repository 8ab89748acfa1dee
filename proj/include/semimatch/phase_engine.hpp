#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "semimatch/invariants.hpp"
#include "semimatch/matching.hpp"
#include "semimatch/params.hpp"
#include "semimatch/stream.hpp"
#include "semimatch/structure_forest.hpp"

namespace semimatch {

/// off: no checks. boundary: after every bundle. full: after every mutation.
enum class AssertLevel { kOff, kBoundary, kFull };

std::string_view to_string(AssertLevel level);
AssertLevel parse_assert_level(std::string_view text);

struct RunStats {
  std::uint64_t passes = 0;
  std::uint64_t bundles = 0;
  std::uint64_t phases = 0;
  /// Resident words: one per matched edge, matched-arc label, stored edge,
  /// owned arc record, parent link, active-path entry and live structure.
  std::uint64_t peak_words = 0;
  std::size_t greedy_size = 0;
  std::vector<std::uint64_t> augmentations_per_phase;
  std::vector<std::uint64_t> active_at_phase_end;
  std::vector<std::uint64_t> bundles_per_phase;
  std::uint64_t max_structure_vertices = 0;
  ForestCounters totals;
  std::uint64_t invariant_checks = 0;
  std::uint64_t violation_count = 0;
  /// First violations, prefixed with where they were seen.
  std::vector<std::string> violations;
};

struct BundleReport {
  std::uint64_t augmentations = 0;
  /// Anything changed: an extension, backtrack, merge, stored edge or pause step.
  bool progress = false;
  std::size_t active_after = 0;
};

struct PhaseReport {
  std::uint64_t augmentations = 0;
  std::uint64_t bundles = 0;
  std::size_t free_at_start = 0;
  std::size_t active_at_end = 0;
};

class Engine {
 public:
  explicit Engine(Params params, AssertLevel asserts = AssertLevel::kOff);

  /// ExtendStructures, EdgeMerge, AugmentStructures: exactly three passes.
  BundleReport run_pass_bundle(PhaseState& state, EdgeStream& stream);
  PhaseReport run_phase(EdgeStream& stream, Matching& m);
  /// Greedy pass followed by phases until the mode's stopping rule fires.
  Matching run(EdgeStream& stream);

  const Params& params() const { return params_; }
  const RunStats& stats() const { return stats_; }
  /// Receives a structure dump after every bundle when set.
  void set_dump(std::ostream* out) { dump_ = out; }

 private:
  void sample_memory(const PhaseState* state, const Matching& m);
  void check(PhaseState& state, const char* where);
  void begin_bundle(PhaseState& state, bool& progress);

  Params params_;
  AssertLevel asserts_;
  RunStats stats_;
  InvariantTracker tracker_;
  std::ostream* dump_ = nullptr;
  bool release_holds_ = false;
};

struct RunResult {
  Matching matching;
  RunStats stats;
};

RunResult run(EdgeStream& stream, const Params& params, AssertLevel asserts = AssertLevel::kOff);

}  // namespace semimatch
