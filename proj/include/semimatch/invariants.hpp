#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semimatch/structure_forest.hpp"

namespace semimatch {

/// State carried between checks of one phase.
struct InvariantTracker {
  /// Labels seen at the previous check; labels may only go down.
  std::vector<std::uint32_t> previous_labels;
  std::uint64_t size_bound = 0;
  std::uint64_t max_structure_vertices = 0;
  std::uint64_t checks = 0;
};

/// Disjointness, connectivity, active-path legality, the jumping rule,
/// label monotonicity and the structure size bound. Returns one message per
/// violation.
std::vector<std::string> check_invariants(PhaseState& state, InvariantTracker& tracker);

}  // namespace semimatch
