#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace semimatch {

// Expression templates are off: boost::rational's mixed comparisons with
// built-in integers do not terminate with them enabled.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::rational<BigInt>;

/// Accepts "0.5", "1/3", "1", "2.5e-1" style literals exactly.
Rational parse_rational(std::string_view text);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// ceil of a positive rational.
BigInt ceil(const Rational& r);

/// 1 / (2k(k+2)), exact.
Rational delta(const Rational& k);

enum class Mode { kUntilQuiescent, kBudget };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct ParamOverrides {
  std::optional<std::uint64_t> bundles_per_phase;
  std::optional<std::uint32_t> max_path_length;
  std::optional<std::uint64_t> hold_limit;
  std::optional<std::uint64_t> phase_budget;
};

/// Constants derived from epsilon. All integer fields are >= 1.
struct Params {
  Rational eps;
  Mode mode = Mode::kUntilQuiescent;
  /// Longest active path, in matched arcs.
  std::uint32_t max_path_length = 1;
  /// Structures with at least this many non-root vertices go on hold.
  std::uint64_t hold_limit = 1;
  /// PassBundles per phase (tau).
  std::uint64_t bundles_per_phase = 1;
  /// Phase budget T; nullopt when the bound's denominator is not positive
  /// and the run falls back to stopping after an unproductive phase.
  std::optional<std::uint64_t> phase_budget;
  /// delta(2/eps).
  Rational delta_k;
  /// Bound on the fraction of active free nodes left at phase end.
  Rational active_fraction;
  /// tau * (l_max + 1) * limit: bound on any structure's vertex count.
  BigInt structure_size_bound;

  /// Bundle budget T * tau, or nullopt when T is unbounded.
  std::optional<BigInt> bundle_budget() const;
};

/// Throws std::invalid_argument unless 0 < eps <= 1 and overrides are >= 1.
Params compute_params(const Rational& eps, Mode mode, const ParamOverrides& overrides = {});

}  // namespace semimatch
