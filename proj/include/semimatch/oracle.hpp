#pragma once

#include <cstdint>
#include <stdexcept>

#include "semimatch/matching.hpp"
#include "semimatch/params.hpp"
#include "semimatch/stream.hpp"

namespace semimatch {

inline constexpr std::size_t kOracleEdgeBudget = 48;

/// The exact search refuses inputs above its budget instead of guessing.
class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  std::size_t opt_size = 0;
  Matching witness;
  std::uint64_t nodes_explored = 0;
};

/// Exact maximum matching by branch-and-bound. Throws OracleBudgetError
/// when g has more than kOracleEdgeBudget edges.
OracleResult max_matching_exact(const EdgeList& g);

/// True iff some augmenting path for m uses at most k matched edges.
bool short_aug_path_exists(const EdgeList& g, const Matching& m, std::size_t k);

struct CertificateResult {
  /// Size of a maximal set of vertex-disjoint augmenting paths with at most
  /// k matched edges each.
  std::size_t count = 0;
  /// 2 * delta(k) * |m|.
  Rational bound;

  bool certified() const { return Rational(BigInt(count)) <= bound; }
};

CertificateResult certificate_check(const EdgeList& g, const Matching& m, std::size_t k);

}  // namespace semimatch
