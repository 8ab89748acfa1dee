#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semimatch {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Key of the unordered pair {u, v}; equal for both orientations.
inline std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

/// Simple undirected graph on vertices 0..n-1 in a fixed file order.
struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

/// Raised by the edge-list reader; carries the offending 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads "n m" followed by m lines "u v". Blank lines and lines starting
/// with '#' are ignored. Throws ParseError on any malformed input.
EdgeList open_edge_list(std::istream& in);
EdgeList open_edge_list(std::string_view text);
EdgeList open_edge_list_file(const std::string& path);

/// Throws std::invalid_argument when the list has self-loops, duplicate
/// pairs or out-of-range endpoints.
void check_simple(const EdgeList& g);

enum class OrderPolicy { kFileOrder, kSeededPermutation, kPerPassReseed };

std::string_view to_string(OrderPolicy policy);
OrderPolicy parse_order_policy(std::string_view text);

/// Replayable multi-pass edge source. Every pass yields each edge exactly
/// once; the order depends only on (policy, seed, pass index).
class EdgeStream {
 public:
  EdgeStream(EdgeList base, OrderPolicy policy, std::uint64_t seed = 0);

  const EdgeList& base() const { return base_; }
  OrderPolicy policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t passes_taken() const { return passes_taken_; }

  /// Order of pass `pass_index` (1-based). Pure: does not count as a pass.
  std::vector<Edge> pass_order(std::size_t pass_index) const;

  /// Starts the next pass and returns its edges in order.
  const std::vector<Edge>& next_pass();

 private:
  EdgeList base_;
  OrderPolicy policy_;
  std::uint64_t seed_;
  std::size_t passes_taken_ = 0;
  std::vector<Edge> fixed_order_;
  std::vector<Edge> current_;
};

enum class GraphKind { kPath, kCycle, kRandom, kTwoGreedyTrap };

/// Synthetic inputs. `m` is only read for kRandom. The trap is the path
/// a..g (vertices 0..6) listed in an order that forces greedy to size 2.
EdgeList generate(GraphKind kind, std::size_t n, std::uint64_t seed, std::size_t m = 0);

/// Parses "path:N", "cycle:N", "random:N:M", "two-greedy-trap".
EdgeList generate_from_spec(std::string_view spec, std::uint64_t seed);

}  // namespace semimatch
