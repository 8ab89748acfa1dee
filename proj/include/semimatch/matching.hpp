#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semimatch/stream.hpp"

namespace semimatch {

/// Orientation (tail -> head) of a matched edge.
struct Arc {
  Vertex tail = kNoVertex;
  Vertex head = kNoVertex;

  Arc reversed() const { return {head, tail}; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n) : mate_(n, kNoVertex) {}

  std::size_t vertex_count() const { return mate_.size(); }
  std::size_t size() const { return size_; }

  bool is_free(Vertex v) const { return mate_[v] == kNoVertex; }
  /// kNoVertex when v is free.
  Vertex mate(Vertex v) const { return mate_[v]; }
  bool contains(Vertex u, Vertex v) const { return v != kNoVertex && mate_[u] == v; }

  /// Both endpoints must be free.
  void match(Vertex u, Vertex v);
  void unmatch(Vertex u);

  /// Matched edges with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Raw mate array; used by validators that must see asymmetric states.
  const std::vector<Vertex>& mates() const { return mate_; }
  static Matching from_mates(std::vector<Vertex> mates);

  friend bool operator==(const Matching& a, const Matching& b) { return a.mate_ == b.mate_; }

 private:
  std::vector<Vertex> mate_;
  std::size_t size_ = 0;
};

/// Augmenting path alpha -> a_1 -> ... -> a_k -> beta. Only the matched arcs
/// are listed; consecutive arcs are joined by implicit unmatched edges
/// {alpha, a_1.tail}, {a_i.head, a_{i+1}.tail}, {a_k.head, beta}.
struct AugPath {
  Vertex alpha = kNoVertex;
  std::vector<Arc> arcs;
  Vertex beta = kNoVertex;

  std::vector<Vertex> vertices() const;
  /// The k+1 unmatched connectors in path order.
  std::vector<Edge> connectors() const;
  AugPath reversed() const;
};

class AugmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One pass of the greedy algorithm; the result is inclusion-maximal.
Matching greedy_maximal(std::size_t n, const std::vector<Edge>& pass);

using EdgePredicate = std::function<bool(Vertex, Vertex)>;

/// Flips `p`. Throws AugmentError when p is not augmenting for m, or when
/// `edge_exists` is given and rejects a connector. m is unchanged on error.
void augment_along(Matching& m, const AugPath& p, const EdgePredicate& edge_exists = {});

struct Violation {
  enum class Kind { kNoSuchEdge, kAsymmetric, kVertexReuse, kOutOfRange } kind;
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  std::string message;
};

/// First violation found, or nullopt if m is a matching of g.
std::optional<Violation> validate_matching(const EdgeList& g, const Matching& m);

/// True when no edge of g has two free endpoints.
bool is_maximal(const EdgeList& g, const Matching& m);

/// "u v" per matched edge, u < v, sorted.
void write_matching(std::ostream& out, const Matching& m);
std::string matching_to_string(const Matching& m);

}  // namespace semimatch
