#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "semimatch/stream.hpp"

namespace semimatch {

/// Small in-memory graph over a subset of vertices, searched with Edmonds'
/// blossom BFS. Local ids are dense; kNoVertex can be added as a virtual
/// vertex that exists only in this graph.
class LocalGraph {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  /// Local id of v, adding it if absent. Virtual vertices are never merged.
  std::size_t add_vertex(Vertex v);
  std::size_t local(Vertex v) const;
  Vertex global(std::size_t i) const { return globals_[i]; }
  std::size_t size() const { return globals_.size(); }

  /// Both endpoints must already be present. Parallel edges are ignored.
  void add_edge(std::size_t a, std::size_t b);
  void set_mate(std::size_t a, std::size_t b);
  std::size_t mate(std::size_t a) const { return mate_[a]; }
  const std::vector<std::size_t>& neighbors(std::size_t a) const { return adj_[a]; }

  /// Sorts adjacency lists so searches do not depend on insertion order.
  void finalize();

 private:
  std::vector<Vertex> globals_;
  std::unordered_map<Vertex, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> mate_;
};

struct BlossomSearch {
  /// Even-reachable ("outer") flags after a full search from root.
  std::vector<bool> outer;
  /// Local ids root .. free vertex, alternating, when one was reached.
  std::optional<std::vector<std::size_t>> path;
};

/// Alternating BFS from a free root. Stops at the first free vertex other
/// than root; `outer` is complete only when no path was found.
BlossomSearch blossom_search(const LocalGraph& g, std::size_t root);

}  // namespace semimatch
