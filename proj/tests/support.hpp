#pragma once

#include <cstdint>
#include <vector>

#include "semimatch/params.hpp"
#include "semimatch/stream.hpp"

namespace semimatch::testing {

inline bool connected(const EdgeList& g) {
  if (g.n == 0) return true;
  std::vector<std::vector<Vertex>> adj(g.n);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(g.n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.n;
}

/// Every connected labelled simple graph on 1..max_n vertices.
inline std::vector<EdgeList> connected_graphs_up_to(std::size_t max_n) {
  std::vector<EdgeList> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<Edge> all;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      EdgeList g;
      g.n = n;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (mask >> i & 1) g.edges.push_back(all[i]);
      }
      if (connected(g)) out.push_back(std::move(g));
    }
  }
  return out;
}

/// Exact size >= opt / (1 + eps).
inline bool within_factor(std::size_t size, std::size_t opt, const Rational& eps) {
  return Rational(BigInt(size)) * (1 + eps) >= Rational(BigInt(opt));
}

}  // namespace semimatch::testing
