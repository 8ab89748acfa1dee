#include "semimatch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace semimatch {
namespace {

std::vector<std::vector<Vertex>> adjacency(const EdgeList& g) {
  std::vector<std::vector<Vertex>> adj(g.n);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

class ExactSearch {
 public:
  explicit ExactSearch(const EdgeList& g) : adj_(adjacency(g)), used_(g.n, false), mate_(g.n, kNoVertex) {}

  OracleResult run() {
    best_mates_ = mate_;
    search(0);
    OracleResult r;
    r.opt_size = best_;
    r.witness = Matching::from_mates(best_mates_);
    r.nodes_explored = nodes_;
    return r;
  }

 private:
  bool has_free_neighbor(Vertex v) const {
    return std::any_of(adj_[v].begin(), adj_[v].end(), [&](Vertex u) { return !used_[u]; });
  }

  std::size_t upper_bound() const {
    std::size_t live = 0;
    for (Vertex v = 0; v < adj_.size(); ++v) {
      if (!used_[v] && has_free_neighbor(v)) ++live;
    }
    return live / 2;
  }

  void search(std::size_t size) {
    ++nodes_;
    if (size > best_) {
      best_ = size;
      best_mates_ = mate_;
    }
    if (size + upper_bound() <= best_) return;
    Vertex v = 0;
    while (v < adj_.size() && (used_[v] || !has_free_neighbor(v))) ++v;
    if (v == adj_.size()) return;
    used_[v] = true;
    for (Vertex u : adj_[v]) {
      if (used_[u]) continue;
      used_[u] = true;
      mate_[v] = u;
      mate_[u] = v;
      search(size + 1);
      mate_[v] = mate_[u] = kNoVertex;
      used_[u] = false;
    }
    // Leave v unmatched.
    search(size);
    used_[v] = false;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<bool> used_;
  std::vector<Vertex> mate_;
  std::vector<Vertex> best_mates_;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
};

/// Depth-first enumeration of simple alternating paths from free vertices.
class AltSearch {
 public:
  AltSearch(const EdgeList& g, const Matching& m, std::size_t k)
      : adj_(adjacency(g)), m_(m), k_(k), blocked_(g.n, false) {}

  void block(const std::vector<Vertex>& vertices) {
    for (Vertex v : vertices) blocked_[v] = true;
  }

  /// First augmenting path found in vertex order, as a vertex sequence.
  std::optional<std::vector<Vertex>> find() {
    for (Vertex a = 0; a < adj_.size(); ++a) {
      if (!m_.is_free(a) || blocked_[a]) continue;
      path_ = {a};
      blocked_[a] = true;
      const bool found = extend(a, 0);
      blocked_[a] = false;
      if (found) return path_;
    }
    return std::nullopt;
  }

 private:
  bool extend(Vertex v, std::size_t matched) {
    for (Vertex x : adj_[v]) {
      if (blocked_[x] || m_.mate(v) == x) continue;
      if (m_.is_free(x)) {
        path_.push_back(x);
        return true;
      }
      const Vertex y = m_.mate(x);
      if (blocked_[y] || matched + 1 > k_) continue;
      blocked_[x] = blocked_[y] = true;
      path_.push_back(x);
      path_.push_back(y);
      const bool found = extend(y, matched + 1);
      blocked_[x] = blocked_[y] = false;
      if (found) return true;
      path_.pop_back();
      path_.pop_back();
    }
    return false;
  }

  std::vector<std::vector<Vertex>> adj_;
  const Matching& m_;
  std::size_t k_;
  std::vector<bool> blocked_;
  std::vector<Vertex> path_;
};

}  // namespace

OracleResult max_matching_exact(const EdgeList& g) {
  if (g.edges.size() > kOracleEdgeBudget) {
    throw OracleBudgetError("exact oracle refuses " + std::to_string(g.edges.size()) +
                            " edges (budget " + std::to_string(kOracleEdgeBudget) + ")");
  }
  check_simple(g);
  return ExactSearch(g).run();
}

bool short_aug_path_exists(const EdgeList& g, const Matching& m, std::size_t k) {
  return AltSearch(g, m, k).find().has_value();
}

CertificateResult certificate_check(const EdgeList& g, const Matching& m, std::size_t k) {
  CertificateResult r;
  AltSearch search(g, m, k);
  while (auto path = search.find()) {
    search.block(*path);
    ++r.count;
  }
  r.bound = Rational(2) * delta(Rational(BigInt(k))) * Rational(BigInt(m.size()));
  return r;
}

}  // namespace semimatch
