#include "semimatch/local_search.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace semimatch {

std::size_t LocalGraph::add_vertex(Vertex v) {
  if (v != kNoVertex) {
    auto it = index_.find(v);
    if (it != index_.end()) return it->second;
    index_.emplace(v, globals_.size());
  }
  globals_.push_back(v);
  adj_.emplace_back();
  mate_.push_back(kNone);
  return globals_.size() - 1;
}

std::size_t LocalGraph::local(Vertex v) const {
  auto it = index_.find(v);
  return it == index_.end() ? kNone : it->second;
}

void LocalGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return;
  adj_[a].push_back(b);
  adj_[b].push_back(a);
}

void LocalGraph::set_mate(std::size_t a, std::size_t b) {
  mate_[a] = b;
  mate_[b] = a;
}

void LocalGraph::finalize() {
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

namespace {

constexpr std::size_t kNone = LocalGraph::kNone;

class Search {
 public:
  Search(const LocalGraph& g, std::size_t root)
      : g_(g),
        root_(root),
        n_(g.size()),
        parent_(n_, kNone),
        base_(n_),
        used_(n_, false),
        blossom_(n_, false) {
    for (std::size_t i = 0; i < n_; ++i) base_[i] = i;
  }

  BlossomSearch run() {
    BlossomSearch out;
    if (g_.mate(root_) != kNone) throw std::invalid_argument("blossom search: root is matched");
    used_[root_] = true;
    std::deque<std::size_t> queue{root_};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || g_.mate(v) == to) continue;
        if (to == root_ || (g_.mate(to) != kNone && parent_[g_.mate(to)] != kNone)) {
          const std::size_t cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = true;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (g_.mate(to) == kNone) {
            out.path = trace(to);
            out.outer = used_;
            return out;
          }
          const std::size_t next = g_.mate(to);
          used_[next] = true;
          queue.push_back(next);
        }
      }
    }
    out.outer = used_;
    return out;
  }

 private:
  std::size_t lca(std::size_t a, std::size_t b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (g_.mate(a) == kNone) break;
      a = parent_[g_.mate(a)];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[g_.mate(b)];
    }
  }

  void mark_path(std::size_t v, std::size_t b, std::size_t child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[g_.mate(v)]] = true;
      parent_[v] = child;
      child = g_.mate(v);
      v = parent_[g_.mate(v)];
    }
  }

  std::vector<std::size_t> trace(std::size_t end) const {
    std::vector<std::size_t> path{end};
    std::size_t v = end;
    while (true) {
      const std::size_t pv = parent_[v];
      path.push_back(pv);
      if (pv == root_) break;
      v = g_.mate(pv);
      path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  const LocalGraph& g_;
  std::size_t root_;
  std::size_t n_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> base_;
  std::vector<bool> used_;
  std::vector<bool> blossom_;
};

}  // namespace

BlossomSearch blossom_search(const LocalGraph& g, std::size_t root) { return Search(g, root).run(); }

}  // namespace semimatch
