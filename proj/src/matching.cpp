#include "semimatch/matching.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace semimatch {

void Matching::match(Vertex u, Vertex v) {
  if (u == v || mate_[u] != kNoVertex || mate_[v] != kNoVertex) {
    throw std::logic_error("match: endpoints must be distinct free vertices");
  }
  mate_[u] = v;
  mate_[v] = u;
  ++size_;
}

void Matching::unmatch(Vertex u) {
  Vertex v = mate_[u];
  if (v == kNoVertex) return;
  mate_[u] = kNoVertex;
  mate_[v] = kNoVertex;
  --size_;
}

std::vector<Edge> Matching::edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (Vertex u = 0; u < mate_.size(); ++u) {
    if (mate_[u] != kNoVertex && u < mate_[u]) out.push_back({u, mate_[u]});
  }
  return out;
}

Matching Matching::from_mates(std::vector<Vertex> mates) {
  Matching m;
  m.mate_ = std::move(mates);
  for (Vertex u = 0; u < m.mate_.size(); ++u) {
    if (m.mate_[u] != kNoVertex && u < m.mate_[u]) ++m.size_;
  }
  return m;
}

std::vector<Vertex> AugPath::vertices() const {
  std::vector<Vertex> out;
  out.reserve(2 * arcs.size() + 2);
  out.push_back(alpha);
  for (const Arc& a : arcs) {
    out.push_back(a.tail);
    out.push_back(a.head);
  }
  out.push_back(beta);
  return out;
}

std::vector<Edge> AugPath::connectors() const {
  std::vector<Edge> out;
  Vertex prev = alpha;
  for (const Arc& a : arcs) {
    out.push_back({prev, a.tail});
    prev = a.head;
  }
  out.push_back({prev, beta});
  return out;
}

AugPath AugPath::reversed() const {
  AugPath r;
  r.alpha = beta;
  r.beta = alpha;
  for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) r.arcs.push_back(it->reversed());
  return r;
}

Matching greedy_maximal(std::size_t n, const std::vector<Edge>& pass) {
  Matching m(n);
  for (const Edge& e : pass) {
    if (m.is_free(e.u) && m.is_free(e.v)) m.match(e.u, e.v);
  }
  return m;
}

void augment_along(Matching& m, const AugPath& p, const EdgePredicate& edge_exists) {
  const std::size_t n = m.vertex_count();
  auto in_range = [n](Vertex v) { return v < n; };
  for (Vertex v : p.vertices()) {
    if (!in_range(v)) throw AugmentError("augment: vertex out of range");
  }
  if (p.alpha == p.beta) throw AugmentError("augment: endpoints coincide");
  if (!m.is_free(p.alpha)) {
    throw AugmentError("augment: start vertex " + std::to_string(p.alpha) + " is matched");
  }
  if (!m.is_free(p.beta)) {
    throw AugmentError("augment: end vertex " + std::to_string(p.beta) + " is matched");
  }
  std::unordered_set<Vertex> seen;
  for (Vertex v : p.vertices()) {
    if (!seen.insert(v).second) {
      throw AugmentError("augment: vertex " + std::to_string(v) + " repeats");
    }
  }
  for (const Arc& a : p.arcs) {
    if (m.mate(a.tail) != a.head) {
      throw AugmentError("augment: arc (" + std::to_string(a.tail) + "," +
                         std::to_string(a.head) + ") is not matched");
    }
  }
  if (edge_exists) {
    for (const Edge& e : p.connectors()) {
      if (!edge_exists(e.u, e.v)) {
        throw AugmentError("augment: connector {" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + "} is not a known edge");
      }
    }
  }
  for (const Arc& a : p.arcs) m.unmatch(a.tail);
  for (const Edge& e : p.connectors()) m.match(e.u, e.v);
}

std::optional<Violation> validate_matching(const EdgeList& g, const Matching& m) {
  const auto& mates = m.mates();
  if (mates.size() != g.n) {
    return Violation{Violation::Kind::kOutOfRange, kNoVertex, kNoVertex,
                     "matching has " + std::to_string(mates.size()) + " slots, graph has " +
                         std::to_string(g.n) + " vertices"};
  }
  std::unordered_set<std::uint64_t> edges;
  for (const Edge& e : g.edges) edges.insert(edge_key(e.u, e.v));
  for (Vertex u = 0; u < mates.size(); ++u) {
    const Vertex v = mates[u];
    if (v == kNoVertex) continue;
    if (v >= mates.size() || v == u) {
      return Violation{Violation::Kind::kOutOfRange, u, v,
                       "vertex " + std::to_string(u) + " has an invalid mate"};
    }
    if (mates[v] != u) {
      // v is claimed by u but points elsewhere: either a second edge on v or a
      // one-sided entry.
      if (mates[v] != kNoVertex) {
        return Violation{Violation::Kind::kVertexReuse, v, u,
                         "vertex " + std::to_string(v) + " reused"};
      }
      return Violation{Violation::Kind::kAsymmetric, u, v,
                       "mate(" + std::to_string(u) + ") = " + std::to_string(v) +
                           " but mate(" + std::to_string(v) + ") is unset"};
    }
    if (!edges.contains(edge_key(u, v))) {
      return Violation{Violation::Kind::kNoSuchEdge, u, v,
                       "edge {" + std::to_string(u) + "," + std::to_string(v) +
                           "} not in graph"};
    }
  }
  return std::nullopt;
}

bool is_maximal(const EdgeList& g, const Matching& m) {
  return std::none_of(g.edges.begin(), g.edges.end(),
                      [&](const Edge& e) { return m.is_free(e.u) && m.is_free(e.v); });
}

void write_matching(std::ostream& out, const Matching& m) {
  for (const Edge& e : m.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string matching_to_string(const Matching& m) {
  std::ostringstream out;
  write_matching(out, m);
  return out.str();
}

}  // namespace semimatch
