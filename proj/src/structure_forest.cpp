#include "semimatch/structure_forest.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace semimatch {

Vertex Structure::head_vertex(const Matching& m) const {
  return active_path.empty() ? root : m.mate(active_path.back());
}

PhaseState::PhaseState(Matching& m, ForestLimits limits) : m_(&m), limits_(limits) {
  if (limits_.max_path_length < 1 || limits_.hold_limit < 1) {
    throw std::invalid_argument("forest limits must be >= 1");
  }
  const std::size_t n = m.vertex_count();
  vowner_.assign(n, kNoStructure);
  owner_.assign(n, kNoStructure);
  root_of_.assign(n, kNoStructure);
  parent_.assign(n, kNoVertex);
  children_.assign(n, {});
  label_.assign(n, kInfLabel);
  removed_.assign(n, false);
  stored_adj_.assign(n, {});
  outer_.assign(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (!m.is_free(v)) continue;
    const auto id = static_cast<StructureId>(structures_.size());
    Structure s;
    s.root = v;
    structures_.push_back(std::move(s));
    root_of_[v] = id;
    vowner_[v] = id;
  }
  outer_version_.assign(structures_.size(), static_cast<std::uint64_t>(-1));
}

PhaseState init_phase(Matching& m, ForestLimits limits) { return PhaseState(m, limits); }

bool PhaseState::stored(Vertex u, Vertex v) const { return stored_.contains(edge_key(u, v)); }

bool PhaseState::eligible(StructureId s) const {
  const Structure& st = structures_[s];
  return st.alive && st.active && !st.skipping && (!st.on_hold || ignore_holds_);
}

std::size_t PhaseState::active_count() const {
  return std::count_if(structures_.begin(), structures_.end(),
                       [](const Structure& s) { return s.alive && s.active; });
}

std::size_t PhaseState::owned_arc_count() const {
  std::size_t total = 0;
  for (const Structure& s : structures_) {
    if (s.alive) total += s.arc_count;
  }
  return total;
}

std::size_t PhaseState::active_path_entries() const {
  std::size_t total = 0;
  for (const Structure& s : structures_) {
    if (s.alive) total += s.active_path.size();
  }
  return total;
}

void PhaseState::notify(const char* event) {
  if (observer) observer(*this, event);
}

void PhaseState::touch(StructureId s) { ++structures_[s].version; }

void PhaseState::store_edge(Vertex u, Vertex v) {
  if (stored_.insert(edge_key(u, v)).second) {
    stored_adj_[u].push_back(v);
    stored_adj_[v].push_back(u);
  }
}

void PhaseState::set_label(Vertex tail, std::uint32_t value) {
  if (value >= label_[tail]) throw std::logic_error("label would not decrease");
  label_[tail] = value;
}

void PhaseState::unlink(Vertex tail) {
  const Vertex p = parent_[tail];
  auto& list = p == kRootParent ? structures_[owner_[tail]].root_children : children_[p];
  list.erase(std::find(list.begin(), list.end(), tail));
  parent_[tail] = kNoVertex;
}

void PhaseState::link(Vertex tail, Vertex parent, StructureId s) {
  parent_[tail] = parent;
  if (parent == kRootParent) {
    structures_[s].root_children.push_back(tail);
  } else {
    children_[parent].push_back(tail);
  }
}

std::vector<Vertex> PhaseState::subtree(Vertex tail) const {
  std::vector<Vertex> out{tail};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Vertex c : children_[out[i]]) out.push_back(c);
  }
  return out;
}

void PhaseState::move_subtree(Vertex tail, StructureId to) {
  const StructureId from = owner_[tail];
  const auto nodes = subtree(tail);
  unlink(tail);
  for (Vertex t : nodes) {
    owner_[t] = to;
    vowner_[t] = to;
    vowner_[m_->mate(t)] = to;
  }
  structures_[from].arc_count -= nodes.size();
  structures_[to].arc_count += nodes.size();
  touch(from);
  touch(to);
}

std::vector<Vertex> PhaseState::vertices_of(StructureId s) const {
  const Structure& st = structures_[s];
  std::vector<Vertex> out{st.root};
  std::vector<Vertex> stack(st.root_children.rbegin(), st.root_children.rend());
  while (!stack.empty()) {
    const Vertex t = stack.back();
    stack.pop_back();
    out.push_back(t);
    out.push_back(m_->mate(t));
    for (auto it = children_[t].rbegin(); it != children_[t].rend(); ++it) stack.push_back(*it);
  }
  return out;
}

LocalGraph PhaseState::known_subgraph(const std::vector<StructureId>& members) const {
  std::vector<Vertex> vertices;
  for (StructureId s : members) {
    auto part = vertices_of(s);
    vertices.insert(vertices.end(), part.begin(), part.end());
  }
  std::sort(vertices.begin(), vertices.end());
  LocalGraph g;
  for (Vertex v : vertices) g.add_vertex(v);
  for (Vertex v : vertices) {
    const std::size_t lv = g.local(v);
    const Vertex mv = m_->mate(v);
    if (mv != kNoVertex && v < mv) {
      const std::size_t lm = g.local(mv);
      if (lm != LocalGraph::kNone) {
        g.add_edge(lv, lm);
        g.set_mate(lv, lm);
      }
    }
    for (Vertex u : stored_adj_[v]) {
      const std::size_t lu = g.local(u);
      if (lu != LocalGraph::kNone && v < u && m_->mate(v) != u) g.add_edge(lv, lu);
    }
  }
  return g;
}

void PhaseState::refresh_outer(StructureId s) {
  if (outer_version_[s] == structures_[s].version) return;
  LocalGraph g = known_subgraph({s});
  g.finalize();
  const BlossomSearch result = blossom_search(g, g.local(structures_[s].root));
  if (result.path) throw std::logic_error("structure contains a second free vertex");
  for (std::size_t i = 0; i < g.size(); ++i) outer_[g.global(i)] = result.outer[i];
  outer_version_[s] = structures_[s].version;
}

bool PhaseState::is_outer(Vertex v) {
  if (removed_[v]) return false;
  const StructureId s = vowner_[v];
  if (s == kNoStructure || !structures_[s].alive) return false;
  refresh_outer(s);
  return outer_[v];
}

std::optional<std::vector<Arc>> PhaseState::arcs_from_local_path(
    const LocalGraph& g, const std::vector<std::size_t>& path) const {
  // path = root, t1, h1, ..., tk, hk[, end]; pairs must be matched.
  std::vector<Arc> arcs;
  for (std::size_t i = 1; i + 1 < path.size(); i += 2) {
    const Vertex t = g.global(path[i]);
    const Vertex h = g.global(path[i + 1]);
    if (t == kNoVertex || h == kNoVertex || m_->mate(t) != h) return std::nullopt;
    arcs.push_back({t, h});
  }
  return arcs;
}

std::optional<std::vector<Arc>> PhaseState::path_to_outer(StructureId s, Vertex w) {
  const Structure& st = structures_[s];
  if (w == st.root) return std::vector<Arc>{};
  const Vertex t = m_->mate(w);
  if (t != kNoVertex && owner_[t] == s) return alternating_path_to(t).arcs;
  if (!is_outer(w) || vowner_[w] != s) return std::nullopt;
  LocalGraph g = known_subgraph({s});
  const std::size_t virt = g.add_vertex(kNoVertex);
  g.add_edge(g.local(w), virt);
  g.finalize();
  const BlossomSearch result = blossom_search(g, g.local(st.root));
  if (!result.path || result.path->back() != virt) return std::nullopt;
  auto trimmed = *result.path;
  trimmed.pop_back();
  if (trimmed.size() % 2 == 0) return std::nullopt;
  return arcs_from_local_path(g, trimmed);
}

AugPath PhaseState::alternating_path_to(Vertex tail) const {
  if (tail >= owner_.size() || owner_[tail] == kNoStructure) {
    throw std::invalid_argument("alternating_path_to: arc is not owned");
  }
  AugPath p;
  p.alpha = structures_[owner_[tail]].root;
  for (Vertex t = tail; t != kRootParent; t = parent_[t]) {
    if (t == kNoVertex || p.arcs.size() > owner_.size()) {
      throw std::logic_error("alternating_path_to: broken parent chain");
    }
    p.arcs.push_back(arc(t));
  }
  std::reverse(p.arcs.begin(), p.arcs.end());
  return p;
}

void PhaseState::apply_merge(StructureId a, StructureId b, const AugPath& path, Vertex u,
                             Vertex v) {
  auto va = vertices_of(a);
  const auto vb = vertices_of(b);
  va.insert(va.end(), vb.begin(), vb.end());
  const std::uint64_t current = edge_key(u, v);
  augment_along(*m_, path, [&](Vertex x, Vertex y) {
    return edge_key(x, y) == current || stored(x, y);
  });
  for (Vertex x : va) {
    removed_[x] = true;
    vowner_[x] = kNoStructure;
    owner_[x] = kNoStructure;
  }
  for (StructureId s : {a, b}) {
    Structure& st = structures_[s];
    st.alive = false;
    st.active = false;
    st.active_path.clear();
    st.root_children.clear();
    st.arc_count = 0;
    touch(s);
  }
  ++counters_.merges;
  notify("merge");
}

std::optional<AugPath> PhaseState::detect_merge(Vertex u, Vertex v) {
  if (removed_[u] || removed_[v] || m_->mate(u) == v) return std::nullopt;
  const StructureId su = vowner_[u];
  const StructureId sv = vowner_[v];
  if (su == kNoStructure || sv == kNoStructure || su == sv) return std::nullopt;
  if (!structures_[su].alive || !structures_[sv].alive) return std::nullopt;
  if (!is_outer(u) || !is_outer(v)) return std::nullopt;
  auto pu = path_to_outer(su, u);
  auto pv = path_to_outer(sv, v);
  if (!pu || !pv) throw std::logic_error("outer vertex without a path");
  AugPath path;
  path.alpha = structures_[su].root;
  path.arcs = std::move(*pu);
  for (auto it = pv->rbegin(); it != pv->rend(); ++it) path.arcs.push_back(it->reversed());
  path.beta = structures_[sv].root;
  apply_merge(su, sv, path, u, v);
  return path;
}

std::optional<AugPath> PhaseState::union_augmenting_path(StructureId a, StructureId b, Vertex u,
                                                         Vertex v) {
  LocalGraph g = known_subgraph({a, b});
  g.add_edge(g.local(u), g.local(v));
  g.finalize();
  const BlossomSearch result = blossom_search(g, g.local(structures_[a].root));
  if (!result.path) return std::nullopt;
  const auto& p = *result.path;
  if (g.global(p.back()) != structures_[b].root) {
    throw std::logic_error("union search reached an unexpected free vertex");
  }
  auto arcs = arcs_from_local_path(g, p);
  if (!arcs) throw std::logic_error("union search produced a non-alternating path");
  AugPath path;
  path.alpha = structures_[a].root;
  path.arcs = std::move(*arcs);
  path.beta = structures_[b].root;
  return path;
}

bool PhaseState::is_ancestor(Vertex ancestor, Vertex tail) const {
  for (Vertex t = tail; t != kRootParent && t != kNoVertex; t = parent_[t]) {
    if (t == ancestor) return true;
  }
  return false;
}

void PhaseState::overtake(StructureId beta, Vertex parent, Vertex target, std::uint32_t position) {
  const StructureId gamma = owner_[target];
  Structure& victim = structures_[gamma];
  std::vector<Vertex> suffix{target};
  auto it = std::find(victim.active_path.begin(), victim.active_path.end(), target);
  const bool active_case = it != victim.active_path.end();
  if (active_case) {
    suffix.assign(it, victim.active_path.end());
    victim.active_path.erase(it, victim.active_path.end());
    victim.overtaken_this_pass = true;
  }
  move_subtree(target, beta);
  link(target, parent, beta);
  Structure& taker = structures_[beta];
  set_label(target, position);
  for (std::size_t i = 1; i < suffix.size(); ++i) {
    const auto p = static_cast<std::uint32_t>(position + i);
    if (p < label_[suffix[i]]) set_label(suffix[i], p);
  }
  taker.active_path.insert(taker.active_path.end(), suffix.begin(), suffix.end());
  if (active_case) taker.pause_remaining = suffix.size();
  ++counters_.overtakes;
}

ExtendOutcome PhaseState::try_extend(StructureId s, Vertex w, Vertex x) {
  ExtendOutcome out;
  if (!eligible(s) || removed_[w] || removed_[x] || vowner_[w] != s || m_->mate(w) == x) {
    return out;
  }
  if (auto merged = detect_merge(w, x)) {
    out.kind = ExtendKind::kAugmentation;
    out.path = std::move(merged);
    return out;
  }
  if (m_->is_free(x)) return out;

  Structure& st = structures_[s];
  const std::size_t k = st.active_path.size();
  std::vector<Vertex> jump;
  if (w != st.head_vertex(*m_)) {
    // w must be the head of an owned arc hanging below the active head.
    const Vertex b = m_->mate(w);
    if (b == kNoVertex || owner_[b] != s) return out;
    const Vertex stop = k == 0 ? kRootParent : st.active_path.back();
    Vertex cur = b;
    while (cur != stop && cur != kRootParent) {
      jump.push_back(cur);
      cur = parent_[cur];
    }
    if (cur != stop) return out;
    std::reverse(jump.begin(), jump.end());
    for (std::size_t i = 0; i < jump.size(); ++i) {
      if (label_[jump[i]] > k + i + 1) return out;
    }
  }
  const std::size_t position = k + jump.size() + 1;
  if (position > limits_.max_path_length || position >= label_[x]) return out;

  const Vertex y = m_->mate(x);
  const StructureId owner = vowner_[x];
  const Vertex parent = !jump.empty() ? jump.back() : (k == 0 ? kRootParent : st.active_path.back());
  if (owner == kNoStructure) {
    owner_[x] = s;
    vowner_[x] = s;
    vowner_[y] = s;
    ++st.arc_count;
    link(x, parent, s);
    touch(s);
    st.active_path.insert(st.active_path.end(), jump.begin(), jump.end());
    st.active_path.push_back(x);
    set_label(x, static_cast<std::uint32_t>(position));
  } else if (owner == s) {
    // Re-route an arc of our own structure to a shorter position.
    if (owner_[x] != s || is_ancestor(x, parent)) return out;
    unlink(x);
    link(x, parent, s);
    touch(s);
    st.active_path.insert(st.active_path.end(), jump.begin(), jump.end());
    st.active_path.push_back(x);
    set_label(x, static_cast<std::uint32_t>(position));
  } else {
    if (owner_[x] != owner || !structures_[owner].alive) return out;
    if (auto path = union_augmenting_path(s, owner, w, x)) {
      apply_merge(s, owner, *path, w, x);
      out.kind = ExtendKind::kAugmentation;
      out.path = std::move(path);
      return out;
    }
    structures_[s].active_path.insert(structures_[s].active_path.end(), jump.begin(), jump.end());
    overtake(s, parent, x, static_cast<std::uint32_t>(position));
    out.overtook = true;
  }
  store_edge(w, x);
  Structure& actor = structures_[s];
  if (actor.active_path.size() > limits_.max_path_length) {
    throw std::logic_error("active path longer than the maximum length");
  }
  actor.extended_this_pass = true;
  ++counters_.extensions;
  if (!jump.empty()) ++counters_.jumps;
  out.kind = jump.empty() ? ExtendKind::kExtended : ExtendKind::kJumped;
  for (Vertex b : jump) out.jumped.push_back(arc(b));
  out.target = arc(x);
  notify(out.overtook ? "overtake" : (jump.empty() ? "extend" : "jump"));
  return out;
}

bool PhaseState::record_structure_edge(Vertex u, Vertex v) {
  if (removed_[u] || removed_[v] || m_->mate(u) == v) return false;
  const StructureId s = vowner_[u];
  if (s == kNoStructure || s != vowner_[v] || !structures_[s].alive) return false;
  if (stored(u, v)) return false;
  store_edge(u, v);
  touch(s);
  ++counters_.stored_edges;
  notify("store");
  return true;
}

void PhaseState::backtrack(StructureId s) {
  Structure& st = structures_[s];
  if (!st.alive || !st.active) return;
  if (st.active_path.empty()) {
    st.active = false;
  } else {
    st.active_path.pop_back();
  }
  ++counters_.backtracks;
  notify("backtrack");
}

void PhaseState::begin_pass() {
  for (Structure& s : structures_) {
    s.extended_this_pass = false;
    s.overtaken_this_pass = false;
  }
}

void PhaseState::set_on_hold(StructureId s, bool on_hold) { structures_[s].on_hold = on_hold; }

bool PhaseState::consume_pause(StructureId s) {
  Structure& st = structures_[s];
  st.skipping = st.pause_remaining > 0;
  if (st.skipping) --st.pause_remaining;
  return st.skipping;
}

std::string PhaseState::dump() const {
  std::ostringstream out;
  auto arc_text = [&](Vertex t) { return std::to_string(t) + ">" + std::to_string(m_->mate(t)); };
  for (StructureId id = 0; id < structures_.size(); ++id) {
    const Structure& s = structures_[id];
    out << s.root << " | ";
    if (!s.alive) {
      out << "merged\n";
      continue;
    }
    if (s.active_path.empty()) out << (s.active ? "-" : "concluded");
    for (std::size_t i = 0; i < s.active_path.size(); ++i) {
      out << (i ? " " : "") << arc_text(s.active_path[i]);
    }
    out << " | ";
    std::vector<Vertex> tails;
    for (Vertex v : vertices_of(id)) {
      if (owner_[v] == id) tails.push_back(v);
    }
    std::sort(tails.begin(), tails.end());
    if (tails.empty()) out << "-";
    for (std::size_t i = 0; i < tails.size(); ++i) {
      out << (i ? " " : "") << arc_text(tails[i]) << ":" << label_[tails[i]];
    }
    out << " | " << (s.on_hold ? 1 : 0) << " | " << s.pause_remaining << "\n";
  }
  return out.str();
}

}  // namespace semimatch
