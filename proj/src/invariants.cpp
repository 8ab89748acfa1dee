#include "semimatch/invariants.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace semimatch {
namespace {

std::string arc_name(Vertex t, Vertex h) {
  return "(" + std::to_string(t) + "," + std::to_string(h) + ")";
}

}  // namespace

std::vector<std::string> check_invariants(PhaseState& state, InvariantTracker& tracker) {
  std::vector<std::string> out;
  ++tracker.checks;
  const Matching& m = state.matching();
  const std::size_t n = state.vertex_count();
  const auto& structures = state.structures();

  // Disjointness: every vertex is claimed by at most one structure, and the
  // claim agrees with the vertex owner table.
  std::vector<StructureId> claim(n, kNoStructure);
  auto claim_vertex = [&](Vertex v, StructureId s) {
    if (claim[v] != kNoStructure && claim[v] != s) {
      out.push_back("vertex " + std::to_string(v) + " in structures rooted at " +
                    std::to_string(structures[claim[v]].root) + " and " +
                    std::to_string(structures[s].root));
    }
    claim[v] = s;
  };
  for (StructureId s = 0; s < structures.size(); ++s) {
    if (structures[s].alive) claim_vertex(structures[s].root, s);
  }
  for (Vertex t = 0; t < n; ++t) {
    const StructureId s = state.arc_owner(t);
    if (s == kNoStructure) continue;
    const Vertex h = m.mate(t);
    if (h == kNoVertex) {
      out.push_back("owned arc at free vertex " + std::to_string(t));
      continue;
    }
    if (!structures[s].alive) out.push_back("arc " + arc_name(t, h) + " owned by a merged structure");
    if (state.arc_owner(h) != kNoStructure) {
      out.push_back("both " + arc_name(t, h) + " and its reverse are owned");
    }
    claim_vertex(t, s);
    claim_vertex(h, s);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (claim[v] != state.vertex_owner(v)) {
      out.push_back("owner table disagrees at vertex " + std::to_string(v));
    }
    if (claim[v] != kNoStructure && state.removed(v)) {
      out.push_back("removed vertex " + std::to_string(v) + " still owned");
    }
  }

  // Connectivity: each owned arc has a parent chain that spells a simple
  // alternating path from its root over stored connectors.
  for (Vertex t = 0; t < n; ++t) {
    const StructureId s = state.arc_owner(t);
    if (s == kNoStructure) continue;
    AugPath p;
    try {
      p = state.alternating_path_to(t);
    } catch (const std::exception& e) {
      out.push_back("arc at " + std::to_string(t) + ": " + e.what());
      continue;
    }
    std::unordered_set<Vertex> seen{p.alpha};
    Vertex prev = p.alpha;
    for (const Arc& a : p.arcs) {
      if (state.arc_owner(a.tail) != s) {
        out.push_back("path to " + std::to_string(t) + " leaves its structure at " +
                      arc_name(a.tail, a.head));
      }
      if (m.mate(a.tail) != a.head) out.push_back("path arc " + arc_name(a.tail, a.head) + " unmatched");
      if (!seen.insert(a.tail).second || !seen.insert(a.head).second) {
        out.push_back("path to " + std::to_string(t) + " repeats a vertex");
      }
      if (!state.stored(prev, a.tail)) {
        out.push_back("connector {" + std::to_string(prev) + "," + std::to_string(a.tail) +
                      "} not stored");
      }
      prev = a.head;
    }
  }

  // Active paths, the jumping rule and the size bound.
  const std::uint32_t max_len = state.limits().max_path_length;
  for (StructureId s = 0; s < structures.size(); ++s) {
    const Structure& st = structures[s];
    if (!st.alive) continue;
    const auto& path = st.active_path;
    const std::string who = "structure " + std::to_string(st.root);
    if (path.size() > max_len) {
      out.push_back(who + ": active path length " + std::to_string(path.size()) + " > " +
                    std::to_string(max_len));
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Vertex t = path[i];
      const auto pos = static_cast<std::uint32_t>(i + 1);
      if (state.arc_owner(t) != s) {
        out.push_back(who + ": active arc at " + std::to_string(t) + " not owned");
        continue;
      }
      const Vertex expected_parent = i == 0 ? kRootParent : path[i - 1];
      if (state.parent(t) != expected_parent) {
        out.push_back(who + ": active path is not a parent chain at " + std::to_string(t));
      }
      if (state.label(t) > pos) {
        out.push_back(who + ": label " + std::to_string(state.label(t)) + " of a_" +
                      std::to_string(pos) + " exceeds its position");
      }
      if (pos > state.label(t)) {
        const Vertex h = m.mate(t);
        if (state.label(h) == kInfLabel && !state.is_outer(t)) {
          out.push_back(who + ": jumping rule fails at a_" + std::to_string(pos) + " " +
                        arc_name(t, h) + " with label " + std::to_string(state.label(t)));
        }
      }
    }
    const std::uint64_t size = st.vertex_count();
    tracker.max_structure_vertices = std::max(tracker.max_structure_vertices, size);
    if (tracker.size_bound != 0 && size > tracker.size_bound) {
      out.push_back(who + ": " + std::to_string(size) + " vertices exceeds the size bound " +
                    std::to_string(tracker.size_bound));
    }
  }

  // Labels only decrease within a phase.
  if (tracker.previous_labels.size() != n) tracker.previous_labels.assign(n, kInfLabel);
  for (Vertex t = 0; t < n; ++t) {
    if (state.label(t) > tracker.previous_labels[t]) {
      out.push_back("label of arc at " + std::to_string(t) + " rose from " +
                    std::to_string(tracker.previous_labels[t]) + " to " +
                    std::to_string(state.label(t)));
    }
    tracker.previous_labels[t] = state.label(t);
  }
  return out;
}

}  // namespace semimatch
