#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "semimatch/local_search.hpp"
#include "semimatch/matching.hpp"

namespace semimatch {

using StructureId = std::uint32_t;
inline constexpr StructureId kNoStructure = std::numeric_limits<StructureId>::max();
inline constexpr std::uint32_t kInfLabel = std::numeric_limits<std::uint32_t>::max();

/// Owned matched arcs are identified by their tail vertex: arc(t) = (t, mate(t)).
/// Each owned arc has one parent (another owned arc's tail, or kRootParent
/// meaning the structure's root), so a structure is an in-tree of arcs and
/// the parent chain of any arc spells an alternating path from the root.
inline constexpr Vertex kRootParent = kNoVertex - 1;

struct Structure {
  Vertex root = kNoVertex;
  /// Tails of the active path arcs a_1..a_k.
  std::vector<Vertex> active_path;
  std::vector<Vertex> root_children;
  std::size_t arc_count = 0;
  bool alive = true;
  /// False once the trivial path was backtracked.
  bool active = true;
  bool on_hold = false;
  std::uint64_t pause_remaining = 0;
  /// Set for the bundle in which a pause is being served.
  bool skipping = false;
  /// Per-pass flags read by the backtrack guard.
  bool extended_this_pass = false;
  bool overtaken_this_pass = false;
  /// Bumped on every change to the vertex set or its stored edges.
  std::uint64_t version = 0;

  /// Vertices including the root.
  std::size_t vertex_count() const { return 1 + 2 * arc_count; }
  /// Vertex at the end of the active path.
  Vertex head_vertex(const Matching& m) const;
};

enum class ExtendKind { kNone, kExtended, kJumped, kAugmentation };

struct ExtendOutcome {
  ExtendKind kind = ExtendKind::kNone;
  /// b_1..b_h for a jump.
  std::vector<Arc> jumped;
  /// a* for extended / jumped.
  Arc target;
  /// Set when a* was taken from another structure.
  bool overtook = false;
  /// The applied path for an augmentation.
  std::optional<AugPath> path;
};

struct ForestLimits {
  std::uint32_t max_path_length = 1;
  std::uint64_t hold_limit = 1;
};

struct ForestCounters {
  std::uint64_t extensions = 0;
  std::uint64_t jumps = 0;
  std::uint64_t overtakes = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t merges = 0;
  std::uint64_t stored_edges = 0;
};

/// Mutable state of one phase. The matching is held by reference and
/// augmentations are applied to it as soon as they are found.
class PhaseState {
 public:
  PhaseState(Matching& m, ForestLimits limits);

  const Matching& matching() const { return *m_; }
  const ForestLimits& limits() const { return limits_; }
  std::size_t vertex_count() const { return label_.size(); }

  const std::vector<Structure>& structures() const { return structures_; }
  const Structure& structure(StructureId s) const { return structures_[s]; }
  /// Structure owning vertex v (root or arc endpoint), or kNoStructure.
  StructureId vertex_owner(Vertex v) const { return vowner_[v]; }
  /// Owner of arc(t), or kNoStructure.
  StructureId arc_owner(Vertex tail) const { return owner_[tail]; }
  Vertex parent(Vertex tail) const { return parent_[tail]; }
  const std::vector<Vertex>& children(Vertex tail) const { return children_[tail]; }
  std::uint32_t label(Vertex tail) const { return label_[tail]; }
  bool removed(Vertex v) const { return removed_[v]; }
  bool is_root(Vertex v) const { return root_of_[v] != kNoStructure; }

  bool stored(Vertex u, Vertex v) const;
  std::size_t stored_count() const { return stored_.size(); }
  const std::vector<Vertex>& stored_neighbors(Vertex v) const { return stored_adj_[v]; }

  /// Alive, not concluded, not paused, and not on hold unless holds are ignored.
  bool eligible(StructureId s) const;
  /// Alive structures that have not concluded.
  std::size_t active_count() const;
  std::size_t owned_arc_count() const;
  std::size_t active_path_entries() const;

  /// Vertex is reachable from its structure's root by an even alternating
  /// path inside the structure's known subgraph.
  bool is_outer(Vertex v);
  /// Matched arcs of an alternating path from the root of s ending at outer
  /// vertex w, inside s. Empty when w is the root.
  std::optional<std::vector<Arc>> path_to_outer(StructureId s, Vertex w);
  /// Chain of parent links from the owning root down to arc(tail).
  /// Throws std::invalid_argument when the arc is unowned.
  AugPath alternating_path_to(Vertex tail) const;

  /// ExtendStructures handling of one streamed unmatched edge by actor s,
  /// entering through its vertex w towards x.
  ExtendOutcome try_extend(StructureId s, Vertex w, Vertex x);
  /// Merge over {u, v} when both ends are outer in different alive structures.
  std::optional<AugPath> detect_merge(Vertex u, Vertex v);
  /// AugmentStructures: store {u, v} when both ends lie in one structure.
  bool record_structure_edge(Vertex u, Vertex v);
  void backtrack(StructureId s);

  /// Bundle-boundary bookkeeping.
  void begin_pass();
  void set_on_hold(StructureId s, bool on_hold);
  /// Returns true when s was paused and consumed one bundle of its pause.
  bool consume_pause(StructureId s);
  void set_ignore_holds(bool ignore) { ignore_holds_ = ignore; }

  const ForestCounters& counters() const { return counters_; }
  std::size_t augmentations() const { return counters_.merges; }

  /// Called after every mutation with a short event name.
  std::function<void(PhaseState&, const char*)> observer;

  /// One line per structure: "root | active-path | owned-arcs | on_hold | pause".
  std::string dump() const;

 private:
  Arc arc(Vertex tail) const { return {tail, m_->mate(tail)}; }
  void notify(const char* event);
  void touch(StructureId s);
  void store_edge(Vertex u, Vertex v);
  void set_label(Vertex tail, std::uint32_t value);
  void unlink(Vertex tail);
  void link(Vertex tail, Vertex parent, StructureId s);
  std::vector<Vertex> subtree(Vertex tail) const;
  void move_subtree(Vertex tail, StructureId to);
  std::vector<Vertex> vertices_of(StructureId s) const;
  void refresh_outer(StructureId s);
  LocalGraph known_subgraph(const std::vector<StructureId>& members) const;
  std::optional<AugPath> union_augmenting_path(StructureId a, StructureId b, Vertex u, Vertex v);
  void apply_merge(StructureId a, StructureId b, const AugPath& path, Vertex u, Vertex v);
  bool is_ancestor(Vertex ancestor, Vertex tail) const;
  void overtake(StructureId beta, Vertex parent, Vertex target, std::uint32_t position);
  std::optional<std::vector<Arc>> arcs_from_local_path(const LocalGraph& g,
                                                       const std::vector<std::size_t>& path) const;

  Matching* m_;
  ForestLimits limits_;
  std::vector<Structure> structures_;
  std::vector<StructureId> vowner_;
  std::vector<StructureId> owner_;
  std::vector<StructureId> root_of_;
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<std::uint32_t> label_;
  std::vector<bool> removed_;
  std::unordered_set<std::uint64_t> stored_;
  std::vector<std::vector<Vertex>> stored_adj_;
  std::vector<bool> outer_;
  std::vector<std::uint64_t> outer_version_;
  ForestCounters counters_;
  bool ignore_holds_ = false;
};

/// Fresh phase: one structure per free vertex, all labels infinite,
/// nothing stored.
PhaseState init_phase(Matching& m, ForestLimits limits);

}  // namespace semimatch
