#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mse/errors.hpp"
#include "mse/graph.hpp"

namespace mse {

// A periodic orbit of a Morse-Smale diffeomorphism of a closed orientable
// 3-manifold. `index` is the Morse index q = dim W^u of its points:
// 0 = sink, 1 or 2 = saddle, 3 = source. The orbit's `period` points are
// labeled 0..period-1 and the map sends point j to (j+1) mod period.
struct Orbit {
  std::string id;
  int period = 1;
  int index = 0;
  // Whether the period-th return exchanges the two branches of the orbit's
  // one-dimensional invariant manifold (unstable for index 1, stable for
  // index 2). Ignored for sinks and sources.
  bool separatrix_swap = false;

  bool is_sink() const { return index == 0; }
  bool is_source() const { return index == 3; }
  bool is_saddle() const { return index == 1 || index == 2; }

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

struct OrbitPoint {
  std::string orbit;
  int point = 0;

  friend auto operator<=>(const OrbitPoint&, const OrbitPoint&) = default;
};

// One intersection W^u_upper with W^s_lower, i.e. lower precedes upper in the
// Smale order. The kind is forced by the Morse indices of the endpoints:
//   - node_basin:         lower is a sink or upper is a source
//   - heteroclinic_point: saddles of equal index (a 1D branch meeting a 2D
//                         leaf transversely in isolated points)
//   - heteroclinic_curve: upper of index 2, lower of index 1 (2D meets 2D
//                         along curves)
enum class EdgeKind { node_basin, heteroclinic_point, heteroclinic_curve };

inline std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::node_basin: return "node_basin";
    case EdgeKind::heteroclinic_point: return "heteroclinic_point";
    case EdgeKind::heteroclinic_curve: return "heteroclinic_curve";
  }
  return "?";
}

inline std::optional<EdgeKind> edge_kind_from_string(std::string_view s) {
  if (s == "node_basin") return EdgeKind::node_basin;
  if (s == "heteroclinic_point") return EdgeKind::heteroclinic_point;
  if (s == "heteroclinic_curve") return EdgeKind::heteroclinic_curve;
  return std::nullopt;
}

struct IntersectionEdge {
  std::string upper;  // orbit whose unstable manifold participates
  std::string lower;  // orbit whose stable manifold participates
  EdgeKind kind = EdgeKind::node_basin;

  friend auto operator<=>(const IntersectionEdge&, const IntersectionEdge&) = default;
};

/// The edge kind a pair of Morse indices admits, or nullopt when no
/// transverse intersection W^u_upper with W^s_lower can exist at all.
inline std::optional<EdgeKind> required_edge_kind(int upper_index, int lower_index) {
  if (lower_index > upper_index) return std::nullopt;  // transversality
  if (upper_index == 0 || lower_index == 3) return std::nullopt;
  if (lower_index == 0 || upper_index == 3) return EdgeKind::node_basin;
  if (lower_index == upper_index) return EdgeKind::heteroclinic_point;
  return EdgeKind::heteroclinic_curve;  // lower 1, upper 2
}

// Limit data of one saddle point of a one-dimensional invariant manifold.
// On the attractor side `saddle` belongs to an index-1 orbit and the two
// branch lists hold the points its unstable separatrices accumulate on; the
// mirror side records index-2 orbits and their stable separatrices, read
// under the inverse map. Branch lists at consecutive points of the orbit
// must be cyclic shifts of each other, with the orbit's separatrix_swap
// applied at the period-th return.
struct SeparatrixRecord {
  OrbitPoint saddle;
  std::array<std::vector<OrbitPoint>, 2> branches;

  friend bool operator==(const SeparatrixRecord&, const SeparatrixRecord&) = default;
};

// Externally supplied embedding data for the attractor created by one saddle
// orbit: whether a tight (and strongly tight) trapping neighborhood is known,
// and the genus of some known handle trapping neighborhood.
struct EmbeddingAnnotation {
  std::string orbit;
  bool tight = false;
  bool strongly_tight = false;
  long long handle_genus_witness = 0;

  friend bool operator==(const EmbeddingAnnotation&, const EmbeddingAnnotation&) = default;
};

struct Violation {
  std::string code;
  std::string message;
  std::vector<std::string> subjects;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string code, std::string message, std::vector<std::string> subjects = {}) {
    violations.push_back({std::move(code), std::move(message), std::move(subjects)});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  bool has(std::string_view code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  }
};

// The whole combinatorial model of one Morse-Smale diffeomorphism.
struct Diagram {
  std::string name;
  std::vector<Orbit> orbits;
  std::vector<IntersectionEdge> edges;
  std::vector<SeparatrixRecord> separatrices;         // index-1 orbits, unstable side
  std::vector<SeparatrixRecord> mirror_separatrices;  // index-2 orbits, stable side
  std::vector<EmbeddingAnnotation> annotations;         // one per index-1 orbit
  std::vector<EmbeddingAnnotation> mirror_annotations;  // one per index-2 orbit
  bool no_heteroclinic_curves = true;

  std::optional<std::size_t> index_of(std::string_view id) const {
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if (orbits[i].id == id) return i;
    return std::nullopt;
  }

  const Orbit& orbit_at(std::string_view id) const {
    auto i = index_of(id);
    if (!i) throw UnknownOrbitError(std::string(id));
    return orbits[*i];
  }

  /// Period-weighted number of points of Morse index q.
  long long point_count(int q) const {
    long long n = 0;
    for (const auto& o : orbits)
      if (o.index == q) n += o.period;
    return n;
  }

  int orbit_count(int q) const {
    int n = 0;
    for (const auto& o : orbits)
      if (o.index == q) ++n;
    return n;
  }

  long long total_points() const {
    long long n = 0;
    for (const auto& o : orbits) n += o.period;
    return n;
  }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

enum class SeparatrixSide { attractor, repeller };

namespace detail {

inline int positive_mod(int a, int m) { return ((a % m) + m) % m; }

inline std::vector<OrbitPoint> normalized_targets(std::vector<OrbitPoint> targets) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  return targets;
}

/// Shifts every target one step along its own orbit (dir = +1 for the map,
/// -1 for its inverse) and re-normalizes.
inline std::vector<OrbitPoint> shifted_targets(const Diagram& d,
                                               const std::vector<OrbitPoint>& targets,
                                               int dir) {
  std::vector<OrbitPoint> out;
  out.reserve(targets.size());
  for (const auto& t : targets) {
    auto idx = d.index_of(t.orbit);
    int period = idx ? d.orbits[*idx].period : 1;
    out.push_back({t.orbit, positive_mod(t.point + dir, period)});
  }
  return normalized_targets(std::move(out));
}

}  // namespace detail

/// Per-point branch data for one saddle orbit, normalized and completed by
/// equivariance from whatever subset of points the diagram supplies.
struct CompletedBranches {
  std::vector<std::array<std::vector<OrbitPoint>, 2>> points;
};

struct SeparatrixCompletion {
  std::map<std::string, CompletedBranches> by_orbit;
  ValidationReport issues;
};

/// Propagates the provided separatrix records of every saddle orbit around the
/// orbit and checks any other provided records against the propagation. The
/// map carries the branch data of point j to point j+1 on both sides (it
/// transports limit sets forward whether the 1D manifold is stable or
/// unstable); the separatrix_swap flag acts once per cycle, at the wrap
/// period-1 -> 0. Inconsistencies are reported, not thrown.
inline SeparatrixCompletion complete_separatrices(const Diagram& d, SeparatrixSide side) {
  SeparatrixCompletion out;
  const auto& records =
      side == SeparatrixSide::attractor ? d.separatrices : d.mirror_separatrices;
  const int saddle_index = side == SeparatrixSide::attractor ? 1 : 2;
  const char* side_name = side == SeparatrixSide::attractor ? "attractor" : "repeller";

  // Group records by orbit; orbit-level structural problems disqualify the
  // orbit from completion but still produce report entries.
  std::map<std::string, std::map<int, std::array<std::vector<OrbitPoint>, 2>>> grouped;
  for (const auto& rec : records) {
    auto idx = d.index_of(rec.saddle.orbit);
    if (!idx) {
      out.issues.add("separatrix.unknown_orbit",
                     std::string(side_name) + " separatrix record names unknown orbit",
                     {rec.saddle.orbit});
      continue;
    }
    const Orbit& o = d.orbits[*idx];
    if (o.index != saddle_index) {
      out.issues.add("separatrix.side",
                     std::string(side_name) + " separatrix record needs an index-" +
                         std::to_string(saddle_index) + " orbit, got index " +
                         std::to_string(o.index),
                     {o.id});
      continue;
    }
    if (rec.saddle.point < 0 || rec.saddle.point >= o.period) {
      out.issues.add("separatrix.point_range", "saddle point outside the orbit period",
                     {o.id, std::to_string(rec.saddle.point)});
      continue;
    }
    std::array<std::vector<OrbitPoint>, 2> branches{
        detail::normalized_targets(rec.branches[0]),
        detail::normalized_targets(rec.branches[1])};
    bool usable = true;
    for (const auto& branch : branches) {
      if (branch.empty()) {
        out.issues.add("separatrix.empty_branch",
                       "a separatrix branch has an empty limit set", {o.id});
      }
      for (const auto& t : branch) {
        auto tidx = d.index_of(t.orbit);
        if (!tidx) {
          out.issues.add("separatrix.target_unknown", "separatrix target names unknown orbit",
                         {o.id, t.orbit});
          usable = false;
        } else if (t.point < 0 || t.point >= d.orbits[*tidx].period) {
          out.issues.add("separatrix.point_range", "separatrix target point outside period",
                         {o.id, t.orbit, std::to_string(t.point)});
          usable = false;
        }
      }
    }
    if (!usable) continue;
    auto [it, inserted] = grouped[o.id].try_emplace(rec.saddle.point, std::move(branches));
    if (!inserted)
      out.issues.add("separatrix.duplicate_point", "two separatrix records for the same point",
                     {o.id, std::to_string(rec.saddle.point)});
  }

  for (auto& [orbit_id, provided] : grouped) {
    const Orbit& o = *std::find_if(d.orbits.begin(), d.orbits.end(),
                                   [&](const Orbit& x) { return x.id == orbit_id; });
    CompletedBranches full;
    full.points.resize(o.period);

    const int anchor = provided.begin()->first;
    std::array<std::vector<OrbitPoint>, 2> cur = provided.begin()->second;
    full.points[anchor] = cur;
    int j = anchor;
    bool consistent = true;
    auto step_forward = [&](const std::array<std::vector<OrbitPoint>, 2>& from,
                            int at) -> std::array<std::vector<OrbitPoint>, 2> {
      std::array<std::vector<OrbitPoint>, 2> next{detail::shifted_targets(d, from[0], +1),
                                                  detail::shifted_targets(d, from[1], +1)};
      if (at == o.period - 1 && o.separatrix_swap) std::swap(next[0], next[1]);
      return next;
    };
    for (int step = 0; step + 1 < o.period; ++step) {
      const int next = (j + 1) % o.period;
      auto propagated = step_forward(cur, j);
      if (auto it = provided.find(next); it != provided.end() && it->second != propagated) {
        out.issues.add("separatrix.equivariance",
                       "separatrix records of the orbit are not shifts of each other",
                       {o.id, std::to_string(next)});
        consistent = false;
      }
      full.points[next] = propagated;
      cur = std::move(propagated);
      j = next;
    }
    // Full cycle: coming back to the anchor must reproduce it, which pins the
    // separatrix_swap flag against the target data.
    if (step_forward(cur, j) != full.points[anchor]) {
      out.issues.add("separatrix.monodromy",
                     "branch targets disagree with the separatrix_swap flag after a full period",
                     {o.id});
      consistent = false;
    }
    if (consistent) out.by_orbit.emplace(orbit_id, std::move(full));
  }
  return out;
}

namespace detail {

inline graph::Adjacency ascending_adjacency(const Diagram& d, bool* all_resolved = nullptr) {
  graph::Adjacency adj(d.orbits.size());
  if (all_resolved) *all_resolved = true;
  for (const auto& e : d.edges) {
    auto u = d.index_of(e.upper);
    auto l = d.index_of(e.lower);
    if (!u || !l || *u == *l) {
      if (all_resolved) *all_resolved = false;
      continue;
    }
    adj[*l].push_back(static_cast<int>(*u));
  }
  for (auto& out : adj) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return adj;
}

inline void validate_separatrix_semantics(const Diagram& d, SeparatrixSide side,
                                          ValidationReport& rep) {
  const auto& records =
      side == SeparatrixSide::attractor ? d.separatrices : d.mirror_separatrices;
  const int saddle_index = side == SeparatrixSide::attractor ? 1 : 2;
  for (const auto& rec : records) {
    auto sidx = d.index_of(rec.saddle.orbit);
    if (!sidx || d.orbits[*sidx].index != saddle_index) continue;  // reported by completion
    for (const auto& branch : rec.branches) {
      for (const auto& t : branch) {
        auto tidx = d.index_of(t.orbit);
        if (!tidx) continue;
        const Orbit& target = d.orbits[*tidx];
        // Branch limit sets live strictly below the saddle: on orbits of
        // smaller index, or of equal index through heteroclinic points.
        const bool index_ok = side == SeparatrixSide::attractor
                                  ? (target.index == 0 || (target.index == 1 && *tidx != *sidx))
                                  : (target.index == 3 || (target.index == 2 && *tidx != *sidx));
        if (!index_ok) {
          rep.add("separatrix.target_index",
                  "separatrix target does not lie strictly below its saddle",
                  {rec.saddle.orbit, t.orbit});
          continue;
        }
        const bool covered = std::any_of(
            d.edges.begin(), d.edges.end(), [&](const IntersectionEdge& e) {
              return side == SeparatrixSide::attractor
                         ? (e.upper == rec.saddle.orbit && e.lower == t.orbit)
                         : (e.upper == t.orbit && e.lower == rec.saddle.orbit);
            });
        if (!covered)
          rep.add("separatrix.edge_coverage",
                  "separatrix target has no matching intersection edge",
                  {rec.saddle.orbit, t.orbit});
      }
    }
  }
}

inline void validate_annotations(const Diagram& d, SeparatrixSide side, ValidationReport& rep) {
  const auto& annotations =
      side == SeparatrixSide::attractor ? d.annotations : d.mirror_annotations;
  const int saddle_index = side == SeparatrixSide::attractor ? 1 : 2;
  const char* list_name = side == SeparatrixSide::attractor ? "annotations" : "mirror_annotations";

  std::map<std::string, int> seen;
  for (const auto& a : annotations) {
    auto idx = d.index_of(a.orbit);
    if (!idx) {
      rep.add("annotation.unknown_orbit",
              std::string(list_name) + " entry names unknown orbit", {a.orbit});
      continue;
    }
    if (d.orbits[*idx].index != saddle_index) {
      rep.add("annotation.side",
              std::string(list_name) + " entry must describe an index-" +
                  std::to_string(saddle_index) + " orbit",
              {a.orbit});
      continue;
    }
    if (++seen[a.orbit] == 2)
      rep.add("annotation.duplicate", "more than one annotation for the orbit", {a.orbit});
    if (a.strongly_tight && !a.tight)
      rep.add("annotation.flags", "strongly_tight requires tight", {a.orbit});
    if (a.handle_genus_witness < 0)
      rep.add("annotation.flags", "handle_genus_witness must be non-negative", {a.orbit});
  }
  for (const auto& o : d.orbits)
    if (o.index == saddle_index && seen.find(o.id) == seen.end())
      rep.add("annotation.missing",
              "index-" + std::to_string(saddle_index) + " orbit has no annotation", {o.id});
}

}  // namespace detail

/// Checks every model invariant and returns the violations; an empty report
/// means the diagram is a consistent combinatorial Morse-Smale model.
/// Violations are data: this never throws on any input.
inline ValidationReport validate(const Diagram& d) {
  ValidationReport rep;

  // Orbit roster.
  std::map<std::string, int> id_count;
  bool roster_ok = true;
  for (const auto& o : d.orbits) {
    if (o.id.empty()) {
      rep.add("orbit.id_empty", "orbit with empty id");
      roster_ok = false;
    }
    if (++id_count[o.id] == 2) {
      rep.add("orbit.id_duplicate", "duplicate orbit id", {o.id});
      roster_ok = false;
    }
    if (o.period < 1) {
      rep.add("orbit.period", "orbit period must be at least 1", {o.id});
      roster_ok = false;
    }
    if (o.index < 0 || o.index > 3) {
      rep.add("orbit.index_range", "Morse index must lie in 0..3", {o.id});
      roster_ok = false;
    }
    if (o.separatrix_swap && (o.index == 0 || o.index == 3))
      rep.add("orbit.swap_on_node", "separatrix_swap is meaningful only for saddles", {o.id});
  }
  if (d.orbits.empty()) rep.add("orbit.none", "a diagram needs at least one orbit");
  if (!roster_ok) return rep;  // everything below keys on ids and indices

  // Intersection edges.
  bool curve_seen = false;
  for (const auto& e : d.edges) {
    auto u = d.index_of(e.upper);
    auto l = d.index_of(e.lower);
    if (!u || !l) {
      rep.add("edge.unknown_orbit", "edge endpoint names unknown orbit",
              {e.upper, e.lower});
      continue;
    }
    if (*u == *l) {
      rep.add("edge.self_loop", "edge joins an orbit to itself", {e.upper});
      continue;
    }
    auto need = required_edge_kind(d.orbits[*u].index, d.orbits[*l].index);
    if (!need) {
      rep.add("edge.index_order",
              "no transverse intersection exists for this index pair",
              {e.upper, e.lower});
      continue;
    }
    if (*need != e.kind)
      rep.add("edge.kind_mismatch",
              "edge kind must be " + std::string(to_string(*need)) + " for indices " +
                  std::to_string(d.orbits[*u].index) + " over " +
                  std::to_string(d.orbits[*l].index),
              {e.upper, e.lower});
    if (e.kind == EdgeKind::heteroclinic_curve) curve_seen = true;
  }
  if (d.no_heteroclinic_curves && curve_seen)
    rep.add("diagram.curve_flag_mismatch",
            "no_heteroclinic_curves is set but a heteroclinic_curve edge exists");
  if (!d.no_heteroclinic_curves && !curve_seen)
    rep.add("diagram.curve_flag_mismatch",
            "no_heteroclinic_curves is unset but no heteroclinic_curve edge exists");

  // Point counts. Cardinalities are period-weighted point counts.
  const long long p0 = d.point_count(0), p1 = d.point_count(1);
  const long long p2 = d.point_count(2), p3 = d.point_count(3);
  if (1 + p1 - p0 != 1 + p2 - p3)
    rep.add("diagram.duality_identity",
            "1+|W1|-|W0| = " + std::to_string(1 + p1 - p0) +
                " but 1+|W2|-|W3| = " + std::to_string(1 + p2 - p3));
  if (p0 == 0) rep.add("diagram.no_sink", "a closed manifold forces at least one sink point");
  if (p3 == 0) rep.add("diagram.no_source", "a closed manifold forces at least one source point");

  // The strict relation generated by the edges must be acyclic.
  auto adj = detail::ascending_adjacency(d);
  if (!graph::topological_order(adj)) {
    auto cyc = graph::find_cycle(adj);
    std::vector<std::string> ids;
    ids.reserve(cyc.size());
    for (int v : cyc) ids.push_back(d.orbits[v].id);
    rep.add("order.cyclic", "intersection edges generate a cyclic relation", ids);
  }

  // Separatrix records: shape and equivariance, then target semantics.
  rep.merge(complete_separatrices(d, SeparatrixSide::attractor).issues);
  rep.merge(complete_separatrices(d, SeparatrixSide::repeller).issues);
  detail::validate_separatrix_semantics(d, SeparatrixSide::attractor, rep);
  detail::validate_separatrix_semantics(d, SeparatrixSide::repeller, rep);

  detail::validate_annotations(d, SeparatrixSide::attractor, rep);
  detail::validate_annotations(d, SeparatrixSide::repeller, rep);

  return rep;
}

/// The same system read as the inverse diffeomorphism: Morse indices flip to
/// 3-q, edges reverse, the attractor and repeller data swap roles. Point
/// labels are reversed within each orbit (j -> -1-j mod period) so that the
/// inverse map again acts as j -> j+1 and the period-th-return boundary of
/// the two readings coincides. Involutive.
inline Diagram invert(const Diagram& d) {
  auto relabel_point = [&](OrbitPoint p) {
    auto idx = d.index_of(p.orbit);
    const int period = idx ? d.orbits[*idx].period : 1;
    p.point = detail::positive_mod(-1 - p.point, period);
    return p;
  };
  auto relabel_records = [&](const std::vector<SeparatrixRecord>& records) {
    std::vector<SeparatrixRecord> out;
    out.reserve(records.size());
    for (const auto& rec : records) {
      SeparatrixRecord r;
      r.saddle = relabel_point(rec.saddle);
      for (int b = 0; b < 2; ++b) {
        r.branches[b].reserve(rec.branches[b].size());
        for (const auto& t : rec.branches[b]) r.branches[b].push_back(relabel_point(t));
      }
      out.push_back(std::move(r));
    }
    return out;
  };

  Diagram out;
  out.name = d.name;
  out.orbits = d.orbits;
  for (auto& o : out.orbits) o.index = 3 - o.index;
  out.edges.reserve(d.edges.size());
  for (const auto& e : d.edges) out.edges.push_back({e.lower, e.upper, e.kind});
  out.separatrices = relabel_records(d.mirror_separatrices);
  out.mirror_separatrices = relabel_records(d.separatrices);
  out.annotations = d.mirror_annotations;
  out.mirror_annotations = d.annotations;
  out.no_heteroclinic_curves = d.no_heteroclinic_curves;
  return out;
}

}  // namespace mse
