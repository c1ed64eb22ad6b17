#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mse/diagram.hpp"
#include "mse/errors.hpp"
#include "mse/ordering.hpp"
#include "mse/union_find.hpp"

namespace mse {

// One row of the attractor filtration: the union of the unstable manifolds of
// the first i orbits, with c connected components, r saddle points and s sink
// points (period-weighted), and genus g = c + r - s of its minimal handle
// trapping neighborhood.
struct AttractorData {
  int i = 0;
  std::vector<std::string> orbit_ids;
  long long c = 0;
  long long r = 0;
  long long s = 0;
  long long g = 0;

  friend bool operator==(const AttractorData&, const AttractorData&) = default;
};

struct Filtration {
  std::vector<AttractorData> attractors;  // rows 1..k1
  std::vector<AttractorData> repellers;   // rows 1..mirror_k1, inverse map
  int k0 = 0;         // number of sink orbits
  int k1 = 0;         // k0 + number of index-1 orbits
  int mirror_k0 = 0;  // number of source orbits
  int mirror_k1 = 0;  // total orbits - k1
  int total_orbits = 0;
  Numbering numbering;
  Numbering induced;

  friend bool operator==(const Filtration&, const Filtration&) = default;
};

namespace detail {

/// Rows of one side of the filtration. `ids` lists the node orbits followed by
/// the saddle orbits in filtration order; components are counted on the
/// point-level incidence graph whose edges join each saddle point to the
/// points its branches accumulate on.
inline std::vector<AttractorData> build_side(const Diagram& d,
                                             const std::vector<std::string>& ids,
                                             int node_index, int saddle_index,
                                             const SeparatrixCompletion& completion) {
  // Flat point numbering across the orbits of this side.
  std::unordered_map<std::string, std::size_t> offset;
  std::unordered_map<std::string, std::size_t> position;
  std::size_t total = 0;
  for (const auto& id : ids) {
    position.emplace(id, position.size());
    offset.emplace(id, total);
    total += static_cast<std::size_t>(d.orbit_at(id).period);
  }

  UnionFind uf(total);
  std::vector<AttractorData> rows;
  rows.reserve(ids.size());
  long long components = 0, saddle_points = 0, node_points = 0;
  std::vector<std::string> prefix;
  prefix.reserve(ids.size());

  for (const auto& id : ids) {
    const Orbit& o = d.orbit_at(id);
    prefix.push_back(id);
    components += o.period;
    if (o.index == node_index) {
      node_points += o.period;
    } else if (o.index == saddle_index) {
      saddle_points += o.period;
      auto it = completion.by_orbit.find(id);
      if (it == completion.by_orbit.end()) throw MissingSeparatrixDataError(id);
      const std::size_t base = offset.at(id);
      for (int p = 0; p < o.period; ++p) {
        for (const auto& branch : it->second.points[p]) {
          for (const auto& t : branch) {
            // Targets must already belong to the union: the numbering has to
            // place them strictly before this saddle.
            auto target = position.find(t.orbit);
            if (target == position.end() || target->second >= position.at(id))
              throw InconsistentDataError("separatrix target " + t.orbit +
                                          " does not precede orbit " + id +
                                          " in the filtration");
            if (uf.unite(base + p, offset.at(t.orbit) + t.point)) --components;
          }
        }
      }
    } else {
      throw std::invalid_argument("orbit " + id + " does not belong to this filtration side");
    }
    AttractorData row;
    row.i = static_cast<int>(prefix.size());
    row.orbit_ids = prefix;
    row.c = components;
    row.r = saddle_points;
    row.s = node_points;
    row.g = components + saddle_points - node_points;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<std::string> side_prefix(const Diagram& d, const Numbering& numbering,
                                            int node_index, int saddle_index) {
  const int nodes = d.orbit_count(node_index);
  const int saddles = d.orbit_count(saddle_index);
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(nodes + saddles));
  for (int i = 0; i < nodes + saddles; ++i) {
    const std::string& id = numbering.order[static_cast<std::size_t>(i)];
    const Orbit& o = d.orbit_at(id);
    const int want = i < nodes ? node_index : saddle_index;
    if (o.index != want)
      throw std::invalid_argument("numbering is not sorted by Morse index at position " +
                                  std::to_string(i + 1));
    ids.push_back(id);
  }
  return ids;
}

}  // namespace detail

/// Builds the attractor filtration A_1 c ... c A_k1 and its repeller mirror
/// (the attractors of the inverse map under the induced numbering).
/// Throws MissingSeparatrixDataError when a saddle orbit in range has no
/// separatrix records.
inline Filtration build_filtration(const Diagram& d, const Numbering& numbering) {
  if (numbering.size() != d.orbits.size())
    throw std::invalid_argument("numbering size does not match the diagram");

  Filtration f;
  f.numbering = numbering;
  f.induced = induced_inverse_numbering(numbering);
  f.total_orbits = static_cast<int>(d.orbits.size());
  f.k0 = d.orbit_count(0);
  f.k1 = f.k0 + d.orbit_count(1);
  f.mirror_k0 = d.orbit_count(3);
  f.mirror_k1 = f.total_orbits - f.k1;

  const auto attractor_ids = detail::side_prefix(d, numbering, 0, 1);
  const auto repeller_ids = detail::side_prefix(d, f.induced, 3, 2);
  f.attractors = detail::build_side(d, attractor_ids, 0, 1,
                                    complete_separatrices(d, SeparatrixSide::attractor));
  f.repellers = detail::build_side(d, repeller_ids, 3, 2,
                                   complete_separatrices(d, SeparatrixSide::repeller));
  return f;
}

struct MonotonicityRow {
  std::string side;  // "attractor" or "repeller"
  int i = 0;
  long long g_i = 0;
  long long g_next = 0;
  bool genus_ok = true;    // g_{i+1} >= g_i
  bool premise_ok = true;  // c_i - c_{i+1} <= r_{i+1} - r_i

  friend bool operator==(const MonotonicityRow&, const MonotonicityRow&) = default;
};

/// Genus growth along the one-dimensional part of the filtration, for both
/// sides. A premise violation flags separatrix data no diffeomorphism can
/// produce (one saddle point can merge at most two components).
inline std::vector<MonotonicityRow> genus_monotonicity_report(const Filtration& f) {
  std::vector<MonotonicityRow> rows;
  auto sweep = [&rows](const std::vector<AttractorData>& side, int k0, const char* name) {
    for (int i = k0; i + 1 <= static_cast<int>(side.size()); ++i) {
      if (i < 1) continue;
      const AttractorData& a = side[static_cast<std::size_t>(i - 1)];
      const AttractorData& b = side[static_cast<std::size_t>(i)];
      MonotonicityRow row;
      row.side = name;
      row.i = i;
      row.g_i = a.g;
      row.g_next = b.g;
      row.genus_ok = b.g >= a.g;
      row.premise_ok = a.c - b.c <= b.r - a.r;
      rows.push_back(std::move(row));
    }
  };
  sweep(f.attractors, f.k0, "attractor");
  sweep(f.repellers, f.mirror_k0, "repeller");
  return rows;
}

/// Structural identities of a built filtration. A violation signals input
/// that cannot come from a diffeomorphism (for instance a disconnected top
/// attractor) or an internal counting bug (the Euler identity is the genus
/// definition rearranged and must hold on every row).
inline ValidationReport filtration_consistency(const Filtration& f) {
  ValidationReport rep;
  auto sweep = [&rep](const std::vector<AttractorData>& side, int k0, const char* name) {
    for (std::size_t j = 0; j < side.size(); ++j) {
      const AttractorData& row = side[j];
      if (row.c - row.g != row.s - row.r)
        rep.add("filtration.euler_identity",
                std::string(name) + " row " + std::to_string(row.i) +
                    " violates c - g = s - r");
      if (row.i <= k0 && (row.g != 0 || row.c != row.s))
        rep.add("filtration.zero_dim_genus",
                std::string(name) + " row " + std::to_string(row.i) +
                    " is zero-dimensional and must have g = 0, c = s");
      if (j > 0) {
        const AttractorData& prev = side[j - 1];
        if (row.r < prev.r || row.s < prev.s)
          rep.add("filtration.monotone_counts",
                  std::string(name) + " point counts must be non-decreasing at row " +
                      std::to_string(row.i));
        if (row.i > k0 && row.c > prev.c)
          rep.add("filtration.monotone_counts",
                  std::string(name) + " component count must not grow at row " +
                      std::to_string(row.i));
      }
    }
  };
  sweep(f.attractors, f.k0, "attractor");
  sweep(f.repellers, f.mirror_k0, "repeller");

  if (!f.attractors.empty() && f.attractors.back().c != 1)
    rep.add("filtration.disconnected_attractor",
            "the top attractor A_k1 must be connected, got " +
                std::to_string(f.attractors.back().c) + " components");
  if (!f.repellers.empty() && f.repellers.back().c != 1)
    rep.add("filtration.disconnected_repeller",
            "the top repeller must be connected, got " +
                std::to_string(f.repellers.back().c) + " components");
  if (!f.attractors.empty() && !f.repellers.empty() &&
      f.attractors.back().g != f.repellers.back().g)
    rep.add("filtration.mirror_genus",
            "g_k1 = " + std::to_string(f.attractors.back().g) +
                " must equal the mirror genus " + std::to_string(f.repellers.back().g));
  return rep;
}

namespace detail {

inline const EmbeddingAnnotation* find_annotation(const std::vector<EmbeddingAnnotation>& list,
                                                  const std::string& orbit) {
  for (const auto& a : list)
    if (a.orbit == orbit) return &a;
  return nullptr;
}

}  // namespace detail

/// Checks the embedding annotations against the computed genus of each
/// one-dimensional attractor and repeller: a handle neighborhood can never
/// have genus below g_i, and a tight one has genus exactly g_i.
inline ValidationReport annotation_consistency(const Diagram& d, const Filtration& f) {
  ValidationReport rep;
  auto sweep = [&](const std::vector<AttractorData>& side, int k0, const Numbering& numbering,
                   const std::vector<EmbeddingAnnotation>& annotations, const char* name) {
    for (int i = k0 + 1; i <= static_cast<int>(side.size()); ++i) {
      const std::string& orbit = numbering.order[static_cast<std::size_t>(i - 1)];
      const long long g = side[static_cast<std::size_t>(i - 1)].g;
      const EmbeddingAnnotation* a = detail::find_annotation(annotations, orbit);
      if (!a) {
        rep.add("annotation.missing",
                std::string(name) + " orbit has no embedding annotation", {orbit});
        continue;
      }
      if (a->strongly_tight && !a->tight)
        rep.add("annotation.flags", "strongly_tight requires tight", {orbit});
      if (a->handle_genus_witness < g)
        rep.add("annotation.witness_below_genus",
                "handle neighborhood genus " + std::to_string(a->handle_genus_witness) +
                    " is below g_i = " + std::to_string(g),
                {orbit});
      if (a->tight && a->handle_genus_witness != g)
        rep.add("annotation.tight_witness",
                "tight neighborhood must have genus exactly g_i = " + std::to_string(g),
                {orbit});
    }
  };
  sweep(f.attractors, f.k0, f.numbering, d.annotations, "attractor");
  sweep(f.repellers, f.mirror_k0, f.induced, d.mirror_annotations, "repeller");
  return rep;
}

}  // namespace mse
