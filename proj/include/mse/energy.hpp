#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mse/classification.hpp"
#include "mse/diagram.hpp"
#include "mse/errors.hpp"
#include "mse/filtration.hpp"
#include "mse/ordering.hpp"

namespace mse {

enum class VerdictStatus { Exists, NotExists, Unknown };

inline std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Exists: return "Exists";
    case VerdictStatus::NotExists: return "NotExists";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "?";
}

// Which rule settled the verdict:
//   necessity        — some one-dimensional attractor or repeller is not
//                      tightly embedded, so no dynamically ordered energy
//                      function can exist;
//   sufficiency      — all of them are strongly tightly embedded, which
//                      guarantees one;
//   sphere_criterion — on the 3-sphere without heteroclinic curves, tight
//                      embedding alone is equivalent to existence;
//   inconclusive     — the input falls in the gap the theory leaves open.
enum class DecisionRule { Necessity, Sufficiency, SphereCriterion, Inconclusive };

inline std::string_view to_string(DecisionRule r) {
  switch (r) {
    case DecisionRule::Necessity: return "necessity";
    case DecisionRule::Sufficiency: return "sufficiency";
    case DecisionRule::SphereCriterion: return "sphere_criterion";
    case DecisionRule::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct VerdictReason {
  DecisionRule rule = DecisionRule::Inconclusive;
  std::string witness;  // orbit id, when one orbit carries the reason
  std::string note;

  friend bool operator==(const VerdictReason&, const VerdictReason&) = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::vector<VerdictReason> reasons;

  std::string witness() const { return reasons.empty() ? std::string() : reasons.front().witness; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

namespace detail {

struct OneDimensional {
  std::string orbit;
  long long genus = 0;
  const EmbeddingAnnotation* annotation = nullptr;
};

inline std::vector<OneDimensional> one_dimensional_sets(const std::vector<AttractorData>& side,
                                                        int k0, const Numbering& numbering,
                                                        const std::vector<EmbeddingAnnotation>& annotations) {
  std::vector<OneDimensional> out;
  for (int i = k0 + 1; i <= static_cast<int>(side.size()); ++i) {
    OneDimensional entry;
    entry.orbit = numbering.order[static_cast<std::size_t>(i - 1)];
    entry.genus = side[static_cast<std::size_t>(i - 1)].g;
    entry.annotation = find_annotation(annotations, entry.orbit);
    if (!entry.annotation) throw IncompleteAnnotationsError(entry.orbit);
    out.push_back(entry);
  }
  return out;
}

}  // namespace detail

/// Decides whether a dynamically ordered energy function exists. An untight
/// one-dimensional attractor or repeller rules it out; strong tightness
/// everywhere establishes it; on a heteroclinic-curve-free sphere diagram
/// plain tightness is already equivalent. Everything else is Unknown — the
/// theory genuinely leaves that gap, and the tool does not guess.
inline Verdict decide(const Diagram& d, const Filtration& f,
                      std::optional<ManifoldClass> manifold = std::nullopt) {
  auto attractors =
      detail::one_dimensional_sets(f.attractors, f.k0, f.numbering, d.annotations);
  auto repellers =
      detail::one_dimensional_sets(f.repellers, f.mirror_k0, f.induced, d.mirror_annotations);
  std::vector<detail::OneDimensional> all;
  all.insert(all.end(), attractors.begin(), attractors.end());
  all.insert(all.end(), repellers.begin(), repellers.end());

  Verdict verdict;
  for (const auto& entry : all) {
    if (!entry.annotation->tight)
      verdict.reasons.push_back({DecisionRule::Necessity, entry.orbit,
                                 "one-dimensional set is not tightly embedded"});
  }
  if (!verdict.reasons.empty()) {
    verdict.status = VerdictStatus::NotExists;
    return verdict;
  }

  if (std::all_of(all.begin(), all.end(), [](const detail::OneDimensional& e) {
        return e.annotation->strongly_tight;
      })) {
    verdict.status = VerdictStatus::Exists;
    verdict.reasons.push_back({DecisionRule::Sufficiency, "",
                               "every one-dimensional attractor and repeller is strongly "
                               "tightly embedded"});
    return verdict;
  }

  if (d.no_heteroclinic_curves) {
    if (!manifold) {
      try {
        manifold = classify(d);
      } catch (const NotApplicableError&) {
        manifold = std::nullopt;
      }
    }
    if (manifold && manifold->is_sphere()) {
      // All tight here. The count criterion forces every g_i to vanish on the
      // sphere; data that disagrees is not a realizable system.
      for (const auto& entry : all)
        if (entry.genus != 0)
          throw InconsistentDataError("sphere diagram with non-zero genus g = " +
                                      std::to_string(entry.genus) + " at orbit " + entry.orbit);
      verdict.status = VerdictStatus::Exists;
      verdict.reasons.push_back({DecisionRule::SphereCriterion, "",
                                 "tightly embedded throughout on a heteroclinic-curve-free "
                                 "sphere diagram"});
      return verdict;
    }
  }

  verdict.status = VerdictStatus::Unknown;
  auto gap = std::find_if(all.begin(), all.end(), [](const detail::OneDimensional& e) {
    return !e.annotation->strongly_tight;
  });
  verdict.reasons.push_back(
      {DecisionRule::Inconclusive, gap == all.end() ? "" : gap->orbit,
       d.no_heteroclinic_curves
           ? "tight but not strongly tight embeddings outside the sphere criterion"
           : "tight but not strongly tight embeddings with heteroclinic curves present"});
  return verdict;
}

struct CriticalLevel {
  int value = 0;
  std::string orbit;
  int morse_index = 0;

  friend bool operator==(const CriticalLevel&, const CriticalLevel&) = default;
};

struct RegularBand {
  int below = 0;  // the band sits between levels `below` and `below + 1`
  long long components = 0;
  long long genus = 0;

  friend bool operator==(const RegularBand&, const RegularBand&) = default;
};

// Symbolic description of the dynamically ordered energy function the
// construction produces: each orbit is a critical level at its number with
// its Morse index, and every regular band between consecutive levels carries
// the component count and total genus of its level surface. Below the
// splitting level the surface bounds an attractor neighborhood, above it a
// repeller neighborhood of the inverse map.
struct EnergyCertificate {
  std::vector<CriticalLevel> critical_levels;
  std::vector<RegularBand> regular_bands;
  int splitting_level = 0;     // k1
  long long splitting_genus = 0;  // g_k1

  friend bool operator==(const EnergyCertificate&, const EnergyCertificate&) = default;
};

/// Emits the certificate for a diagram whose verdict is Exists; throws
/// NotApplicableError otherwise.
inline EnergyCertificate build_certificate(const Diagram& d, const Numbering& numbering,
                                           const Filtration& f) {
  const Verdict verdict = decide(d, f);
  if (verdict.status != VerdictStatus::Exists)
    throw NotApplicableError("certificate requires an Exists verdict, got " +
                             std::string(to_string(verdict.status)));

  EnergyCertificate cert;
  const int n = static_cast<int>(numbering.size());
  cert.critical_levels.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const std::string& id = numbering.order[static_cast<std::size_t>(i - 1)];
    cert.critical_levels.push_back({i, id, d.orbit_at(id).index});
  }
  cert.splitting_level = f.k1;
  cert.splitting_genus = f.attractors.empty() ? 0 : f.attractors.back().g;

  for (int i = 1; i < n; ++i) {
    RegularBand band;
    band.below = i;
    if (i <= f.k1) {
      const AttractorData& row = f.attractors[static_cast<std::size_t>(i - 1)];
      band.components = row.c;
      band.genus = row.g;
    } else {
      const AttractorData& row = f.repellers[static_cast<std::size_t>(n - i - 1)];
      band.components = row.c;
      band.genus = row.g;
    }
    cert.regular_bands.push_back(band);
  }

  // The splitting band is described from both sides at once; the two
  // descriptions must agree for the certificate to make sense.
  if (!f.attractors.empty() && !f.repellers.empty() &&
      f.attractors.back().g != f.repellers.back().g)
    throw InconsistentDataError("attractor and repeller genera disagree at the splitting level");
  return cert;
}

/// The combinatorial shadow of the Lyapunov inequality: levels must strictly
/// descend along the Smale order and along every separatrix. Violations are
/// data; an empty report certifies the schedule.
inline ValidationReport check_lyapunov_schedule(const Diagram& d, const EnergyCertificate& cert,
                                                const OrderRelation& order) {
  ValidationReport rep;

  std::map<std::string, int> level;
  for (const auto& c : cert.critical_levels) {
    if (!level.emplace(c.orbit, c.value).second)
      rep.add("schedule.levels", "orbit appears at two critical levels", {c.orbit});
  }
  if (cert.critical_levels.size() != d.orbits.size())
    rep.add("schedule.levels", "certificate must list every orbit exactly once");
  for (const auto& c : cert.critical_levels) {
    auto idx = d.index_of(c.orbit);
    if (!idx) {
      rep.add("schedule.levels", "certificate names unknown orbit", {c.orbit});
      continue;
    }
    if (d.orbits[*idx].index != c.morse_index)
      rep.add("schedule.levels", "critical level Morse index disagrees with the orbit",
              {c.orbit});
  }

  for (std::size_t l = 0; l < order.size(); ++l) {
    for (std::size_t u = 0; u < order.size(); ++u) {
      if (!order.precedes(l, u)) continue;
      auto lv = level.find(order.ids()[l]);
      auto uv = level.find(order.ids()[u]);
      if (lv == level.end() || uv == level.end()) continue;
      if (!(lv->second < uv->second))
        rep.add("schedule.order_descent",
                "level of " + order.ids()[l] + " must lie below level of " + order.ids()[u],
                {order.ids()[l], order.ids()[u]});
    }
  }

  auto sweep = [&](const std::vector<SeparatrixRecord>& records, bool descending) {
    for (const auto& rec : records) {
      auto sv = level.find(rec.saddle.orbit);
      if (sv == level.end()) continue;
      for (const auto& branch : rec.branches) {
        for (const auto& t : branch) {
          auto tv = level.find(t.orbit);
          if (tv == level.end()) continue;
          const bool ok = descending ? tv->second < sv->second : tv->second > sv->second;
          if (!ok)
            rep.add("schedule.separatrix_descent",
                    "separatrix of " + rec.saddle.orbit + " reaches " + t.orbit +
                        " on the wrong side of its level",
                    {rec.saddle.orbit, t.orbit});
        }
      }
    }
  };
  sweep(d.separatrices, /*descending=*/true);
  sweep(d.mirror_separatrices, /*descending=*/false);
  return rep;
}

}  // namespace mse
