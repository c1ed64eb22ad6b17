#pragma once

#include <string>

#include "mse/diagram.hpp"
#include "mse/errors.hpp"

namespace mse {

// Topology of the ambient manifold of a heteroclinic-curve-free system:
// the 3-sphere when m = 0, otherwise the connected sum of m copies of
// S^2 x S^1, where m = (r - l + 2) / 2 for r saddle and l node points.
struct ManifoldClass {
  long long m = 0;

  bool is_sphere() const { return m == 0; }
  std::string class_name() const { return is_sphere() ? "Sphere3" : "ConnectedSumS2xS1"; }
  std::string describe() const {
    if (is_sphere()) return "the 3-sphere";
    return "the connected sum of " + std::to_string(m) + (m == 1 ? " copy" : " copies") +
           " of S2 x S1";
  }

  friend bool operator==(const ManifoldClass&, const ManifoldClass&) = default;
};

/// Classifies the ambient manifold from the point counts. Throws
/// NotApplicableError when heteroclinic curves are present (the count
/// criterion says nothing there) and InconsistentDataError when m comes out
/// negative or fractional, which no realizable system produces.
inline ManifoldClass classify(const Diagram& d) {
  const bool curves =
      !d.no_heteroclinic_curves ||
      std::any_of(d.edges.begin(), d.edges.end(), [](const IntersectionEdge& e) {
        return e.kind == EdgeKind::heteroclinic_curve;
      });
  if (curves) throw NotApplicableError("the diagram has heteroclinic curves");

  const long long saddles = d.point_count(1) + d.point_count(2);
  const long long nodes = d.point_count(0) + d.point_count(3);
  const long long twice_m = saddles - nodes + 2;
  if (twice_m < 0)
    throw InconsistentDataError("saddle/node counts give negative m = (r - l + 2)/2");
  if (twice_m % 2 != 0)
    throw InconsistentDataError("saddle/node counts give fractional m = (r - l + 2)/2");
  return ManifoldClass{twice_m / 2};
}

}  // namespace mse
