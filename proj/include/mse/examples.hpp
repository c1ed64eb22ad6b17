#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mse/diagram.hpp"

namespace mse {

/// One fixed sink, one fixed source, the whole sphere flowing between them.
inline Diagram make_north_south() {
  Diagram d;
  d.name = "north-south";
  d.orbits = {{"w", 1, 0, false}, {"a", 1, 3, false}};
  d.edges = {{"a", "w", EdgeKind::node_basin}};
  d.no_heteroclinic_curves = true;
  return d;
}

namespace detail {

inline Diagram make_pixton_base(bool tight, bool strongly_tight) {
  Diagram d;
  d.orbits = {{"w1", 1, 0, false}, {"w2", 1, 0, false}, {"s", 1, 1, false}, {"a", 1, 3, false}};
  d.edges = {{"s", "w1", EdgeKind::node_basin},
             {"s", "w2", EdgeKind::node_basin},
             {"a", "s", EdgeKind::node_basin}};
  d.separatrices = {{{"s", 0}, {{{{"w1", 0}}, {{"w2", 0}}}}}};
  d.annotations = {{"s", tight, strongly_tight, 0}};
  d.no_heteroclinic_curves = true;
  return d;
}

}  // namespace detail

/// Two sinks joined through one saddle whose closure is an arc; the classic
/// sphere example whose one-dimensional attractor has genus 0 yet is not
/// tightly embedded, so no dynamically ordered energy function exists.
inline Diagram make_pixton() {
  Diagram d = detail::make_pixton_base(false, false);
  d.name = "pixton";
  return d;
}

/// The same roster with the embedding declared strongly tight, for exercising
/// the certificate on a diagram where the function does exist.
inline Diagram make_pixton_strong() {
  Diagram d = detail::make_pixton_base(true, true);
  d.name = "pixton-strong";
  return d;
}

/// Sink, index-1 saddle with both separatrices into the sink, the mirror
/// saddle and source. The attractor is a circle with genus-1 neighborhood;
/// ambient manifold S2 x S1. Tight but not strongly tight on both sides, so
/// the decision procedure honestly answers Unknown.
inline Diagram make_s2xs1_basic() {
  Diagram d;
  d.name = "s2xs1-basic";
  d.orbits = {{"w", 1, 0, false}, {"s", 1, 1, false}, {"r", 1, 2, false}, {"a", 1, 3, false}};
  d.edges = {{"s", "w", EdgeKind::node_basin},
             {"r", "w", EdgeKind::node_basin},
             {"a", "r", EdgeKind::node_basin},
             {"a", "s", EdgeKind::node_basin}};
  d.separatrices = {{{"s", 0}, {{{{"w", 0}}, {{"w", 0}}}}}};
  d.mirror_separatrices = {{{"r", 0}, {{{{"a", 0}}, {{"a", 0}}}}}};
  d.annotations = {{"s", true, false, 1}};
  d.mirror_annotations = {{"r", true, false, 1}};
  d.no_heteroclinic_curves = true;
  return d;
}

/// A gradient-like ladder: n index-1 saddles dropping into one sink, each
/// below a partner index-2 saddle along a heteroclinic curve, one source.
/// The level genus climbs to n at the splitting surface and descends again.
/// chain-1 is the minimal four-orbit chain w < s1 < r1 < a.
inline Diagram make_chain(int n) {
  Diagram d;
  d.name = "chain-" + std::to_string(n);
  d.orbits.push_back({"w", 1, 0, false});
  std::vector<std::string> lower_ids, upper_ids;
  for (int i = 1; i <= n; ++i) {
    lower_ids.push_back("s" + std::to_string(i));
    upper_ids.push_back("r" + std::to_string(i));
  }
  for (const auto& id : lower_ids) d.orbits.push_back({id, 1, 1, false});
  for (const auto& id : upper_ids) d.orbits.push_back({id, 1, 2, false});
  d.orbits.push_back({"a", 1, 3, false});

  for (int i = 0; i < n; ++i) {
    d.edges.push_back({lower_ids[i], "w", EdgeKind::node_basin});
    d.edges.push_back({upper_ids[i], lower_ids[i], EdgeKind::heteroclinic_curve});
    d.edges.push_back({"a", upper_ids[i], EdgeKind::node_basin});
    d.separatrices.push_back({{lower_ids[i], 0}, {{{{"w", 0}}, {{"w", 0}}}}});
    d.mirror_separatrices.push_back({{upper_ids[i], 0}, {{{{"a", 0}}, {{"a", 0}}}}});
  }
  d.no_heteroclinic_curves = n == 0;

  // Each saddle raises the genus of its side by one. The canonical numbering
  // orders equal-behaviour saddles by id and the mirror side runs through the
  // induced (reversed) numbering, so its witnesses count down the id order.
  auto annotate = [](std::vector<std::string> ids, bool reversed) {
    std::sort(ids.begin(), ids.end());
    if (reversed) std::reverse(ids.begin(), ids.end());
    std::vector<EmbeddingAnnotation> out;
    for (std::size_t j = 0; j < ids.size(); ++j)
      out.push_back({ids[j], true, true, static_cast<long long>(j + 1)});
    return out;
  };
  d.annotations = annotate(lower_ids, false);
  d.mirror_annotations = annotate(upper_ids, true);
  return d;
}

struct ExampleInfo {
  std::string name;
  std::string summary;
};

inline std::vector<ExampleInfo> example_catalog() {
  return {
      {"north-south", "one sink, one source; minimal sphere diagram"},
      {"pixton", "two sinks through one untight saddle on the sphere; energy NotExists"},
      {"pixton-strong", "the same roster declared strongly tight; certificate demo"},
      {"s2xs1-basic", "circle attractor on S2 x S1; tight only, verdict Unknown"},
      {"chain-N", "parametric gradient-like ladder with N saddle pairs (e.g. chain-3)"},
  };
}

inline std::optional<Diagram> make_example(std::string_view name) {
  if (name == "north-south") return make_north_south();
  if (name == "pixton") return make_pixton();
  if (name == "pixton-strong") return make_pixton_strong();
  if (name == "s2xs1-basic") return make_s2xs1_basic();
  if (name.starts_with("chain-")) {
    const std::string digits(name.substr(6));
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
    int n = 0;
    for (char c : digits) {
      n = n * 10 + (c - '0');
      if (n > 999) return std::nullopt;
    }
    if (n < 1) return std::nullopt;
    return make_chain(n);
  }
  return std::nullopt;
}

}  // namespace mse
