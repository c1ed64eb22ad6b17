#include <doctest.h>

#include "mse/diagram.hpp"
#include "mse/examples.hpp"
#include "test_support.hpp"

using namespace mse;

TEST_CASE("north-south validates clean") {
  const Diagram d = make_north_south();
  const auto rep = validate(d);
  CHECK(rep.ok());
}

TEST_CASE("pixton validates clean with balanced point counts") {
  const Diagram d = make_pixton();
  CHECK(d.point_count(0) == 2);
  CHECK(d.point_count(1) == 1);
  CHECK(d.point_count(2) == 0);
  CHECK(d.point_count(3) == 1);
  // 1 + 1 - 2 == 0 == 1 + 0 - 1
  CHECK(1 + d.point_count(1) - d.point_count(0) == 1 + d.point_count(2) - d.point_count(3));
  CHECK(validate(d).ok());
}

TEST_CASE("deleting a sink from pixton breaks the duality identity") {
  Diagram d = make_pixton();
  // drop w2 and everything touching it
  d.orbits.erase(d.orbits.begin() + 1);
  std::erase_if(d.edges, [](const IntersectionEdge& e) { return e.lower == "w2"; });
  d.separatrices[0].branches[1] = {{"w1", 0}};
  const auto rep = validate(d);
  CHECK_FALSE(rep.ok());
  CHECK(rep.has("diagram.duality_identity"));
}

TEST_CASE("every built-in example validates clean") {
  for (const char* name : {"north-south", "pixton", "pixton-strong", "s2xs1-basic", "chain-1",
                           "chain-3", "chain-7"}) {
    CAPTURE(name);
    auto d = make_example(name);
    REQUIRE(d.has_value());
    const auto rep = validate(*d);
    for (const auto& v : rep.violations) CAPTURE(v.code + ": " + v.message);
    CHECK(rep.ok());
  }
}

TEST_CASE("validate is pure: same diagram gives the same report") {
  Diagram d = make_pixton();
  d.annotations[0].tight = true;  // inconsistent with strongly_tight=false? no: fine
  d.orbits[0].period = 2;         // breaks duality
  const auto first = validate(d);
  const auto second = validate(d);
  CHECK(first.violations == second.violations);
  CHECK_FALSE(first.ok());
}

TEST_CASE("edge kinds are forced by the index pair") {
  Diagram d = make_pixton();

  SUBCASE("saddle over sink must be node_basin") {
    d.edges[0].kind = EdgeKind::heteroclinic_point;
    CHECK(validate(d).has("edge.kind_mismatch"));
  }
  SUBCASE("self loops are rejected") {
    d.edges.push_back({"s", "s", EdgeKind::heteroclinic_point});
    CHECK(validate(d).has("edge.self_loop"));
  }
  SUBCASE("higher index below lower index is impossible") {
    // a source can never sit below a saddle
    d.edges.push_back({"s", "a", EdgeKind::node_basin});
    CHECK(validate(d).has("edge.index_order"));
  }
  SUBCASE("unknown endpoints are flagged") {
    d.edges.push_back({"s", "nope", EdgeKind::node_basin});
    CHECK(validate(d).has("edge.unknown_orbit"));
  }
}

TEST_CASE("required_edge_kind matches the transversality table") {
  // sink below anything, anything below source: node_basin
  CHECK(required_edge_kind(1, 0) == EdgeKind::node_basin);
  CHECK(required_edge_kind(2, 0) == EdgeKind::node_basin);
  CHECK(required_edge_kind(3, 0) == EdgeKind::node_basin);
  CHECK(required_edge_kind(3, 1) == EdgeKind::node_basin);
  CHECK(required_edge_kind(3, 2) == EdgeKind::node_basin);
  // equal saddle indices: heteroclinic points (1D branch meets 2D leaf)
  CHECK(required_edge_kind(1, 1) == EdgeKind::heteroclinic_point);
  CHECK(required_edge_kind(2, 2) == EdgeKind::heteroclinic_point);
  // index-1 below index-2: 2D meets 2D along curves
  CHECK(required_edge_kind(2, 1) == EdgeKind::heteroclinic_curve);
  // impossible pairings
  CHECK_FALSE(required_edge_kind(1, 2).has_value());
  CHECK_FALSE(required_edge_kind(0, 0).has_value());
  CHECK_FALSE(required_edge_kind(3, 3).has_value());
  CHECK_FALSE(required_edge_kind(0, 3).has_value());
}

TEST_CASE("cyclic relation is reported as a violation") {
  const auto rep = validate(testsupport::cyclic_fixture());
  CHECK(rep.has("order.cyclic"));
}

TEST_CASE("curve flag must match the edge list") {
  Diagram d = *make_example("chain-1");
  REQUIRE_FALSE(d.no_heteroclinic_curves);
  d.no_heteroclinic_curves = true;
  CHECK(validate(d).has("diagram.curve_flag_mismatch"));

  Diagram plain = make_pixton();
  plain.no_heteroclinic_curves = false;
  CHECK(validate(plain).has("diagram.curve_flag_mismatch"));
}

TEST_CASE("rosters without sinks or sources are rejected") {
  Diagram d;
  d.orbits = {{"s", 1, 1, false}, {"r", 1, 2, false}};
  const auto rep = validate(d);
  CHECK(rep.has("diagram.no_sink"));
  CHECK(rep.has("diagram.no_source"));
}

TEST_CASE("separatrix equivariance and monodromy") {
  Diagram d = testsupport::periodic_sphere_fixture();
  REQUIRE(validate(d).ok());

  SUBCASE("swap on a period-1 saddle with distinct branch targets is inconsistent") {
    Diagram p = make_pixton();
    p.orbits[2].separatrix_swap = true;  // s has branches to w1 and w2
    CHECK(validate(p).has("separatrix.monodromy"));
  }
  SUBCASE("swap on a period-1 saddle with equal branch targets is fine") {
    Diagram b = make_s2xs1_basic();
    b.orbits[1].separatrix_swap = true;  // both branches fall into w
    CHECK(validate(b).ok());
  }
  SUBCASE("records of different points must be shifts of each other") {
    // the record at point 1 must be the shift of the record at point 0
    d.separatrices.push_back(
        {{"s", 1}, {{{{"w", 0}, {"w", 1}, {"w", 2}}, {{"w", 0}, {"w", 1}, {"w", 2}}}}});
    CHECK(validate(d).ok());  // sets are shift-invariant, so this one matches
    d.separatrices.back().branches[0] = {{"w", 0}};
    CHECK_FALSE(validate(d).ok());
  }
  SUBCASE("limit set not invariant under the return map is flagged") {
    d.separatrices[0].branches[0] = {{"w", 0}};  // f^2-orbit of w0 is the whole sink orbit
    CHECK(validate(d).has("separatrix.monodromy"));
  }
  SUBCASE("empty branch is flagged") {
    d.separatrices[0].branches[0].clear();
    CHECK(validate(d).has("separatrix.empty_branch"));
  }
  SUBCASE("targets must lie strictly below the saddle") {
    Diagram p = make_pixton();
    p.separatrices[0].branches[0].push_back({"a", 0});
    CHECK(validate(p).has("separatrix.target_index"));
  }
  SUBCASE("targets need a covering intersection edge") {
    Diagram p = make_pixton();
    p.edges.erase(p.edges.begin());  // remove (s over w1)
    CHECK(validate(p).has("separatrix.edge_coverage"));
  }
}

TEST_CASE("annotations are required exactly once per saddle orbit") {
  Diagram d = make_pixton();
  SUBCASE("missing") {
    d.annotations.clear();
    CHECK(validate(d).has("annotation.missing"));
  }
  SUBCASE("duplicate") {
    d.annotations.push_back(d.annotations[0]);
    CHECK(validate(d).has("annotation.duplicate"));
  }
  SUBCASE("wrong side") {
    d.mirror_annotations.push_back({"s", true, false, 0});
    CHECK(validate(d).has("annotation.side"));
  }
  SUBCASE("strongly tight without tight") {
    d.annotations[0] = {"s", false, true, 0};
    CHECK(validate(d).has("annotation.flags"));
  }
}

TEST_CASE("invert is an involution and swaps the two sides") {
  for (const char* name : {"north-south", "pixton", "s2xs1-basic", "chain-2"}) {
    CAPTURE(name);
    const Diagram d = *make_example(name);
    const Diagram inv = invert(d);
    CHECK(invert(inv) == d);
    CHECK(validate(inv).ok());
    CHECK(inv.orbit_at("a").index == 0);
    CHECK(inv.point_count(0) == d.point_count(3));
    CHECK(inv.point_count(1) == d.point_count(2));
  }
  const Diagram p = testsupport::periodic_sphere_fixture();
  CHECK(invert(invert(p)) == p);
  CHECK(validate(invert(p)).ok());
}
