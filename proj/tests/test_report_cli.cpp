#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mse/cli.hpp"
#include "mse/report.hpp"
#include "test_support.hpp"

using namespace mse;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("energy --example pixton --format json reports NotExists with witness s") {
  const auto r = run({"energy", "--example", "pixton", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"]["status"] == "NotExists");
  CHECK(doc["verdict"]["reasons"][0]["witness"] == "s");
}

TEST_CASE("classify --example north-south prints Sphere3 with m = 0") {
  const auto r = run({"classify", "--example", "north-south"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Sphere3") != std::string::npos);
  CHECK(r.out.find("m = 0") != std::string::npos);
}

TEST_CASE("filtration --example s2xs1-basic shows the genus-1 row") {
  const auto r = run({"filtration", "--example", "s2xs1-basic", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& rows = doc["filtration"]["attractors"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["i"] == 2);
  CHECK(rows[1]["g"] == 1);
}

TEST_CASE("classify on a curve-bearing diagram exits 2") {
  const auto r = run({"classify", "--example", "chain-2"});
  CHECK(r.code == 2);
}

TEST_CASE("validation violations exit 2") {
  const Diagram broken = [] {
    Diagram d = make_pixton();
    d.orbits[0].period = 2;  // duality breaks
    return d;
  }();
  const std::string path = "broken_fixture.json";
  {
    std::ofstream f(path);
    f << emit_document_text(broken);
  }
  const auto r = run({"validate", "--input", path});
  CHECK(r.code == 2);
  CHECK(r.out.find("duality") != std::string::npos);
}

TEST_CASE("parse and usage problems exit 1") {
  SUBCASE("missing input") {
    CHECK(run({"energy"}).code == 1);
  }
  SUBCASE("nonexistent file") {
    CHECK(run({"energy", "--input", "no_such_file.json"}).code == 1);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run({"frobnicate"}).code == 1);
  }
  SUBCASE("unknown example") {
    CHECK(run({"energy", "--example", "moebius"}).code == 1);
  }
  SUBCASE("bad json file") {
    const std::string path = "bad_fixture.json";
    {
      std::ofstream f(path);
      f << "{ nope";
    }
    CHECK(run({"validate", "--input", path}).code == 1);
  }
}

TEST_CASE("examples lists the catalog and emits documents") {
  const auto listing = run({"examples"});
  CHECK(listing.code == 0);
  for (const char* name : {"north-south", "pixton", "pixton-strong", "s2xs1-basic", "chain-N"})
    CHECK(listing.out.find(name) != std::string::npos);

  const auto emitted = run({"examples", "--example", "pixton"});
  CHECK(emitted.code == 0);
  CHECK(parse_document(emitted.out) == make_pixton());
}

TEST_CASE("report JSON output is deterministic byte for byte") {
  const auto a = run({"report", "--example", "s2xs1-basic", "--format", "json"});
  const auto b = run({"report", "--example", "s2xs1-basic", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  // and numeric values survive a JSON round-trip exactly
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(nlohmann::json::parse(doc.dump()) == doc);
}

TEST_CASE("DOT output is well-formed for every example") {
  for (const char* name : {"north-south", "pixton", "s2xs1-basic", "chain-3"}) {
    CAPTURE(name);
    const auto r = run({"report", "--example", name, "--format", "dot"});
    CHECK(r.code == 0);
    CAPTURE(r.out);
    CHECK(testsupport::dot_well_formed(r.out));
  }
}

TEST_CASE("full report carries every section for pixton-strong") {
  const auto r = run({"report", "--example", "pixton-strong", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["validation"]["ok"] == true);
  CHECK(doc.contains("ordering"));
  CHECK(doc.contains("filtration"));
  CHECK(doc["classification"]["m"] == 0);
  CHECK(doc["verdict"]["status"] == "Exists");
  CHECK(doc["certificate"]["splitting_genus"] == 0);
}

TEST_CASE("missing separatrix data surfaces as an analysis error with exit 2") {
  Diagram d = make_pixton();
  d.separatrices.clear();
  const std::string path = "nosep_fixture.json";
  {
    std::ofstream f(path);
    f << emit_document_text(d);
  }
  const auto r = run({"filtration", "--input", path});
  CHECK(r.code == 2);
  CHECK(r.out.find("separatrix") != std::string::npos);
}

TEST_CASE("energy refuses to decide over inconsistent annotations") {
  Diagram d = make_s2xs1_basic();
  d.annotations[0].handle_genus_witness = 0;  // tight demands witness == g_2 == 1
  const std::string path = "badnote_fixture.json";
  {
    std::ofstream f(path);
    f << emit_document_text(d);
  }
  const auto r = run({"energy", "--input", path, "--format", "json"});
  CHECK(r.code == 2);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK_FALSE(doc.contains("verdict"));
  CHECK(doc["filtration"]["annotation_issues"].size() > 0);
}

TEST_CASE("an overflowing numbering count is a note, not a failure") {
  const auto r = run({"order", "--example", "chain-25", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK_FALSE(doc["ordering"].contains("count_numberings"));
  CHECK(doc.contains("notes"));
}

TEST_CASE("help exits 0") {
  CHECK(run({"--help"}).code == 0);
}
