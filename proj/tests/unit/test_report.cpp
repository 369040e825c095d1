#include <doctest.h>

#include "json.hpp"

#include <limits>

#include "fixtures.hpp"

using namespace newtonosc;

TEST_CASE("fnv1a reference vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("doubles round-trip through the text form") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("reports carry provenance") {
  const Provenance prov{"00ff00ff00ff00ff", 42};
  const auto n = NewtonPolyhedron::build(fixtures::fig3());
  const auto j = nlohmann::json::parse(polyhedron_report_json(n, prov));
  CHECK(j["tool_version"] == std::string(tool_version()));
  CHECK(j["config_hash"] == "00ff00ff00ff00ff");
  CHECK(j["seed"] == 42);
  CHECK(j["newton_distance"] == "20/9");
  CHECK(j["facet_normals"][0] == nlohmann::json::array({"1/5", "1/4"}));

  const auto l = nlohmann::json::parse(ladder_report_json(exponent_ladder(n, Rational(11, 20), 3, true), prov));
  CHECK(l["terms"].size() == 3);
  CHECK(l["terms"][0]["p"] == "9/20");
  CHECK(l["config_hash"] == "00ff00ff00ff00ff");

  const auto v = nlohmann::json::parse(nondegeneracy_report_json(check_nondegenerate(fixtures::fig3()), prov));
  CHECK(v["status"] == "nondegenerate");
  CHECK(v["seed"] == 42);
}

TEST_CASE("non-finite numbers are written as strings") {
  ExpansionFit fit;
  fit.residual_exponent = std::numeric_limits<double>::infinity();
  const auto j = nlohmann::json::parse(expansion_report_json(fit));
  CHECK(j["residual_exponent"] == "inf");
}

TEST_CASE("csv preamble") {
  SweepResult s;
  s.rows.push_back({100.0, {0.5, -0.25}, 1e-12, 8, false});
  const auto text = sweep_csv(s, {"abc", 7});
  CHECK(text.rfind("# newtonosc " + std::string(tool_version()) + " config abc seed 7\n", 0) == 0);
  CHECK(text.find("lambda,re,im,abs,est_error,flagged\n") != std::string::npos);
  CHECK(text.find("100,0.5,-0.25,") != std::string::npos);
}
