#include <gtest/gtest.h>

#include "parcoh/errors.hpp"
#include "parcoh/suites.hpp"

using namespace parcoh;

namespace {

RunConfig config(const std::string& backend, int genus, int boundary, std::vector<std::string> classes,
                 std::vector<std::string> suites) {
  RunConfig c;
  c.backend = backend;
  c.genus = genus;
  c.boundary = boundary;
  c.classes = std::move(classes);
  c.suites = std::move(suites);
  return c;
}

const json& suite(const json& body, const std::string& name) {
  for (const json& s : body["suites"])
    if (s["name"] == name) return s;
  throw std::runtime_error("suite missing: " + name);
}

}  // namespace

TEST(RunConfig, ParseAndValidate) {
  const RunConfig c = RunConfig::from_json(
      json::parse(R"({"backend": "sl2r", "genus": 2, "boundary": 1, "classes": ["hyperbolic:0.8"], "seed": 9})"));
  EXPECT_EQ(c.backend, "sl2r");
  EXPECT_EQ(c.genus, 2);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.trials, 5);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(RunConfig::from_json(c.to_json()).to_json(), c.to_json());

  EXPECT_THROW(RunConfig::from_json(json::parse(R"({"genous": 1})")), ConfigError);
  EXPECT_THROW(config("su2", 1, 2, {"1.0"}, {"all"}).validate(), ConfigError);
  EXPECT_THROW(config("su2", 0, 0, {}, {"all"}).validate(), ConfigError);
  EXPECT_THROW(config("so3", 1, 1, {"1.0"}, {"all"}).validate(), ConfigError);
  EXPECT_THROW(config("su2", 1, 1, {"1.0"}, {"bogus"}).validate(), ConfigError);
  EXPECT_THROW(config("sl2r", 1, 1, {"loxodromic:1"}, {"all"}).validate(), ConfigError);
  EXPECT_THROW(config("u1:2", 1, 1, {"0.1"}, {"all"}).validate(), ConfigError);
}

TEST(RunConfig, Tolerances) {
  RunConfig c;
  c.tol_scale = 10.0;
  c.tolerance_overrides = {{"pairing_dual_path", 1e-7}};
  const Tolerances t = c.tolerances();
  EXPECT_DOUBLE_EQ(t.pairing_dual_path, 1e-7);
  EXPECT_DOUBLE_EQ(t.complex_d1d0, 10.0 * default_tolerances().complex_d1d0);
  c.tolerance_overrides = {{"no_such_field", 1.0}};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(ParseClass, Tokens) {
  EXPECT_EQ(parse_class(Backend::su2(), "1.0").params()[0], 1.0);
  EXPECT_EQ(parse_class(Backend::sl2r(), "hyperbolic:0.5").type(), "hyperbolic");
  EXPECT_EQ(parse_class(Backend::sl2r(), "0.5").type(), "elliptic");
  EXPECT_EQ(parse_class(Backend::u1k(2), "0.1/0.2").params().size(), 2u);
  EXPECT_THROW(parse_class(Backend::su2(), "one"), ConfigError);
}

TEST(CmdReport, AbelianPairingExample) {
  const RunReport r = cmd_report(config("u1", 1, 1, {"0"}, {"pairing"}));
  EXPECT_TRUE(r.pass) << r.body.dump(2);
  EXPECT_EQ(suite(r.body, "pairing")["info"]["H1par"], 2);
}

TEST(CmdReport, Su2AllExample) {
  RunConfig c = config("su2", 1, 1, {"1.0"}, {"all"});
  c.seed = 7;
  const RunReport r = cmd_report(c);
  EXPECT_TRUE(r.pass) << r.body.dump(2);
  EXPECT_EQ(suite(r.body, "pairing")["info"]["H1par"], 2);
  for (const json& s : r.body["suites"])
    for (const json& chk : s["checks"]) EXPECT_TRUE(chk.contains("tolerance")) << chk.dump();

  // Determinism: same config and seed give the same body.
  EXPECT_EQ(cmd_report(c).body.dump(), r.body.dump());
}

TEST(CmdReport, ObstructedClassFails) {
  const RunReport r = cmd_report(config("u1", 1, 1, {"0.3"}, {"pairing"}));
  EXPECT_FALSE(r.pass);
}

TEST(CmdFixtures, CatalogRoundTrip) {
  const json j = cmd_fixtures();
  bool found = false;
  for (const json& f : j["fixtures"]) {
    found = found || f["name"] == "su2-commutator-l1n1";
    EXPECT_LE(f["relator_defect"].get<double>(), 1e-10);
    const RepresentationPoint phi = rep_from_json(f["point"]);
    EXPECT_LE(phi.relator_defect(), 1e-10);
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(json::parse(j.dump()), j);
  EXPECT_THROW(fixture("no-such-fixture"), ConfigError);
}
