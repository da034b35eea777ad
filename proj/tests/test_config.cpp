#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ggbraid/config.hpp"

using namespace gg;

TEST_CASE("scene parsing") {
  Json j = Json::parse(R"({"stages": [{"center": [0.1, 0], "r_in": 0.2, "r_out": 0.5, "angle": 6.283185307179586},
                                      {"center": [0, 0], "r_in": 0.1, "r_out": 0.3, "angle": -1, "duration": 2}]})");
  FlowPath p = path_from_json(j);
  REQUIRE(p.stages().size() == 2);
  CHECK(p.stages()[1].duration == 2);
  CHECK(path_from_json(to_json(p)) == p);

  FlowPath r = path_from_json(Json::parse(R"({"realize": "n=3 A1,2 A1,3^-1"})"));
  CHECK(r == realizer(BandWord::parse("n=3 A1,2 A1,3^-1"), default_layout(3)));
}

TEST_CASE("config errors are listed together") {
  Json j = Json::parse(R"({"experiment": "estimate", "samples": -3, "delta": 0, "bogus": 1,
                           "scene": {"stages": [{"center": [0.9, 0], "r_in": 0.2, "r_out": 0.5, "angle": 1},
                                                {"center": [0, 0], "r_in": "x", "r_out": 0.5}]}})");
  try {
    config_from_json(j);
    FAIL("no throw");
  } catch (const ConfigError& e) {
    const auto& p = e.problems();
    auto has = [&](const char* needle) {
      for (const auto& s : p)
        if (s.find(needle) != std::string::npos) return true;
      return false;
    };
    CHECK(has("samples"));
    CHECK(has("delta"));
    CHECK(has("bogus"));
    CHECK(has("scene.stages[0]"));
    CHECK(has("scene.stages[1].r_in"));
    CHECK(has("scene.stages[1].angle"));
    CHECK(p.size() >= 6);
  }
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"experiment": "nope", "scene": {"stages": []}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"scene": {"stages": [], "realize": "n=2 A1,2"}})")), ConfigError);
}

TEST_CASE("layout blocks") {
  DiskLayout l = default_layout(3);
  CHECK(layout_from_json(to_json(l)) == l);
  Json bad = to_json(l);
  bad["U"][0]["radius"] = 0.6;
  try {
    layout_from_json(bad);
    FAIL("no throw");
  } catch (const ConfigError& e) {
    CHECK(e.problems().size() >= 2);
  }
}

TEST_CASE("config defaults") {
  RunConfig c = config_from_json(Json::parse(R"({"experiment": "theorem2"})"));
  CHECK(c.phi == "hom:signature:64");
  CHECK(c.braid == "n=2 A1,2");
  CHECK(c.estimator.samples == 10000);
  RunConfig k = config_from_json(Json::parse(R"({"experiment": "kernel", "p_schedule": [1, 2]})"));
  CHECK(k.strands == 3);
  CHECK(k.p_schedule == std::vector<int>{1, 2});
  CHECK(config_from_json(Json::parse(R"({"experiment": "calabi", "locked_constant": null})")).locked_constant ==
        std::nullopt);
}

TEST_CASE("reports") {
  EstimateReport r;
  r.phi = "lk";
  r.mean = 1.5;
  r.wall_seconds = 0.25;
  CHECK_FALSE(to_json(r).contains("wall_seconds"));
  CHECK(to_json(r, true).contains("wall_seconds"));
  std::string csv = to_csv(std::vector<EstimateReport>{r});
  CHECK(csv.rfind("phi,path_hash,", 0) == 0);
  CHECK(csv.find("\"lk\",") != std::string::npos);

  RunManifest m;
  m.command = "estimate";
  CHECK_FALSE(to_json(m).contains("timestamp"));
  m.timestamp = "2026-01-01T00:00:00Z";
  CHECK(to_json(m).contains("timestamp"));

  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");

  Theorem2Report t;
  t.areas = {0.5, 0.25};
  t.cells.push_back({{1, 2}, true, 0.125, 2.0});
  t.cells.push_back({{2, 2}, false, 0.0625, -1.0});
  CHECK(t.recompute_Y() == doctest::Approx(0.5 * 0.25 * 2.0 - 0.25 * 0.25));
  Json tj = to_json(t);
  CHECK(tj["cells"].size() == 2);
}

TEST_CASE("layout scale trend") {
  RunConfig c = config_from_json(Json::parse(R"({"experiment": "theorem2", "layout_scales": [0.2, 0.4]})"));
  CHECK(c.layout_scales == std::vector<double>{0.2, 0.4});
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"experiment": "theorem2", "layout_scales": [0.5]})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"experiment": "calabi", "layout_scales": [0.2]})")), ConfigError);

  QmContext ctx;
  ctx.strands = 2;
  Theorem2Options opt;
  opt.estimator.samples = 500;
  auto t = theorem2_scale_trend(BandWord::parse("n=2 A1,2"), parse_qm("lk12", ctx), {0.2, 0.3, 0.4}, opt);
  REQUIRE(t.size() == 3);
  for (const auto& e : t) {
    // lk12 is 1 on every cell, so Y = (a_1 + a_2)^2 exactly
    CHECK(e.Y == doctest::Approx(std::pow(e.area_fraction * std::numbers::pi, 2)));
    CHECK(e.remainder == doctest::Approx(e.full - e.Y));
  }
  CHECK(t[0].area_fraction < t[1].area_fraction);
  CHECK(t[1].area_fraction < t[2].area_fraction);
  Json j = to_json(t);
  CHECK(j.size() == 3);
}
