#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ggbraid/estimator.hpp"
#include "ggbraid/layout.hpp"

using namespace gg;

namespace {

constexpr double kPi = std::numbers::pi;

Sampler disk(int n, double delta = 1e-4) {
  return [n, delta](std::mt19937_64& rng) { return sample_configuration(rng, n, delta); };
}

// Midpoint rule in polar coordinates on D^2 x D^2 for the integral of
// lk(gamma(path; x1, x2)).
double grid_lk(const FlowPath& path, int nr, int nt) {
  std::vector<Point> pts;
  std::vector<double> w;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      double r = (i + 0.5) / nr, th = 2 * kPi * (j + 0.37) / nt;
      pts.push_back({r * std::cos(th), r * std::sin(th)});
      w.push_back(r * (1.0 / nr) * (2 * kPi / nt));
    }
  std::mt19937_64 rng(1);
  double total = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (a == b) continue;
      auto g = gamma_with_retry(path, ConfigurationSample({pts[a], pts[b]}, 1e-12), rng);
      REQUIRE(g);
      total += w[a] * w[b] * exponent_sum(g->word());
    }
  return total;
}

}  // namespace

TEST_CASE("uniform disk sampling") {
  std::mt19937_64 rng(42);
  const int N = 1000000;
  double s = 0, s2 = 0;
  for (int k = 0; k < N; ++k) {
    double r2 = norm(sample_configuration(rng, 1, 1e-4).points()[0]);
    r2 *= r2;
    s += r2;
    s2 += r2 * r2;
  }
  double mean = s / N, se = std::sqrt((s2 / N - mean * mean) / N);
  CHECK(std::abs(mean - 0.5) < 3 * se);

  std::mt19937_64 a(7), b(7);
  for (int k = 0; k < 100; ++k) {
    auto x = sample_configuration(a, 4, 0.2), y = sample_configuration(b, 4, 0.2);
    CHECK(x.points() == y.points());
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        CHECK(distance(x.points()[static_cast<std::size_t>(i)], x.points()[static_cast<std::size_t>(j)]) >= 0.2);
  }
}

TEST_CASE("chunk streams are distinct and reproducible") {
  CHECK(chunk_rng(1, 0)() == chunk_rng(1, 0)());
  CHECK(chunk_rng(1, 0)() != chunk_rng(1, 1)());
  CHECK(chunk_rng(1, 0)() != chunk_rng(2, 0)());
}

TEST_CASE("identity path") {
  EstimatorOptions opt;
  opt.samples = 2000;
  auto r = estimate_gamma_qm(exponent_sum_qm(), FlowPath(), 3, opt);
  CHECK(r.mean == 0);
  CHECK(r.std_error == 0);
  CHECK(r.samples == 2000);
  CHECK(estimate_homogenized(exponent_sum_qm(), FlowPath(), 2, 4, opt).mean == 0);
}

TEST_CASE("estimates are linear on shared samples") {
  FlowPath p({{TwistMap({0.1, 0}, 0.3, 0.7, 2 * kPi), 1.0}, {TwistMap({-0.2, 0.1}, 0.2, 0.6, -2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 5000;
  QmContext ctx;
  ctx.strands = 3;
  std::vector<QuasiMorphism> qs{parse_qm("lk12", ctx), parse_qm("lk13", ctx), parse_qm("2*lk12 - 1/2*lk13", ctx)};
  auto m = estimate_many(qs, p, disk(3), kPi * kPi * kPi, 1, opt);
  CHECK(std::abs(m.mean[2] - (2 * m.mean[0] - 0.5 * m.mean[1])) < 1e-12 * (1 + std::abs(m.mean[2])));
  CHECK(std::abs(m.contrast_mean({2, -0.5}) - m.mean[2]) < 1e-12 * (1 + std::abs(m.mean[2])));
  CHECK(std::abs(m.contrast_std_error({0, 0, 1}) - m.std_error(2)) < 1e-15);
  CHECK(m.failures == 0);
}

TEST_CASE("two-strand lk against grid quadrature") {
  FlowPath p({{TwistMap({0, 0}, 0.5, 0.8, 2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 100000;
  auto mc = estimate_gamma_qm(exponent_sum_qm(), p, 2, opt);
  double coarse = grid_lk(p, 12, 24), fine = grid_lk(p, 20, 40);
  MESSAGE("grid " << coarse << " / " << fine << ", mc " << mc.mean << " +- " << mc.std_error);
  CHECK(std::abs(mc.mean - fine) < 3 * mc.std_error + 2 * std::abs(fine - coarse));
}

TEST_CASE("homomorphism estimates do not depend on the power") {
  FlowPath p({{TwistMap({0.1, 0.1}, 0.3, 0.6, 2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 20000;
  auto r1 = estimate_homogenized(exponent_sum_qm(), p, 2, 1, opt);
  for (int k : {2, 4}) {
    opt.seed = static_cast<std::uint64_t>(k);
    auto rk = estimate_homogenized(exponent_sum_qm(), p, 2, k, opt);
    CHECK(rk.power == k);
    CHECK(std::abs(rk.mean - r1.mean) < 3 * std::hypot(rk.std_error, r1.std_error));
  }
}

TEST_CASE("results do not depend on the thread count") {
  FlowPath p({{TwistMap({0.1, 0}, 0.3, 0.7, 2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 5000;
  opt.chunk_size = 256;
  auto a = estimate_many({exponent_sum_qm()}, p, disk(3), 1.0, 1, opt);
  opt.threads = 4;
  auto b = estimate_many({exponent_sum_qm()}, p, disk(3), 1.0, 1, opt);
  CHECK(a.mean == b.mean);
  CHECK(a.comoment == b.comoment);
  CHECK(a.distinct_words == b.distinct_words);
  CHECK(a.first_word == b.first_word);
}

TEST_CASE("extraction failures abort the estimate") {
  FlowPath p({{TwistMap({0, 0}, 0.3, 0.8, 2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 500;
  opt.extraction.collision_tolerance = 10.0;  // every crossing counts as a collision
  CHECK_THROWS_AS(estimate_gamma_qm(exponent_sum_qm(), p, 2, opt), EstimatorError);
  CHECK_THROWS_AS(estimate_gamma_qm(exponent_sum_qm(), p, 2, EstimatorOptions{.samples = 0}), std::invalid_argument);
}

TEST_CASE("report metadata") {
  FlowPath p({{TwistMap({0, 0}, 0.3, 0.8, 2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 100;
  opt.seed = 9;
  auto r = estimate_gamma_qm(parse_qm("signature", {}), p, 2, opt);
  CHECK(r.phi == "signature");
  CHECK(r.defect_assumed);
  CHECK(r.seed == 9);
  CHECK(r.path_hash == path_hash(p));
  CHECK(r.path_hash.size() == 16);
  CHECK(std::abs(r.volume - kPi * kPi) < 1e-15);
  CHECK(path_hash(p) != path_hash(p.repeated(2)));
}

TEST_CASE("homogenized signature along a p-schedule converges to a nonzero limit") {
  const FlowPath p = realizer(BandWord::parse("n=2 A1,2"), default_layout(2));
  EstimatorOptions opt;
  opt.samples = 4000;
  std::vector<EstimateReport> r;
  for (int k : {1, 2, 4, 8}) r.push_back(estimate_homogenized(signature_qm(), p, 2, k, opt));
  MESSAGE("p = 1, 2, 4, 8: " << r[0].mean << " " << r[1].mean << " " << r[2].mean << " " << r[3].mean);
  CHECK(std::abs(r[3].mean) > 3 * r[3].std_error);
  double late = std::abs(r[3].mean - r[2].mean), early = std::abs(r[1].mean - r[0].mean);
  CHECK(late < early + 3 * std::hypot(r[3].std_error, r[2].std_error));
}
