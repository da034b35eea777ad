// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "ggbraid/config.hpp"
#include "ggbraid/signature.hpp"

using namespace gg;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// All words of length <= max_len in B_n, letters +-1..+-(n-1).
void for_each_word(int n, int max_len, const std::function<void(const BraidWord&)>& f) {
  std::vector<int> letters;
  for (int k = 1; k < n; ++k) letters.insert(letters.end(), {k, -k});
  std::vector<int> w;
  std::function<void()> rec = [&] {
    f(BraidWord(n, w));
    if (static_cast<int>(w.size()) == max_len) return;
    for (int l : letters) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

Outcome signature_oracle() {
  std::size_t checked = 0, mismatches = 0;
  for_each_word(3, 6, [&](const BraidWord& a) {
    ++checked;
    if (signature(a) != goeritz_signature_oracle(a)) ++mismatches;
  });
  const std::size_t exhaustive = checked;
  std::mt19937_64 rng(20240501);
  for (int t = 0; t < 1000; ++t) {
    BraidWord a = random_word(4, 30, rng);
    ++checked;
    if (signature(a) != goeritz_signature_oracle(a)) ++mismatches;
  }
  return {mismatches == 0, fmt("%.0f exhaustive B3 words + 1000 random B4 words, %.0f mismatches",
                               static_cast<double>(exhaustive), static_cast<double>(mismatches))};
}

Outcome transfer_identities() {
  std::mt19937_64 rng(77);
  std::size_t bad = 0;
  const QuasiMorphism lk = restrict(exponent_sum_qm());
  std::vector<CosetTable> tables;
  for (int n = 2; n <= 4; ++n) tables.push_back(coset_representatives(n));
  for (int t = 0; t < 1000; ++t) {
    int n = 2 + t % 3;
    BraidWord b = random_word(n, 20, rng);
    if (homogenized_transfer(lk, b, tables[static_cast<std::size_t>(n - 2)]) != exponent_sum(b)) ++bad;
  }
  auto t2 = std::make_shared<const CosetTable>(tables[0]);
  mpq_class half = transfer(linking_qm(1, 2), t2)(BraidWord(2, {1}));
  bool half_ok = half == mpq_class(1, 2);

  auto t3 = std::make_shared<const CosetTable>(tables[1]);
  const QuasiMorphism sig = signature_qm(mpq_class(3));
  const QuasiMorphism tsig = transfer(restrict(sig), t3);
  double d_sig = to_double(defect_estimate(sig, 3, 10000, 20, 5));
  double d_tr = to_double(defect_estimate(tsig, 3, 10000, 20, 5));
  bool defect_ok = d_tr <= d_sig + 1e-9;
  return {bad == 0 && half_ok && defect_ok,
          fmt("%.0f/1000 htrans(lk) mismatches; trans(lk12)(s1) = %.4g; defect of trans(signature) %.4g <= "
              "signature %.4g",
              static_cast<double>(bad), to_double(half), d_tr, d_sig)};
}

// Band words of expanded Artin length <= max_len without adjacent
// cancelling factors.
void for_each_band_word(int n, int max_len, const std::function<void(const BandWord&)>& f) {
  BandWord w{n, {}};
  std::function<void(int)> rec = [&](int len) {
    f(w);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int e : {1, -1}) {
          int l = 2 * (j - i);
          if (len + l > max_len) continue;
          if (!w.factors.empty() && w.factors.back() == BandFactor{i, j, -e}) continue;
          w.factors.push_back({i, j, e});
          rec(len + l);
          w.factors.pop_back();
        }
  };
  rec(0);
}

Outcome realizer_exactness() {
  std::size_t words = 0, samples = 0, wrong = 0;
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    const DiskLayout layout = default_layout(n);
    for_each_band_word(n, 6, [&](const BandWord& b) {
      ++words;
      const FlowPath path = realizer(b, layout);
      const BraidWord want = b.expand().reduced();
      for (int s = 0; s < 100; ++s) {
        std::vector<Point> pts;
        for (const auto& u : layout.U()) pts.push_back(sample_in_disk(rng, u));
        ++samples;
        auto g = gamma_with_retry(path, ConfigurationSample(pts), rng);
        if (!g || g->word() != want) ++wrong;
      }
    });
  }
  return {wrong == 0, fmt("%.0f words (n = 2..4), %.0f localized samples, %.0f mismatches",
                          static_cast<double>(words), static_cast<double>(samples), static_cast<double>(wrong))};
}

Outcome theorem2_certificate() {
  // reference: signature(s1^(2p)) = -(2p-1), so the homogenization at A_{1,2} is -2
  bool oracle_ok = true;
  for (int p = 1; p <= 64; ++p) oracle_ok = oracle_ok && signature(power(BraidWord(2, {1, 1}), p)) == -(2 * p - 1);
  QmContext ctx;
  ctx.strands = 2;
  Theorem2Options opt;
  opt.estimator.samples = 10000;
  opt.estimator.seed = 2;
  opt.reference = -2.0;
  const BandWord beta = BandWord::parse("n=2 A1,2");
  auto r = theorem2_experiment(beta, parse_qm("hom:signature:64", ctx), default_layout(2), opt);
  bool bij_ok = true, constant = true;
  for (const auto& c : r.cells) {
    if (c.bijective && !(std::abs(c.mean - (-2.0)) <= 3 * c.sigma)) bij_ok = false;
    if (c.distinct_words != 1) constant = false;
  }
  auto null = theorem2_experiment(beta, parse_qm("null", ctx), default_layout(2), opt);
  bool pass = oracle_ok && bij_ok && r.Y_nonzero && r.property_i && constant && !null.property_ii;
  return {pass, fmt("Y = %.5f +- %.5f, bijective coefficient %.5f (ref -4); ", r.Y, r.Y_sigma,
                    r.bijective_coefficient) +
                    "bijective cells within 3 sigma of -2: " + (bij_ok ? "yes" : "no") +
                    ", property (i): " + (r.property_i ? "yes" : "no") +
                    ", cells constant: " + (constant ? "yes" : "no") +
                    ", null control fails (ii): " + (!null.property_ii ? "yes" : "no")};
}

Outcome calabi_proportionality() {
  EstimatorOptions opt;
  opt.samples = 100000;
  opt.seed = 1;
  auto r = calabi_proportionality_experiment(default_calabi_scenes(), opt, 0.02, kLockedCalabiConstant);
  return {r.pass() && r.entries.size() >= 5,
          fmt("%.0f scenes, c = %.4f +- %.4f (locked %.1f), ", static_cast<double>(r.entries.size()), r.constant,
              r.constant_std_error, kLockedCalabiConstant) +
              fmt("max relative deviation %.4f (limit 0.02)", r.max_relative_deviation)};
}

Outcome prop_mean() {
  EstimatorOptions opt;
  opt.samples = 100000;
  opt.seed = 3;
  auto r = prop_mean_experiment(linking_qm(1, 2), 3, default_prop_mean_scenes(), opt);
  std::string d;
  for (const auto& e : r.entries) d += fmt("%.4f +- %.4f; ", e.difference, e.difference_std_error);
  return {r.pass() && r.entries.size() == 3, "differences " + d};
}

Outcome kernel_element() {
  EstimatorOptions opt;
  opt.samples = 100000;
  opt.seed = 4;
  QmContext ctx;
  ctx.strands = 3;
  auto r = kernel_experiment(parse_qm("lk12 - lk13", ctx), 3, default_symmetric_scenes(), 1000, opt);
  std::string d;
  for (const auto& e : r.entries) d += fmt("%.4f +- %.4f; ", e.lhs, e.lhs_std_error);
  return {r.pass(), fmt("%.0f/%.0f nonzero transfers; Gamma ", static_cast<double>(r.nonzero_transfers),
                        static_cast<double>(r.braids_checked)) +
                        d};
}

Outcome flow_choice() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto twist = [&] {
    double c = 0.4 * std::sqrt(u(rng)), th = 2 * kPi * u(rng);
    double r_out = 0.15 + (0.95 - c - 0.15) * u(rng);
    double r_in = r_out * (0.1 + 0.8 * u(rng));
    return TwistMap({c * std::cos(th), c * std::sin(th)}, r_in, r_out, (u(rng) * 8 - 4) * kPi);
  };
  int same = 0, total = 0, failed = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 3;
    TwistMap a = twist(), b = twist();
    // b split into two commuting twists of the same center and radii, with
    // different stage durations
    double frac = 0.2 + 0.6 * u(rng);
    TwistMap b1(b.center(), b.r_in(), b.r_out(), frac * b.angle());
    TwistMap b2(b.center(), b.r_in(), b.r_out(), (1 - frac) * b.angle());
    FlowPath one({{a, 1.0}, {b, 1.0}});
    FlowPath two({{a, 0.5}, {b1, 2.0}, {b2, 0.7}});
    auto x = sample_configuration(rng, n, 1e-4);
    ++total;
    auto g1 = gamma_with_retry(one, x, rng), g2 = gamma_with_retry(two, x, rng);
    if (!g1 || !g2) {
      ++failed;
      continue;
    }
    if (g1->word() == g2->word()) ++same;
  }
  return {same == total, fmt("%.0f/%.0f pairs identical, %.0f extraction failures", same, total, failed)};
}

Outcome determinism_and_scaling() {
  const FlowPath p({{TwistMap({0.1, 0.05}, 0.3, 0.7, 2 * kPi), 1.0}});
  EstimatorOptions opt;
  opt.samples = 20000;
  opt.seed = 11;
  std::string first;
  bool identical = true;
  for (int threads : {1, 4, 1}) {
    opt.threads = threads;
    std::string text = to_json(estimate_gamma_qm(exponent_sum_qm(), p, 3, opt)).dump(2);
    if (first.empty()) first = text;
    identical = identical && text == first;
  }
  opt.threads = 1;
  std::vector<double> lx, ly;
  std::string ses;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    opt.samples = n;
    auto r = estimate_gamma_qm(exponent_sum_qm(), p, 2, opt);
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(r.std_error));
    ses += fmt("%.4g ", r.std_error);
  }
  double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3, sxy = 0, sxx = 0;
  for (int k = 0; k < 3; ++k) {
    sxy += (lx[static_cast<std::size_t>(k)] - mx) * (ly[static_cast<std::size_t>(k)] - my);
    sxx += (lx[static_cast<std::size_t>(k)] - mx) * (lx[static_cast<std::size_t>(k)] - mx);
  }
  double slope = sxy / sxx;
  bool scaling = std::abs(slope + 0.5) <= 0.05;
  return {identical && scaling, std::string("reports byte-identical for 1/4/1 threads: ") +
                                    (identical ? "yes" : "no") + "; std errors " + ses +
                                    fmt("-> log-log slope %.4f (target -0.5 +- 10%%)", slope)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"signature oracle equivalence", signature_oracle},
      {"transfer identities", transfer_identities},
      {"realizer exactness", realizer_exactness},
      {"localized integral certificate", theorem2_certificate},
      {"Calabi proportionality", calabi_proportionality},
      {"transfer mean equality", prop_mean},
      {"kernel element", kernel_element},
      {"flow-choice independence", flow_choice},
      {"determinism and MC health", determinism_and_scaling},
  };
  int failures = 0, k = 0;
  for (const auto& c : criteria) {
    ++k;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s -- %s (%.1f s)\n", k, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%d criteria passed\n", k - failures, k);
  return failures ? 1 : 0;
}
