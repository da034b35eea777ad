#include <doctest.h>

#include <memory>
#include <random>

#include "ggbraid/quasimorphism.hpp"
#include "ggbraid/signature.hpp"

using namespace gg;

namespace {

BraidWord W(const char* text) { return BraidWord::parse(text); }

mpq_class R(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

BraidWord sigma1_power(int p) { return power(W("n=2 1"), p); }

QuasiMorphism Q(const char* name, int n = 2) {
  QmContext ctx;
  ctx.strands = n;
  return parse_qm(name, ctx);
}

}  // namespace

TEST_CASE("exponent sum and pairwise linking") {
  CHECK(exponent_sum(W("n=2 1")) == 1);
  CHECK(exponent_sum(power(W("n=2 1 1"), 7)) == 14);
  CHECK(pairwise_linking(W("n=2 1 1"), 1, 2) == 1);
  CHECK(pairwise_linking(W("n=3"), 1, 3) == 0);
  CHECK(pairwise_linking(generator_A(1, 3, 3), 1, 2) == 0);
  CHECK_THROWS_AS(pairwise_linking(W("n=2 1"), 1, 2), DomainError);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + t % 3;
    BraidWord a = random_pure_word(n, 10, rng), b = random_pure_word(n, 10, rng);
    CHECK(exponent_sum(compose(a, b)) == exponent_sum(a) + exponent_sum(b));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        CHECK(pairwise_linking(compose(a, b), i, j) == pairwise_linking(a, i, j) + pairwise_linking(b, i, j));
  }
}

TEST_CASE("signature examples") {
  CHECK(signature(W("n=2")) == 0);
  CHECK(seifert_matrix(W("n=2")).dim() == 0);
  CHECK(signature(W("n=2 1 1 1")) == -2);
  auto v = seifert_matrix(W("n=2 1 1 1"));
  auto s = SymmetricIntegerMatrix::symmetrize(v);
  Inertia in = inertia_congruence(s);
  CHECK(in.negative == s.dim());
  CHECK(signature(W("n=2 1 1")) == -1);
  for (int p = 1; p <= 10; ++p) {
    CHECK(signature(sigma1_power(2 * p)) == -(2 * p - 1));
    CHECK(goeritz_signature_oracle(sigma1_power(2 * p)) == -(2 * p - 1));
  }
  CHECK(signature(W("n=2 -1 -1 -1")) == 2);  // mirror
  CHECK(goeritz_signature_oracle(W("n=2")) == 0);
}

TEST_CASE("signature agrees with the Goeritz oracle and both colorings") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + t % 4;
    BraidWord a = random_word(n, 16, rng);
    int s = signature(a);
    CHECK(goeritz_signature_oracle(a, false) == s);
    CHECK(goeritz_signature_oracle(a, true) == s);
    auto m = SymmetricIntegerMatrix::symmetrize(seifert_matrix(a));
    CHECK(inertia_charpoly(m) == inertia_congruence(m));
  }
}

TEST_CASE("exact inertia") {
  IntMatrix m(3);
  // diag(2, -3, 0) conjugated by an integer unimodular matrix
  m(0, 0) = 2; m(0, 1) = 2; m(0, 2) = 2;
  m(1, 0) = 2; m(1, 1) = -1; m(1, 2) = -1;
  m(2, 0) = 2; m(2, 1) = -1; m(2, 2) = -1;
  SymmetricIntegerMatrix s(m);
  Inertia want{1, 1, 1};
  CHECK(inertia_congruence(s) == want);
  CHECK(inertia_charpoly(s) == want);
  IntMatrix bad(2);
  bad(0, 1) = 1;
  CHECK_THROWS(SymmetricIntegerMatrix(bad));
}

TEST_CASE("homogenize") {
  auto lk = exponent_sum_qm();
  CHECK(homogenize(lk, W("n=2 1"), 1).value == 1);
  CHECK(homogenize(lk, W("n=2 1"), 37).value == 1);
  auto sig = signature_qm(mpq_class(2));
  auto h = homogenize(sig, W("n=2 1 1"), 64, true);
  CHECK(h.value == R(-127, 64));
  REQUIRE(h.error);
  CHECK(abs(h.value - mpq_class(-2)) <= *h.error);
  CHECK(h.schedule.size() == 7);  // p = 1, 2, ..., 64
  CHECK(homogenize(sig, W("n=3"), 16).value == 0);
  CHECK_THROWS_AS(homogenize(QuasiMorphism("f", Domain::Full, [](const BraidWord&) { return mpq_class(0); }),
                             W("n=2 1"), 4, true),
                  std::invalid_argument);
}

TEST_CASE("homogenization error and conjugation invariance") {
  auto sig = signature_qm(mpq_class(3));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    BraidWord a = random_word(3, 6, rng), w = random_word(3, 6, rng);
    for (int p : {1, 2, 4, 8}) {
      mpq_class d = sig(power(a, 2 * p)) / (2 * p) - sig(power(a, p)) / p;
      CHECK(abs(d) <= mpq_class(3) * (R(1, p) + R(1, 2 * p)));
    }
    auto ha = homogenize(sig, a, 64, true);
    auto hc = homogenize(sig, compose(compose(w, a), inverse(w)), 64, true);
    CHECK(abs(ha.value - hc.value) <= *ha.error + *hc.error);
  }
}

TEST_CASE("defect estimates") {
  CHECK(defect_estimate(exponent_sum_qm(), 3, 500, 20, 1) == 0);
  CHECK(defect_estimate(restrict(linking_qm(1, 2)), 3, 200, 12, 1) == 0);
  mpq_class d = defect_estimate(signature_qm(), 2, 10000, 20, 1);
  CHECK(d >= 0);
  CHECK(d <= 2);  // the assumed bound for two strands
  CHECK(d == 1);  // signature(s1^k) = -sgn(k)(|k| - 1), whose defect is exactly 1
}

TEST_CASE("restrict and transfer") {
  auto lk = exponent_sum_qm();
  auto r = restrict(lk);
  CHECK(r.domain() == Domain::Pure);
  CHECK(r(generator_A(1, 2, 2).word()) == 2);
  CHECK_THROWS_AS(r(W("n=2 1")), DomainError);
  CHECK(r.defect_bound() == lk.defect_bound());
  CHECK(restrict(signature_qm())(W("n=2 1 1")) == -1);

  auto t2 = std::make_shared<const CosetTable>(coset_representatives(2));
  auto tr = transfer(linking_qm(1, 2), t2);
  CHECK(tr.domain() == Domain::Full);
  CHECK(tr(W("n=2 1")) == R(1, 2));
  CHECK(tr(W("n=2")) == 0);
  CHECK(tr.is_homomorphism());
  CHECK_THROWS(transfer(lk, t2));
  CHECK(homogenized_transfer(linking_qm(1, 2), W("n=2 1"), *t2) == R(1, 2));
  CHECK(homogenized_transfer(linking_qm(1, 2), W("n=2"), *t2) == 0);

  auto t3 = coset_representatives(3);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    BraidWord b = random_pure_word(3, 12, rng);
    mpq_class want = R(pairwise_linking(b, 1, 2) + pairwise_linking(b, 1, 3) + pairwise_linking(b, 2, 3), 3);
    CHECK(homogenized_transfer(linking_qm(1, 2), b, t3) == want);
    // direct enumeration of the coset sum
    mpq_class direct = 0;
    for (std::size_t rnk = 0; rnk < t3.size(); ++rnk) {
      const BraidWord& g = t3.rep_by_rank(rnk);
      direct += pairwise_linking(compose(compose(inverse(g), b), g), 1, 2);
    }
    CHECK(direct / 6 == want);
  }
}

TEST_CASE("transfer defect stays below the inner defect") {
  auto table = std::make_shared<const CosetTable>(coset_representatives(3));
  auto sig = signature_qm(mpq_class(3));
  auto tr = transfer(restrict(sig), table);
  CHECK(tr.defect_bound() == sig.defect_bound());
  mpq_class d_tr = defect_estimate(tr, 3, 300, 10, 4);
  mpq_class d_sig = defect_estimate(restrict(sig), 3, 300, 10, 4);
  CHECK(d_tr <= *sig.defect_bound());
  CHECK(d_sig <= *sig.defect_bound());
}

TEST_CASE("quasi-morphism names") {
  CHECK(Q("lk")(W("n=2 1")) == 1);
  CHECK(Q("signature")(W("n=2 1 1 1")) == -2);
  CHECK(Q("trans:lk12")(W("n=2 1")) == R(1, 2));
  CHECK(Q("lk:1,2")(W("n=2 1 1")) == 1);
  CHECK(Q("hom:signature:64")(W("n=2 1 1")) == R(-127, 64));
  CHECK(*Q("hom:signature:64").homogenization_error() == R(2, 64));
  CHECK(Q("null")(W("n=2 1 1 1")) == 0);
  CHECK(Q("lk12 - lk13", 3)(generator_A(1, 3, 3).word()) == -1);
  CHECK(Q("1/2*lk + 2*(lk12)")(W("n=2 1 1")) == 3);
  CHECK(Q("signature").defect_assumed());
  CHECK(*Q("signature", 4).defect_bound() == 4);
  CHECK_THROWS_AS(Q("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(Q("hom:lk"), std::invalid_argument);
  CHECK(Q("lk").is_homomorphism());
  CHECK(*Q("lk").defect_bound() == 0);
}
