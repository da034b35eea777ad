#include <doctest.h>

#include <random>

#include "ggbraid/braid.hpp"
#include "ggbraid/quasimorphism.hpp"

using namespace gg;

namespace {

BraidWord W(const char* text) { return BraidWord::parse(text); }

// Images of the product of transpositions, computed independently by
// moving labelled tokens along the letters.
std::vector<int> track(const BraidWord& a) {
  std::vector<int> at(static_cast<std::size_t>(a.strands()));
  for (int k = 0; k < a.strands(); ++k) at[static_cast<std::size_t>(k)] = k;
  for (int l : a.letters()) std::swap(at[static_cast<std::size_t>(std::abs(l) - 1)], at[static_cast<std::size_t>(std::abs(l))]);
  return at;
}

}  // namespace

TEST_CASE("text format round trips and reports parse positions") {
  for (const char* t : {"n=1", "n=3 1 1 -2", "n=4 -3 2 1 -1"}) CHECK(W(t).to_string() == t);
  CHECK(W("n=2 1 -1").length() == 2);  // parse does not reduce
  try {
    W("n=3 1 x");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(W("n=3 3"), ParseError);
  CHECK_THROWS_AS(W("n=3 0"), ParseError);
  CHECK_THROWS_AS(W("3 1"), ParseError);
}

TEST_CASE("compose, inverse and power") {
  CHECK(compose(W("n=2 1"), W("n=2 -1")) == W("n=2"));
  CHECK(compose(W("n=2 1"), W("n=2")) == W("n=2 1"));
  CHECK(compose(W("n=3 1 2"), W("n=3 -2 1")) == W("n=3 1 1"));
  CHECK_THROWS_AS(compose(W("n=2 1"), W("n=3 1")), BraidError);
  CHECK(inverse(W("n=3 1 2")) == W("n=3 -2 -1"));
  CHECK(inverse(W("n=3")) == W("n=3"));
  CHECK(inverse(W("n=2 -1")) == W("n=2 1"));
  CHECK(power(W("n=2 1"), 3) == W("n=2 1 1 1"));
  CHECK(power(W("n=2 1"), 0) == W("n=2"));
  CHECK(power(W("n=2 1 1"), -1) == W("n=2 -1 -1"));
  CHECK(W("n=3 1 2 -2 -1 2").reduced() == W("n=3 2"));
  CHECK(W("n=3 1 2 -2 -1 2").reduced().reduced() == W("n=3 2"));
}

TEST_CASE("permutation_of") {
  CHECK(permutation_of(W("n=2 1")) == Permutation::transposition(2, 0, 1));
  CHECK(permutation_of(W("n=2 1 1")).is_identity());
  CHECK(permutation_of(W("n=3 1 2")).to_string() == "2 3 1");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + trial % 5;
    BraidWord a = random_word(n, 12, rng), b = random_word(n, 12, rng);
    CHECK(permutation_of(compose(a, b)) == permutation_of(a) * permutation_of(b));
    CHECK(permutation_of(a).images() == track(a));
    CHECK(compose(a, inverse(a)).empty());
    CHECK(is_pure(a) == permutation_of(a).is_identity());
  }
}

TEST_CASE("Permutation basics") {
  for (int n = 1; n <= 5; ++n) {
    std::size_t count = 1;
    for (int k = 2; k <= n; ++k) count *= static_cast<std::size_t>(k);
    for (std::size_t r = 0; r < count; ++r) {
      Permutation p = Permutation::from_rank(n, r);
      CHECK(p.rank() == r);
      CHECK((p * p.inverse()).is_identity());
      Permutation q = p;
      for (int k = 1; k < p.order(); ++k) {
        CHECK_FALSE(q.is_identity());
        q = q * p;
      }
      CHECK(q.is_identity());
    }
  }
  CHECK_THROWS(Permutation({0, 0, 1}));
}

TEST_CASE("generator_A") {
  CHECK(generator_A(1, 2, 2).word() == W("n=2 1 1"));
  CHECK(generator_A(1, 3, 3).word() == W("n=3 2 1 1 -2"));
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        auto a = generator_A(i, j, n);
        CHECK(is_pure(a.word()));
        CHECK(exponent_sum(a.word()) == 2);
        for (int k = 1; k < n; ++k)
          for (int l = k + 1; l <= n; ++l) CHECK(pairwise_linking(a, k, l) == (k == i && l == j ? 1 : 0));
      }
  CHECK_THROWS(generator_A(2, 2, 3));
  CHECK_THROWS(generator_A(1, 4, 3));
  CHECK_THROWS_AS(PureBraid(W("n=2 1")), BraidError);
}

TEST_CASE("band words") {
  BandWord b = BandWord::parse("n=3 A1,2 A2,3^-1 A1,3");
  CHECK(b.to_string() == "n=3 A1,2 A2,3^-1 A1,3");
  CHECK(BandWord::parse("n=3").factors.empty());
  BraidWord e = b.expand();
  CHECK(factor_into_band_generators(e) == b);
  CHECK(e.reduced() == compose(compose(generator_A(1, 2, 3).word(), inverse(generator_A(2, 3, 3).word())),
                     generator_A(1, 3, 3).word()));
  CHECK_THROWS_AS(factor_into_band_generators(W("n=3 1 2")), BraidError);
  CHECK_THROWS(BandWord::parse("n=3 A2,1"));
}

TEST_CASE("coset representatives") {
  CHECK(coset_representatives(1).size() == 1);
  CHECK(coset_representatives(1).rep_by_rank(0).empty());
  auto t2 = coset_representatives(2);
  CHECK(t2.rep(Permutation::identity(2)).empty());
  CHECK(t2.rep(Permutation::transposition(2, 0, 1)) == W("n=2 1"));
  for (int n = 1; n <= 5; ++n) {
    auto t = coset_representatives(n);
    std::size_t count = 1;
    for (int k = 2; k <= n; ++k) count *= static_cast<std::size_t>(k);
    REQUIRE(t.size() == count);
    for (std::size_t r = 0; r < count; ++r) {
      Permutation s = Permutation::from_rank(n, r);
      const BraidWord& w = t.rep(s);
      CHECK(permutation_of(w) == s);
      CHECK(static_cast<int>(w.length()) == s.inversions());
      for (int l : w.letters()) CHECK(l > 0);
    }
  }
  CHECK_THROWS_AS(coset_representatives(7), BraidError);
  CHECK_THROWS_AS(coset_representatives(4, 3), BraidError);
}
