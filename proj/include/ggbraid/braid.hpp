#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gg {

class BraidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by BraidWord::parse; `position()` is the character offset of the
/// offending token in the input text.
class ParseError : public BraidError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : BraidError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A bijection of {0, ..., n-1}. Printed 1-based.
///
/// Composition follows function notation: (p * q)(i) = p(q(i)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Swaps the 0-based points a and b.
  static Permutation transposition(int n, int a, int b);
  /// Inverse of rank(); 0 <= r < n!.
  static Permutation from_rank(int n, std::size_t r);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  int inversions() const;
  /// Smallest k >= 1 with p^k = identity.
  int order() const;
  /// Lexicographic index among all permutations of the same size.
  std::size_t rank() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// A word in the Artin generators of B_n. Letter k > 0 is sigma_k, k < 0 is
/// sigma_{|k|}^{-1}; always 1 <= |k| <= n-1.
///
/// Words are stored as given. compose/inverse/power return freely reduced
/// words; parse and the constructor do not reduce, so the text form round
/// trips exactly.
class BraidWord {
 public:
  explicit BraidWord(int strands = 1, std::vector<int> letters = {});

  /// Text form "n=<strands> l1 l2 ...", e.g. "n=3 1 1 -2".
  static BraidWord parse(std::string_view text);

  int strands() const { return strands_; }
  std::span<const int> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  BraidWord reduced() const;
  std::string to_string() const;

  bool operator==(const BraidWord&) const = default;

 private:
  int strands_;
  std::vector<int> letters_;
};

/// Strand counts must match; the result is freely reduced.
BraidWord compose(const BraidWord& a, const BraidWord& b);
BraidWord inverse(const BraidWord& a);
BraidWord power(const BraidWord& a, int p);

/// Product of the transpositions (|k|, |k|+1) over the letters, left to
/// right. images()[q] is the starting position of the strand that ends at
/// position q, so permutation_of(ab) = permutation_of(a) * permutation_of(b).
Permutation permutation_of(const BraidWord& a);
bool is_pure(const BraidWord& a);
int exponent_sum(const BraidWord& a);

class PureBraid {
 public:
  /// Throws BraidError if `word` is not pure.
  explicit PureBraid(BraidWord word);
  const BraidWord& word() const { return word_; }
  int strands() const { return word_.strands(); }

 private:
  BraidWord word_;
};

/// The band generator A_{i,j} (1-based, i < j <= n):
/// sigma_{j-1} ... sigma_{i+1} sigma_i^2 sigma_{i+1}^{-1} ... sigma_{j-1}^{-1}.
PureBraid generator_A(int i, int j, int n);

/// One factor A_{i,j}^{exponent} of a pure braid written in band generators.
struct BandFactor {
  int i = 1;
  int j = 2;
  int exponent = 1;  // +1 or -1
  bool operator==(const BandFactor&) const = default;
};

struct BandWord {
  int strands = 2;
  std::vector<BandFactor> factors;

  BraidWord expand() const;
  /// Text form "n=<strands> A1,2 A2,3^-1 ..."; "n=<strands>" alone is empty.
  static BandWord parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const BandWord&) const = default;
};

/// Splits an unreduced concatenation of A_{i,j}^{+-1} words back into
/// factors. The patterns are prefix-free, so the split is unique when it
/// exists; throws BraidError otherwise.
BandWord factor_into_band_generators(const BraidWord& a);

/// Positive permutation braid for each sigma in S_n, indexed by
/// Permutation::rank().
class CosetTable {
 public:
  explicit CosetTable(int strands, std::vector<BraidWord> reps);

  int strands() const { return strands_; }
  std::size_t size() const { return reps_.size(); }
  const BraidWord& rep(const Permutation& sigma) const;
  const BraidWord& rep_by_rank(std::size_t r) const { return reps_.at(r); }

 private:
  int strands_;
  std::vector<BraidWord> reps_;
};

inline constexpr int kDefaultMaxCosetStrands = 6;

/// Throws BraidError when n exceeds max_strands (the table has n! entries).
CosetTable coset_representatives(int n, int max_strands = kDefaultMaxCosetStrands);

/// Positive permutation braid with permutation_of(result) = sigma; letter
/// count equals sigma.inversions().
BraidWord permutation_braid(const Permutation& sigma);

}  // namespace gg
