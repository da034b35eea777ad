#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ggbraid/braid.hpp"

namespace gg {

enum class Domain { Full, Pure };

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real-valued function on B_n (or P_n) with bounded defect. Values are
/// exact rationals.
class QuasiMorphism {
 public:
  using Evaluator = std::function<mpq_class(const BraidWord&)>;

  QuasiMorphism(std::string name, Domain domain, Evaluator eval);

  const std::string& name() const { return name_; }
  Domain domain() const { return domain_; }
  /// Upper bound for D(phi) when known.
  const std::optional<mpq_class>& defect_bound() const { return defect_bound_; }
  bool is_homomorphism() const { return homomorphism_; }
  bool is_homogeneous() const { return homogeneous_; }
  /// True when the defect bound is an assumption rather than a proven value.
  bool defect_assumed() const { return defect_assumed_; }
  /// Bound on |phi(a) - phi~(a)| when this evaluator approximates a
  /// homogeneous quasi-morphism (e.g. "hom:signature:64"); 0 if homogeneous.
  const std::optional<mpq_class>& homogenization_error() const { return hom_error_; }

  QuasiMorphism& set_defect_bound(std::optional<mpq_class> d, bool assumed = false);
  QuasiMorphism& set_homomorphism(bool h);
  QuasiMorphism& set_homogeneous(bool h);
  QuasiMorphism& set_homogenization_error(std::optional<mpq_class> e);
  QuasiMorphism& rename(std::string name);

  /// Throws DomainError if the domain is P_n and `a` is not pure.
  mpq_class operator()(const BraidWord& a) const;
  /// Skips the purity check (caller guarantees it).
  mpq_class eval_unchecked(const BraidWord& a) const { return eval_(a); }

 private:
  std::string name_;
  Domain domain_;
  Evaluator eval_;
  std::optional<mpq_class> defect_bound_;
  std::optional<mpq_class> hom_error_;
  bool homomorphism_ = false;
  bool homogeneous_ = false;
  bool defect_assumed_ = false;
};

/// Total exponent sum ("lk"): a homomorphism B_n -> Z.
QuasiMorphism exponent_sum_qm();
/// lk_{i,j} on P_n (1-based).
QuasiMorphism linking_qm(int i, int j);
/// Signature of the closure. D(signature) is not known in closed form;
/// `assumed_defect` is used as the bound and flagged as assumed.
QuasiMorphism signature_qm(std::optional<mpq_class> assumed_defect = std::nullopt);
QuasiMorphism null_qm();

/// Same evaluator with domain P_n.
QuasiMorphism restrict(const QuasiMorphism& phi);

/// Coset transfer of a quasi-morphism on P_n to B_n.
QuasiMorphism transfer(const QuasiMorphism& phi, std::shared_ptr<const CosetTable> table);

/// a -> phi(a^p)/p, approximating the homogenization with error D/p.
QuasiMorphism homogenized_qm(const QuasiMorphism& phi, int p);

/// sum_k c_k phi_k. Domain is P_n if any term is.
QuasiMorphism linear_combination(const std::vector<std::pair<mpq_class, QuasiMorphism>>& terms);

/// Half the signed number of crossings between the strands starting at
/// 1-based positions i and j. Throws DomainError on non-pure input.
int pairwise_linking(const BraidWord& a, int i, int j);
int pairwise_linking(const PureBraid& a, int i, int j);

/// Settings used when building quasi-morphisms from names.
struct QmContext {
  int strands = 2;
  /// Assumed D(signature); defaults to the strand count when unset.
  std::optional<mpq_class> signature_defect;
  int max_coset_strands = kDefaultMaxCosetStrands;
};

/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := [rational '*'] factor
///   factor := '(' expr ')' | 'lk' | 'lk:' i ',' j | 'lk' digit digit
///           | 'signature' | 'null' | 'trans:' factor | 'hom:' factor ':' p
/// Throws std::invalid_argument for unknown names.
QuasiMorphism parse_qm(std::string_view text, const QmContext& ctx);

struct HomogenizeResult {
  mpq_class value;
  std::optional<mpq_class> error;  // D/p_max when D is known
  std::vector<std::pair<int, mpq_class>> schedule;  // (p, phi(a^p)/p), p = 1,2,4,...
};

/// phi(a^p_max)/p_max with the Fekete error bound. Throws std::invalid_argument
/// if `require_error` and phi has no defect bound.
HomogenizeResult homogenize(const QuasiMorphism& phi, const BraidWord& a, int p_max, bool require_error = false);

/// Max |phi(ab) - phi(a) - phi(b)| over seeded random pairs with lengths up
/// to `word_length`. Pairs are pure when phi's domain is P_n.
mpq_class defect_estimate(const QuasiMorphism& phi, int strands, int trials, int word_length, std::uint64_t seed);

/// (1/(n! k)) sum_sigma phi(gamma_sigma^-1 beta^k gamma_sigma), k the order
/// of the permutation of beta. Exact when phi is homogeneous.
mpq_class homogenized_transfer(const QuasiMorphism& phi, const BraidWord& beta, const CosetTable& table);

/// Random word with uniform length in [0, max_length] and uniform letters.
BraidWord random_word(int strands, int max_length, std::mt19937_64& rng);
/// Random pure braid: a random word followed by the positive permutation
/// braid that undoes its permutation.
BraidWord random_pure_word(int strands, int max_length, std::mt19937_64& rng);

std::string to_decimal(const mpq_class& q, int digits = 12);
double to_double(const mpq_class& q);

}  // namespace gg
