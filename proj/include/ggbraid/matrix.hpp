#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gg {

/// Dense square integer matrix, row-major.
class IntMatrix {
 public:
  explicit IntMatrix(int dim = 0) : dim_(dim), a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0) {}

  int dim() const { return dim_; }
  long long& operator()(int i, int j) { return a_[idx(i, j)]; }
  long long operator()(int i, int j) const { return a_[idx(i, j)]; }

  IntMatrix transpose() const;
  bool is_symmetric() const;
  std::string to_string() const;
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
  }
  int dim_;
  std::vector<long long> a_;
};

/// IntMatrix known to be symmetric (checked on construction).
class SymmetricIntegerMatrix {
 public:
  explicit SymmetricIntegerMatrix(IntMatrix m);
  /// V + V^T.
  static SymmetricIntegerMatrix symmetrize(const IntMatrix& v);

  int dim() const { return m_.dim(); }
  long long operator()(int i, int j) const { return m_(i, j); }
  const IntMatrix& matrix() const { return m_; }

 private:
  IntMatrix m_;
};

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const { return positive - negative; }
  bool operator==(const Inertia&) const = default;
};

/// Exact inertia by symmetric congruence diagonalization over Q.
Inertia inertia_congruence(const SymmetricIntegerMatrix& m);

/// Exact inertia from the characteristic polynomial (Faddeev-LeVerrier over Z)
/// and Descartes' rule of signs, which is exact for real-rooted polynomials.
/// Independent of inertia_congruence; used as a cross-check.
Inertia inertia_charpoly(const SymmetricIntegerMatrix& m);

/// Coefficients c_0..c_d of det(tI - A), c_d = 1.
std::vector<mpz_class> characteristic_polynomial(const IntMatrix& a);

}  // namespace gg
