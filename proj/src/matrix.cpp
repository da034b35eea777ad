#include "ggbraid/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace gg {

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

SymmetricIntegerMatrix::SymmetricIntegerMatrix(IntMatrix m) : m_(std::move(m)) {
  if (!m_.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
}

SymmetricIntegerMatrix SymmetricIntegerMatrix::symmetrize(const IntMatrix& v) {
  IntMatrix s(v.dim());
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < v.dim(); ++j) s(i, j) = v(i, j) + v(j, i);
  return SymmetricIntegerMatrix(std::move(s));
}

Inertia inertia_congruence(const SymmetricIntegerMatrix& m) {
  const int d = m.dim();
  std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(d), std::vector<mpq_class>(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<long>(m(i, j));

  auto at = [&](int i, int j) -> mpq_class& { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  // Row and column operation R_i += c R_j, C_i += c C_j keeps symmetry.
  auto add_to = [&](int i, int j, const mpq_class& c, int from) {
    for (int k = from; k < d; ++k)
      if (sgn(at(j, k)) != 0) at(i, k) += c * at(j, k);
    for (int k = from; k < d; ++k)
      if (sgn(at(k, j)) != 0) at(k, i) += c * at(k, j);
  };

  Inertia out;
  for (int k = 0; k < d; ++k) {
    if (sgn(at(k, k)) == 0) {
      int p = -1;
      for (int i = k + 1; i < d; ++i)
        if (sgn(at(i, i)) != 0) { p = i; break; }
      if (p >= 0) {
        std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(p)]);
        for (int i = 0; i < d; ++i) std::swap(at(i, k), at(i, p));
      } else {
        int q = -1;
        for (int i = k + 1; i < d; ++i)
          if (sgn(at(k, i)) != 0) { q = i; break; }
        if (q < 0) {
          ++out.zero;
          continue;
        }
        // diagonal is zero here, so (k,k) becomes 2*a(k,q) != 0
        add_to(k, q, mpq_class(1), k);
      }
    }
    const mpq_class pivot = at(k, k);
    for (int i = k + 1; i < d; ++i) {
      if (sgn(at(i, k)) == 0) continue;
      mpq_class c = -at(i, k) / pivot;
      for (int j = k; j < d; ++j)
        if (sgn(at(k, j)) != 0) at(i, j) += c * at(k, j);
    }
    for (int i = k + 1; i < d; ++i) at(k, i) = 0;
    for (int i = k + 1; i < d; ++i) at(i, k) = 0;
    if (sgn(pivot) > 0)
      ++out.positive;
    else
      ++out.negative;
  }
  return out;
}

std::vector<mpz_class> characteristic_polynomial(const IntMatrix& a) {
  const int n = a.dim();
  std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;
  if (n == 0) return c;
  std::vector<mpz_class> A(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[static_cast<std::size_t>(i * n + j)] = static_cast<long>(a(i, j));
  // M_1 = I; c_{n-k} = -tr(A M_k)/k; M_{k+1} = A M_k + c_{n-k} I
  std::vector<mpz_class> M(static_cast<std::size_t>(n * n)), AM(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i * n + i)] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpz_class s = 0;
        for (int l = 0; l < n; ++l) {
          const mpz_class& x = A[static_cast<std::size_t>(i * n + l)];
          if (sgn(x) != 0) s += x * M[static_cast<std::size_t>(l * n + j)];
        }
        AM[static_cast<std::size_t>(i * n + j)] = s;
      }
    mpz_class tr = 0;
    for (int i = 0; i < n; ++i) tr += AM[static_cast<std::size_t>(i * n + i)];
    mpz_class ck = -tr;
    if (mpz_divisible_ui_p(ck.get_mpz_t(), static_cast<unsigned long>(k)) == 0)
      throw std::logic_error("non-integral characteristic polynomial coefficient");
    mpz_divexact_ui(ck.get_mpz_t(), ck.get_mpz_t(), static_cast<unsigned long>(k));
    c[static_cast<std::size_t>(n - k)] = ck;
    M = AM;
    for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i * n + i)] += ck;
  }
  return c;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Inertia inertia_charpoly(const SymmetricIntegerMatrix& m) {
  auto c = characteristic_polynomial(m.matrix());
  const int n = m.dim();
  Inertia out;
  while (out.zero < n && sgn(c[static_cast<std::size_t>(out.zero)]) == 0) ++out.zero;
  std::vector<int> pos, neg;
  for (int k = out.zero; k <= n; ++k) {
    int s = sgn(c[static_cast<std::size_t>(k)]);
    pos.push_back(s);
    neg.push_back((k % 2) ? -s : s);
  }
  out.positive = sign_changes(pos);
  out.negative = sign_changes(neg);
  if (out.positive + out.negative + out.zero != n)
    throw std::logic_error("characteristic polynomial is not real-rooted");
  return out;
}

}  // namespace gg
