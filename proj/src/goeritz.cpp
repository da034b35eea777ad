#include "ggbraid/signature.hpp"

#include <cstdlib>
#include <stdexcept>

namespace gg {

// Regions of the closed-braid diagram: gap 0 (around the axis) and gap n
// (outside) are single regions; gap k in between is cut by the m_k crossings
// of column k into m_k regions. Crossing number t of column k separates
// regions t-1 and t (mod m_k) of gap k.
GoeritzData goeritz_matrix(const BraidWord& a, bool shade_even) {
  const int n = a.strands();
  auto letters = a.letters();
  std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
  for (int l : letters) ++count[static_cast<std::size_t>(std::abs(l))];
  for (int k = 1; k < n; ++k)
    if (count[static_cast<std::size_t>(k)] == 0)
      throw std::invalid_argument("goeritz_matrix needs a non-split braid diagram");

  auto regions_in = [&](int g) { return (g == 0 || g == n) ? 1 : count[static_cast<std::size_t>(g)]; };
  auto is_white = [&](int g) { return (g % 2 == 0) != shade_even; };

  std::vector<int> first_white(static_cast<std::size_t>(n) + 1, -1);
  int whites = 0;
  for (int g = 0; g <= n; ++g)
    if (is_white(g)) {
      first_white[static_cast<std::size_t>(g)] = whites;
      whites += regions_in(g);
    }

  IntMatrix full(whites);
  int mu = 0;
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  auto region_at = [&](int g) {
    if (g == 0 || g == n) return first_white[static_cast<std::size_t>(g)];
    int m = count[static_cast<std::size_t>(g)];
    int r = ((seen[static_cast<std::size_t>(g)] - 1) % m + m) % m;
    return first_white[static_cast<std::size_t>(g)] + r;
  };
  auto join = [&](int r1, int r2, int eta) {
    if (r1 == r2) return;
    full(r1, r1) += eta;
    full(r2, r2) += eta;
    full(r1, r2) -= eta;
    full(r2, r1) -= eta;
  };

  for (int l : letters) {
    const int k = std::abs(l);
    const int eps = l > 0 ? 1 : -1;
    if (is_white(k)) {
      int m = count[static_cast<std::size_t>(k)];
      int t = seen[static_cast<std::size_t>(k)];
      int base = first_white[static_cast<std::size_t>(k)];
      join(base + ((t - 1) % m + m) % m, base + t, -eps);
    } else {
      join(region_at(k - 1), region_at(k + 1), eps);
      mu += eps;
    }
    ++seen[static_cast<std::size_t>(k)];
  }

  IntMatrix reduced(whites > 0 ? whites - 1 : 0);
  for (int i = 1; i < whites; ++i)
    for (int j = 1; j < whites; ++j) reduced(i - 1, j - 1) = full(i, j);
  return {SymmetricIntegerMatrix(std::move(reduced)), mu};
}

int goeritz_signature_oracle(const BraidWord& a, bool shade_even) {
  // Split at empty columns; the signature of a split union is the sum.
  const int n = a.strands();
  auto letters = a.letters();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int l : letters) used[static_cast<std::size_t>(std::abs(l))] = 1;

  int total = 0;
  int lo = 1;
  while (lo <= n) {
    int hi = lo;
    while (hi < n && used[static_cast<std::size_t>(hi)]) ++hi;
    // strands lo..hi form one block
    std::vector<int> sub;
    for (int l : letters) {
      int k = std::abs(l);
      if (k >= lo && k < hi) sub.push_back(l > 0 ? k - lo + 1 : -(k - lo + 1));
    }
    auto data = goeritz_matrix(BraidWord(hi - lo + 1, std::move(sub)), shade_even);
    total += inertia_charpoly(data.matrix).signature() - data.correction;
    lo = hi + 1;
  }
  return total;
}

}  // namespace gg
