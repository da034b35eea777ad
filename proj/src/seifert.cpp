#include "ggbraid/signature.hpp"

#include <cstdlib>

namespace gg {

namespace {

struct Loop {
  int column;
  std::size_t first;   // word position of the lower band
  std::size_t second;  // word position of the upper band
  int sign_first;
  int sign_second;
};

}  // namespace

IntMatrix seifert_matrix(const BraidWord& a) {
  const int n = a.strands();
  auto letters = a.letters();
  std::vector<std::vector<std::size_t>> bands(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < letters.size(); ++p)
    bands[static_cast<std::size_t>(std::abs(letters[p]))].push_back(p);

  std::vector<Loop> loops;
  std::vector<std::size_t> column_start(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k < n; ++k) {
    column_start[static_cast<std::size_t>(k)] = loops.size();
    const auto& b = bands[static_cast<std::size_t>(k)];
    for (std::size_t t = 0; t + 1 < b.size(); ++t)
      loops.push_back({k, b[t], b[t + 1], letters[b[t]] > 0 ? 1 : -1, letters[b[t + 1]] > 0 ? 1 : -1});
  }
  column_start[static_cast<std::size_t>(n)] = loops.size();

  IntMatrix v(static_cast<int>(loops.size()));
  for (std::size_t g = 0; g < loops.size(); ++g) {
    const Loop& L = loops[g];
    const int gi = static_cast<int>(g);
    if (L.sign_first > 0 && L.sign_second > 0)
      v(gi, gi) = -1;
    else if (L.sign_first < 0 && L.sign_second < 0)
      v(gi, gi) = 1;

    // next loop in the same column shares the band L.second
    if (g + 1 < loops.size() && loops[g + 1].column == L.column) {
      if (L.sign_second > 0)
        v(gi, gi + 1) = 1;
      else
        v(gi + 1, gi) = -1;
    }

    // loops in the column to the right whose bands interleave with ours
    if (L.column + 1 < n) {
      for (std::size_t h = column_start[static_cast<std::size_t>(L.column + 1)];
           h < column_start[static_cast<std::size_t>(L.column + 2)]; ++h) {
        const Loop& M = loops[h];
        const int hi = static_cast<int>(h);
        if (L.first < M.first && M.first < L.second && L.second < M.second)
          v(gi, hi) = -1;
        else if (M.first < L.first && L.first < M.second && M.second < L.second)
          v(hi, gi) = 1;
      }
    }
  }
  return v;
}

int signature(const BraidWord& a) {
  return inertia_congruence(SymmetricIntegerMatrix::symmetrize(seifert_matrix(a))).signature();
}

}  // namespace gg
