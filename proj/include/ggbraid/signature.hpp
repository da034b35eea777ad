#pragma once

#include "ggbraid/braid.hpp"
#include "ggbraid/matrix.hpp"

namespace gg {

/// Seifert matrix V of the canonical surface of the closed braid: one disk
/// per strand, one half-twisted band per letter, one generator per pair of
/// consecutive bands in the same column.
IntMatrix seifert_matrix(const BraidWord& a);

/// Signature of the closure, sig(V + V^T). Convention: the closure of
/// sigma_1^3 (right-handed trefoil) has signature -2.
int signature(const BraidWord& a);

/// Signature of the closure from a checkerboard coloring of the closed-braid
/// diagram (Gordon-Litherland: sig(G) - mu). `shade_even` picks which of the
/// two colorings is used; both give the same answer.
int goeritz_signature_oracle(const BraidWord& a, bool shade_even = false);

/// Goeritz matrix of the coloring above with one white region deleted, and
/// the correction term mu.
struct GoeritzData {
  SymmetricIntegerMatrix matrix{IntMatrix(0)};
  int correction = 0;
};
/// Requires every column 1..n-1 to contain a letter (non-split diagram).
GoeritzData goeritz_matrix(const BraidWord& a, bool shade_even = false);

}  // namespace gg
