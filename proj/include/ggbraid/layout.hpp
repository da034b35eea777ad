#pragma once

#include <random>
#include <string>
#include <vector>

#include "ggbraid/braid.hpp"
#include "ggbraid/dynamics.hpp"

namespace gg {

struct Disk {
  Point center;
  double radius = 0;
  bool contains(const Disk& other) const;
  bool disjoint(const Disk& other) const;
  bool operator==(const Disk&) const = default;
};

/// Concentric disks W_{i,j} subset V_{i,j} for one pair; the twist for A_{i,j}
/// is rigid on W and supported in V.
struct PairRegion {
  int i = 1, j = 2;
  Disk W, V;
  bool operator==(const PairRegion&) const = default;
};

/// Disks U_1..U_n and the pair regions used by the realizer.
///
/// A factor A_{i,j} is realized by one twist when (i,j) has a region. For
/// j > i+1 without a region, strand j is instead carried to U_{i+1} by
/// half-twists of adjacent pairs and brought back afterwards; that needs
/// regions for every (k,k+1), i <= k < j, whose half-turn swaps U_k and
/// U_{k+1} (equal radii, W centered at the midpoint).
class DiskLayout {
 public:
  /// Throws GeometryError listing every violated condition.
  DiskLayout(std::vector<Disk> U, std::vector<PairRegion> pairs);

  int strands() const { return static_cast<int>(U_.size()); }
  const std::vector<Disk>& U() const { return U_; }
  const std::vector<PairRegion>& pairs() const { return pairs_; }
  const PairRegion* pair(int i, int j) const;
  double area(int i) const;  // area of U_i, 1-based
  std::vector<double> areas() const;
  /// Whether A_{i,j} can be realized (directly or by conjugation).
  bool covers(int i, int j) const;
  bool swappable(int k) const;  // half-turn of region (k,k+1) exchanges U_k and U_{k+1}

  /// Every violated condition, empty if valid.
  static std::vector<std::string> problems(const std::vector<Disk>& U, const std::vector<PairRegion>& pairs);

  bool operator==(const DiskLayout&) const = default;

 private:
  std::vector<Disk> U_;
  std::vector<PairRegion> pairs_;
};

/// Built-in layouts. n = 2: two disks of radius `radius` (default 0.3)
/// about the origin, one region. n = 3: a layout with a single-twist
/// region for every pair. n = 4: collinear disks, adjacent regions only.
DiskLayout default_layout(int n, double radius = 0.0);
/// Collinear layout (n <= 4) with regions for adjacent pairs only.
DiskLayout collinear_layout(int n);

/// One twist (or half-twist chain) per factor, in order. Throws
/// std::invalid_argument if a factor's pair is not covered.
FlowPath realizer(const BandWord& beta, const DiskLayout& layout);
/// Splits the word into A_{i,j}^{+-1} factors first.
FlowPath realizer(const PureBraid& beta, const DiskLayout& layout);

/// Uniform point in a disk.
Point sample_in_disk(std::mt19937_64& rng, const Disk& d);

}  // namespace gg
