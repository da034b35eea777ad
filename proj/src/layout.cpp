#include "ggbraid/layout.hpp"

#include <cmath>
#include <numbers>

namespace gg {

bool Disk::contains(const Disk& other) const { return distance(center, other.center) + other.radius < radius; }
bool Disk::disjoint(const Disk& other) const { return distance(center, other.center) > radius + other.radius; }

std::vector<std::string> DiskLayout::problems(const std::vector<Disk>& U, const std::vector<PairRegion>& pairs) {
  std::vector<std::string> out;
  const int n = static_cast<int>(U.size());
  auto name = [](const char* d, int i, int j) {
    return std::string(d) + "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
  };
  if (n < 1) out.push_back("layout needs at least one disk U_i");
  for (int i = 0; i < n; ++i) {
    const Disk& u = U[static_cast<std::size_t>(i)];
    if (!(u.radius > 0)) out.push_back("U_" + std::to_string(i + 1) + " has non-positive radius");
    if (!(norm(u.center) + u.radius < 1)) out.push_back("U_" + std::to_string(i + 1) + " leaves the unit disk");
    for (int j = i + 1; j < n; ++j)
      if (!u.disjoint(U[static_cast<std::size_t>(j)]))
        out.push_back("U_" + std::to_string(i + 1) + " and U_" + std::to_string(j + 1) + " intersect");
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const PairRegion& r = pairs[p];
    if (r.i < 1 || r.j <= r.i || r.j > n) {
      out.push_back("pair (" + std::to_string(r.i) + "," + std::to_string(r.j) + ") out of range");
      continue;
    }
    for (std::size_t q = 0; q < p; ++q)
      if (pairs[q].i == r.i && pairs[q].j == r.j) out.push_back("duplicate region for " + name("W", r.i, r.j));
    if (!(r.W.center == r.V.center)) out.push_back(name("W", r.i, r.j) + " and " + name("V", r.i, r.j) + " are not concentric");
    if (!(r.W.radius > 0 && r.W.radius < r.V.radius))
      out.push_back(name("W", r.i, r.j) + " must be a proper subdisk of " + name("V", r.i, r.j));
    if (!(norm(r.V.center) + r.V.radius < 1)) out.push_back(name("V", r.i, r.j) + " leaves the unit disk");
    for (int k : {r.i, r.j})
      if (!r.W.contains(U[static_cast<std::size_t>(k - 1)]))
        out.push_back("U_" + std::to_string(k) + " is not inside " + name("W", r.i, r.j));
    for (int k = 1; k <= n; ++k)
      if (k != r.i && k != r.j && !r.V.disjoint(U[static_cast<std::size_t>(k - 1)]))
        out.push_back("U_" + std::to_string(k) + " meets " + name("V", r.i, r.j));
  }
  return out;
}

DiskLayout::DiskLayout(std::vector<Disk> U, std::vector<PairRegion> pairs)
    : U_(std::move(U)), pairs_(std::move(pairs)) {
  auto errs = problems(U_, pairs_);
  if (!errs.empty()) {
    std::string msg = "invalid disk layout:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw GeometryError(msg);
  }
}

const PairRegion* DiskLayout::pair(int i, int j) const {
  for (const auto& r : pairs_)
    if (r.i == i && r.j == j) return &r;
  return nullptr;
}

double DiskLayout::area(int i) const {
  double r = U_.at(static_cast<std::size_t>(i - 1)).radius;
  return std::numbers::pi * r * r;
}

std::vector<double> DiskLayout::areas() const {
  std::vector<double> a;
  for (int i = 1; i <= strands(); ++i) a.push_back(area(i));
  return a;
}

bool DiskLayout::swappable(int k) const {
  const PairRegion* r = pair(k, k + 1);
  if (!r) return false;
  const Disk &a = U_[static_cast<std::size_t>(k - 1)], &b = U_[static_cast<std::size_t>(k)];
  Point mid{0.5 * (a.center.x + b.center.x), 0.5 * (a.center.y + b.center.y)};
  return a.radius == b.radius && distance(mid, r->W.center) < 1e-12;
}

bool DiskLayout::covers(int i, int j) const {
  if (pair(i, j)) return true;
  if (!pair(i, i + 1)) return false;
  for (int k = i + 1; k < j; ++k)
    if (!swappable(k)) return false;
  return true;
}

namespace {

Stage twist_stage(const PairRegion& r, double angle) {
  return {TwistMap(r.W.center, r.W.radius, r.V.radius, angle), 1.0};
}

}  // namespace

FlowPath realizer(const BandWord& beta, const DiskLayout& layout) {
  if (beta.strands != layout.strands())
    throw std::invalid_argument("realizer: braid has " + std::to_string(beta.strands) + " strands, layout has " +
                                std::to_string(layout.strands()));
  const double turn = 2 * std::numbers::pi;
  std::vector<Stage> stages;
  for (const auto& f : beta.factors) {
    if (const PairRegion* r = layout.pair(f.i, f.j)) {
      stages.push_back(twist_stage(*r, f.exponent * turn));
      continue;
    }
    if (!layout.covers(f.i, f.j))
      throw std::invalid_argument("realizer: layout has no region for pair (" + std::to_string(f.i) + "," +
                                  std::to_string(f.j) + ")");
    // carry strand j down to position i+1 behind the intermediate strands
    for (int k = f.j - 1; k > f.i; --k) stages.push_back(twist_stage(*layout.pair(k, k + 1), turn / 2));
    stages.push_back(twist_stage(*layout.pair(f.i, f.i + 1), f.exponent * turn));
    for (int k = f.i + 1; k < f.j; ++k) stages.push_back(twist_stage(*layout.pair(k, k + 1), -turn / 2));
  }
  return FlowPath(std::move(stages));
}

FlowPath realizer(const PureBraid& beta, const DiskLayout& layout) {
  return realizer(factor_into_band_generators(beta.word()), layout);
}

DiskLayout collinear_layout(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("collinear layout supports 2 <= n <= 4");
  const double spacing = 0.4, r = 0.07;
  std::vector<Disk> U;
  for (int k = 0; k < n; ++k) U.push_back({{(k - 0.5 * (n - 1)) * spacing, 0.0}, r});
  std::vector<PairRegion> pairs;
  for (int k = 1; k < n; ++k) {
    Point mid{0.5 * (U[static_cast<std::size_t>(k - 1)].center.x + U[static_cast<std::size_t>(k)].center.x), 0.0};
    pairs.push_back({k, k + 1, {mid, 0.28}, {mid, 0.31}});
  }
  return DiskLayout(std::move(U), std::move(pairs));
}

DiskLayout default_layout(int n, double radius) {
  if (n == 1) return DiskLayout({{{0.0, 0.0}, radius > 0 ? radius : 0.3}}, {});
  if (n == 2) {
    const double r = radius > 0 ? radius : 0.3;
    if (r > 0.45) throw std::invalid_argument("two-strand layout radius must be <= 0.45");
    const double d = r + 0.01;
    Disk W{{0, 0}, d + r + 0.01}, V{{0, 0}, d + r + 0.04};
    return DiskLayout({{{-d, 0}, r}, {{d, 0}, r}}, {{1, 2, W, V}});
  }
  if (n == 3) {
    // every pair has its own twist region: the two strands of a pair lie in
    // W, the intermediate strand sits below the orbit, and the inner strand's
    // sweep misses the other disks in x
    const double r = 0.1;
    std::vector<Disk> U{{{-0.2078, 0.1664}, r}, {{0.2334, -0.5461}, r}, {{0.4639, 0.1717}, r}};
    auto region = [](int i, int j, Point w, double rin) {
      return PairRegion{i, j, {w, rin}, {w, rin + 0.02}};
    };
    std::vector<PairRegion> pairs{region(1, 2, {-0.1915, -0.2582}, 0.6386),
                                  region(1, 3, {-0.1121, 0.2300}, 0.7042),
                                  region(2, 3, {0.4042, -0.2051}, 0.5067)};
    return DiskLayout(std::move(U), std::move(pairs));
  }
  if (n == 4) return collinear_layout(4);
  throw std::invalid_argument("no built-in layout for " + std::to_string(n) + " strands");
}

Point sample_in_disk(std::mt19937_64& rng, const Disk& d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double rho = d.radius * std::sqrt(u(rng)), th = 2 * std::numbers::pi * u(rng);
  return {d.center.x + rho * std::cos(th), d.center.y + rho * std::sin(th)};
}

}  // namespace gg
