#include <algorithm>
#include <cmath>
#include <numeric>

#include "ggbraid/dynamics.hpp"

namespace gg {

namespace {

struct Event {
  double s;
  int a, b;  // strand labels
  double ya, yb;
};

std::vector<int> x_order(const std::vector<Point>& pts) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return pts[static_cast<std::size_t>(i)].x < pts[static_cast<std::size_t>(j)].x;
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k)
    if (pts[static_cast<std::size_t>(order[k])].x == pts[static_cast<std::size_t>(order[k + 1])].x)
      throw DegenerateError("two strands share an x-coordinate at a segment boundary");
  return order;
}

// Applies time-sorted crossing events to the position order and appends
// the corresponding letters.
void apply_events(std::vector<Event>& events, std::vector<int>& order, std::vector<int>& letters,
                  const ExtractionOptions& opt) {
  std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
    if (l.s != r.s) return l.s < r.s;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });
  for (std::size_t k = 0; k + 1 < events.size(); ++k)
    if (events[k + 1].s - events[k].s < opt.time_tolerance)
      throw DegenerateError("simultaneous crossings");
  std::vector<int> pos(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) pos[static_cast<std::size_t>(order[q])] = static_cast<int>(q);
  for (const Event& e : events) {
    int pa = pos[static_cast<std::size_t>(e.a)], pb = pos[static_cast<std::size_t>(e.b)];
    if (std::abs(pa - pb) != 1) throw DegenerateError("crossing between non-adjacent strands");
    if (std::abs(e.ya - e.yb) < opt.collision_tolerance) throw DegenerateError("strands collide");
    int left = std::min(pa, pb);
    double y_left = pa < pb ? e.ya : e.yb;
    double y_right = pa < pb ? e.yb : e.ya;
    letters.push_back(y_left < y_right ? left + 1 : -(left + 1));
    std::swap(order[static_cast<std::size_t>(pa)], order[static_cast<std::size_t>(pb)]);
    pos[static_cast<std::size_t>(order[static_cast<std::size_t>(pa)])] = pa;
    pos[static_cast<std::size_t>(order[static_cast<std::size_t>(pb)])] = pb;
  }
}

void check_final_order(const std::vector<int>& order, const std::vector<Point>& end) {
  for (std::size_t k = 0; k + 1 < order.size(); ++k)
    if (!(end[static_cast<std::size_t>(order[k])].x < end[static_cast<std::size_t>(order[k + 1])].x))
      throw DegenerateError("crossing detection lost track of the strand order");
}

// One point moving rigidly on a circle during a stage.
struct Orbit {
  Point p0, c;
  double dx, dy, phi, rho;
  Point at(double s) const {
    if (phi == 0.0 || s == 0.0) return p0;
    double a = s * phi, cs = std::cos(a), sn = std::sin(a);
    return {c.x + cs * dx - sn * dy, c.y + sn * dx + cs * dy};
  }
  double dxds(double s) const {
    if (phi == 0.0) return 0.0;
    double a = s * phi;
    return -phi * (std::sin(a) * dx + std::cos(a) * dy);
  }
};

class PairRoots {
 public:
  PairRoots(const Orbit& a, const Orbit& b, Point pa, Point pb, const ExtractionOptions& opt)
      : a_(a), b_(b), pa0_(pa), pb0_(pb), opt_(opt),
        m_(a.rho * a.phi * a.phi + b.rho * b.phi * b.phi) {}

  // Roots of x_a(s) - x_b(s) on [0,1], certified by the second-derivative
  // bound m_ (|x''| <= rho phi^2 for each orbit).
  std::vector<double> find() {
    double d0 = pa0_.x - pb0_.x;
    double d1 = d(1.0);
    if (d0 == 0.0 || d1 == 0.0) throw DegenerateError("x-coincidence at a stage boundary");
    if (m_ == 0.0) return {};
    roots_.clear();
    split(0.0, 1.0, d0, d1, 0);
    return roots_;
  }

 private:
  double d(double s) const {
    Point p = s == 0.0 ? pa0_ : a_.at(s);
    Point q = s == 0.0 ? pb0_ : b_.at(s);
    return p.x - q.x;
  }
  double dd(double s) const { return a_.dxds(s) - b_.dxds(s); }

  void split(double lo, double hi, double dlo, double dhi, int depth) {
    const double h = hi - lo;
    const bool same = (dlo > 0) == (dhi > 0);
    if (same) {
      if (std::min(std::abs(dlo), std::abs(dhi)) > m_ * h * h / 8) return;
    } else {
      double mid = 0.5 * (lo + hi);
      if (std::abs(dd(mid)) > m_ * h / 2) {
        roots_.push_back(bisect(lo, hi, dlo));
        return;
      }
    }
    if (h < opt_.time_tolerance || depth > 200) throw DegenerateError("tangential crossing");
    double mid = 0.5 * (lo + hi);
    double dm = d(mid);
    if (dm == 0.0) throw DegenerateError("crossing at a dyadic time");
    split(lo, mid, dlo, dm, depth + 1);
    split(mid, hi, dm, dhi, depth + 1);
  }

  double bisect(double lo, double hi, double dlo) const {
    const bool lo_pos = dlo > 0;
    while (hi - lo > opt_.time_tolerance) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      double dm = d(mid);
      if (dm == 0.0) return mid;
      if ((dm > 0) == lo_pos)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  const Orbit& a_;
  const Orbit& b_;
  Point pa0_, pb0_;
  const ExtractionOptions& opt_;
  double m_;
  std::vector<double> roots_;
};

}  // namespace

BraidWord straight_word(const std::vector<Point>& from, const std::vector<Point>& to, const ExtractionOptions& opt) {
  if (from.size() != to.size()) throw std::invalid_argument("straight_word: size mismatch");
  const int n = static_cast<int>(from.size());
  std::vector<int> order = x_order(from);

  std::vector<Event> events;
  for (int q = 0; q < n; ++q)
    for (int r = q + 1; r < n; ++r) {
      // canonical pair orientation: p starts left of s
      int p = order[static_cast<std::size_t>(q)], s = order[static_cast<std::size_t>(r)];
      const Point &fp = from[static_cast<std::size_t>(p)], &fs = from[static_cast<std::size_t>(s)];
      const Point &tp = to[static_cast<std::size_t>(p)], &ts = to[static_cast<std::size_t>(s)];
      double d0 = fp.x - fs.x, d1 = tp.x - ts.x;
      if (d1 == 0.0) throw DegenerateError("x-coincidence at a segment end");
      if (d1 < 0) continue;
      double t = d0 / (d0 - d1);
      events.push_back({t, p, s, fp.y + t * (tp.y - fp.y), fs.y + t * (ts.y - fs.y)});
    }
  std::vector<int> letters;
  apply_events(events, order, letters, opt);
  check_final_order(order, to);
  return BraidWord(std::max(n, 1), std::move(letters));
}

std::pair<BraidWord, std::vector<Point>> flow_word(const FlowPath& path, const std::vector<Point>& points,
                                                   const ExtractionOptions& opt) {
  const int n = static_cast<int>(points.size());
  std::vector<Point> cur = points;
  std::vector<int> order = x_order(cur);
  std::vector<int> letters;
  std::vector<Orbit> orbit(points.size());
  for (const auto& stage : path.stages()) {
    const TwistMap& tw = stage.twist;
    for (int k = 0; k < n; ++k) {
      const Point& p = cur[static_cast<std::size_t>(k)];
      double dx = p.x - tw.center().x, dy = p.y - tw.center().y;
      double rho = std::hypot(dx, dy);
      orbit[static_cast<std::size_t>(k)] = {p, tw.center(), dx, dy, tw.profile(rho), rho};
    }
    std::vector<Point> next(cur.size());
    for (int k = 0; k < n; ++k) {
      const auto& o = orbit[static_cast<std::size_t>(k)];
      next[static_cast<std::size_t>(k)] = o.phi == 0.0 ? cur[static_cast<std::size_t>(k)] : tw.apply(cur[static_cast<std::size_t>(k)], 1.0);
    }
    std::vector<Event> events;
    for (int q = 0; q < n; ++q)
      for (int r = q + 1; r < n; ++r) {
        int a = order[static_cast<std::size_t>(q)], b = order[static_cast<std::size_t>(r)];
        const Orbit &oa = orbit[static_cast<std::size_t>(a)], &ob = orbit[static_cast<std::size_t>(b)];
        if (oa.phi == 0.0 && ob.phi == 0.0) continue;
        PairRoots roots(oa, ob, cur[static_cast<std::size_t>(a)], cur[static_cast<std::size_t>(b)], opt);
        for (double s : roots.find()) {
          Point pa = oa.at(s), pb = ob.at(s);
          events.push_back({s, a, b, pa.y, pb.y});
        }
      }
    apply_events(events, order, letters, opt);
    check_final_order(order, next);
    cur = std::move(next);
  }
  return {BraidWord(std::max(n, 1), std::move(letters)), cur};
}

// ---------------------------------------------------------- TrajectoryBundle

TrajectoryBundle::TrajectoryBundle(FlowPath path, ConfigurationSample sample)
    : path_(std::move(path)), sample_(std::move(sample)) {
  image_.reserve(sample_.points().size());
  for (const auto& p : sample_.points()) image_.push_back(path_.time_one(p));
}

Point TrajectoryBundle::position(int strand, double t) const {
  const auto k = static_cast<std::size_t>(strand);
  const Point x0 = sample_.basepoints()[k], x = sample_.points()[k], gx = image_[k];
  if (t <= 1.0 / 3) {
    double s = 3 * t;
    return {(1 - s) * x0.x + s * x.x, (1 - s) * x0.y + s * x.y};
  }
  if (t <= 2.0 / 3) return path_.evaluate(x, 3 * t - 1);
  double s = 3 * t - 2;
  return {(1 - s) * gx.x + s * x0.x, (1 - s) * gx.y + s * x0.y};
}

TrajectoryBundle trajectory(const FlowPath& path, const ConfigurationSample& c) { return TrajectoryBundle(path, c); }

PureBraid extract_braid(const TrajectoryBundle& tb, const ExtractionOptions& opt) {
  const auto& x0 = tb.sample().basepoints();
  const auto& x = tb.sample().points();
  BraidWord in = straight_word(x0, x, opt);
  auto [mid, image] = flow_word(tb.path(), x, opt);
  // the return leg is computed from the basepoint side and inverted so that
  // identical segments always give exactly inverse words
  BraidWord out = inverse(straight_word(x0, image, opt));
  BraidWord w = compose(compose(in, mid), out);
  if (!is_pure(w)) throw DegenerateError("extracted braid is not pure");
  return PureBraid(std::move(w));
}

PureBraid gamma(const FlowPath& path, const ConfigurationSample& c, const ExtractionOptions& opt) {
  return extract_braid(trajectory(path, c), opt);
}

BraidWord wiring_braid(const Permutation& sigma, const ConfigurationSample& c, const ExtractionOptions& opt) {
  const auto& x0 = c.basepoints();
  BraidWord in = straight_word(x0, c.points(), opt);
  BraidWord out = inverse(straight_word(x0, c.relabeled(sigma).points(), opt));
  return compose(in, out);
}

std::optional<PureBraid> gamma_with_retry(const FlowPath& path, const ConfigurationSample& c, std::mt19937_64& rng,
                                          const RetryPolicy& policy, const ExtractionOptions& opt,
                                          int* retries_used) {
  std::normal_distribution<double> jitter(0.0, policy.perturbation);
  ConfigurationSample cur = c;
  for (int attempt = 0; attempt <= policy.max_retries; ++attempt) {
    if (retries_used) *retries_used = attempt;
    if (attempt > 0) {
      std::vector<Point> pts = c.points();
      for (auto& p : pts) {
        p.x += jitter(rng);
        p.y += jitter(rng);
      }
      try {
        cur = c.with_points(std::move(pts));
      } catch (const GeometryError&) {
        continue;
      }
    }
    try {
      return gamma(path, cur, opt);
    } catch (const DegenerateError&) {
    }
  }
  return std::nullopt;
}

}  // namespace gg
