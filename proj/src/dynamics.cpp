#include "ggbraid/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gg {

double norm(Point p) { return std::hypot(p.x, p.y); }
double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// ------------------------------------------------------------------ TwistMap

TwistMap::TwistMap(Point center, double r_in, double r_out, double angle)
    : center_(center), r_in_(r_in), r_out_(r_out), angle_(angle) {
  if (!(std::isfinite(center.x) && std::isfinite(center.y) && std::isfinite(r_in) && std::isfinite(r_out) &&
        std::isfinite(angle)))
    throw GeometryError("twist parameters must be finite");
  if (!(r_in > 0 && r_in < r_out)) throw GeometryError("twist needs 0 < r_in < r_out");
  if (!(norm(center) + r_out < 1.0)) throw GeometryError("twist support must lie inside the open unit disk");
}

double TwistMap::profile(double rho) const {
  if (rho <= r_in_) return angle_;
  if (rho >= r_out_) return 0.0;
  double u = (rho - r_in_) / (r_out_ - r_in_);
  double s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  return angle_ * (1.0 - s);
}

Point TwistMap::apply(Point p, double t) const {
  double dx = p.x - center_.x, dy = p.y - center_.y;
  double phi = profile(std::hypot(dx, dy));
  if (phi == 0.0 || t == 0.0) return p;
  double a = t * phi, c = std::cos(a), s = std::sin(a);
  return {center_.x + c * dx - s * dy, center_.y + s * dx + c * dy};
}

double TwistMap::calabi() const {
  // pi [ angle r_in^4/4 + angle w int_0^1 (r_in + w u)^3 (1 - S(u)) du ]
  auto moment = [](int m) {
    return 1.0 / (m + 1) - 10.0 / (m + 4) + 15.0 / (m + 5) - 6.0 / (m + 6);
  };
  const double r = r_in_, w = r_out_ - r_in_;
  const double binom[4] = {1, 3, 3, 1};
  double annulus = 0;
  for (int k = 0; k <= 3; ++k) annulus += binom[k] * std::pow(r, 3 - k) * std::pow(w, k) * moment(k);
  return std::numbers::pi * angle_ * (std::pow(r, 4) / 4.0 + w * annulus);
}

// ------------------------------------------------------------------ FlowPath

FlowPath::FlowPath(std::vector<Stage> stages) : stages_(std::move(stages)) {
  for (const auto& s : stages_)
    if (!(s.duration > 0 && std::isfinite(s.duration))) throw GeometryError("stage duration must be positive");
}

double FlowPath::total_duration() const {
  double t = 0;
  for (const auto& s : stages_) t += s.duration;
  return t;
}

Point FlowPath::evaluate(Point x, double t) const {
  if (norm(x) > 1.0) throw GeometryError("point outside the unit disk");
  if (t <= 0 || stages_.empty()) return x;
  const double total = total_duration();
  double elapsed = 0;
  for (const auto& s : stages_) {
    double w = s.duration / total;
    if (t >= elapsed + w) {
      x = s.twist.apply(x, 1.0);
    } else {
      return s.twist.apply(x, (t - elapsed) / w);
    }
    elapsed += w;
  }
  return x;
}

Point FlowPath::time_one(Point x) const {
  if (norm(x) > 1.0) throw GeometryError("point outside the unit disk");
  for (const auto& s : stages_) x = s.twist.apply(x, 1.0);
  return x;
}

FlowPath FlowPath::then(const FlowPath& next) const {
  std::vector<Stage> all = stages_;
  all.insert(all.end(), next.stages_.begin(), next.stages_.end());
  return FlowPath(std::move(all));
}

FlowPath FlowPath::repeated(int p) const {
  if (p < 0) throw std::invalid_argument("path power must be >= 0");
  std::vector<Stage> all;
  all.reserve(stages_.size() * static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) all.insert(all.end(), stages_.begin(), stages_.end());
  return FlowPath(std::move(all));
}

std::string FlowPath::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& s : stages_) {
    const auto& t = s.twist;
    os << "twist(" << t.center().x << "," << t.center().y << "," << t.r_in() << "," << t.r_out() << ","
       << t.angle() << ";" << s.duration << ")\n";
  }
  return os.str();
}

double calabi(const FlowPath& path) {
  double c = 0;
  for (const auto& s : path.stages()) c += s.twist.calabi();
  return c;
}

double area_preservation_check(const FlowPath& path, int samples, std::uint64_t seed, double step) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double h = step;
  // differences of the displacement g(x) - x, so the identity gives exactly 0
  auto disp = [&](Point q) {
    Point g = path.time_one(q);
    return Point{g.x - q.x, g.y - q.y};
  };
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    double r = std::sqrt(u(rng)) * (1.0 - 4 * h), th = 2 * std::numbers::pi * u(rng);
    Point p{r * std::cos(th), r * std::sin(th)};
    // fourth-order central difference along (ex, ey)
    auto deriv = [&](double ex, double ey) {
      Point a = disp({p.x + h * ex, p.y + h * ey}), b = disp({p.x - h * ex, p.y - h * ey});
      Point a2 = disp({p.x + 2 * h * ex, p.y + 2 * h * ey}), b2 = disp({p.x - 2 * h * ex, p.y - 2 * h * ey});
      return Point{(8 * (a.x - b.x) - (a2.x - b2.x)) / (12 * h), (8 * (a.y - b.y) - (a2.y - b2.y)) / (12 * h)};
    };
    Point dx = deriv(1, 0), dy = deriv(0, 1);
    worst = std::max(worst, std::abs((1 + dx.x) * (1 + dy.y) - dy.x * dx.y - 1.0));
  }
  return worst;
}

// --------------------------------------------------------- configurations

std::vector<Point> default_basepoints(int n) {
  if (n < 1) throw std::invalid_argument("need at least one strand");
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    double a = kDefaultBasepointPhase + 2 * std::numbers::pi * k / n;
    pts.push_back({kDefaultBasepointRadius * std::cos(a), kDefaultBasepointRadius * std::sin(a)});
  }
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x; });
  for (int k = 0; k + 1 < n; ++k)
    if (pts[static_cast<std::size_t>(k + 1)].x - pts[static_cast<std::size_t>(k)].x < 1e-9)
      throw std::logic_error("default basepoints share an x-coordinate");
  return pts;
}

ConfigurationSample::ConfigurationSample(std::vector<Point> points, double min_separation)
    : ConfigurationSample(points, default_basepoints(static_cast<int>(points.size())), min_separation) {}

ConfigurationSample::ConfigurationSample(std::vector<Point> points, std::vector<Point> basepoints,
                                         double min_separation)
    : points_(std::move(points)), basepoints_(std::move(basepoints)), delta_(min_separation) {
  if (points_.empty()) throw GeometryError("configuration needs at least one point");
  if (points_.size() != basepoints_.size()) throw GeometryError("points and basepoints differ in count");
  if (!(delta_ > 0)) throw GeometryError("min separation must be positive");
  for (const auto& p : points_)
    if (!(norm(p) < 1.0)) throw GeometryError("configuration point outside the open unit disk");
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (distance(points_[i], points_[j]) < delta_)
        throw GeometryError("configuration points closer than the min separation");
      if (basepoints_[i] == basepoints_[j]) throw GeometryError("basepoints must be distinct");
    }
}

ConfigurationSample ConfigurationSample::relabeled(const Permutation& sigma) const {
  if (sigma.size() != size()) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<Point> y(points_.size());
  for (int k = 0; k < size(); ++k) y[static_cast<std::size_t>(k)] = points_[static_cast<std::size_t>(sigma(k))];
  return ConfigurationSample(std::move(y), basepoints_, delta_);
}

ConfigurationSample ConfigurationSample::with_points(std::vector<Point> points) const {
  return ConfigurationSample(std::move(points), basepoints_, delta_);
}

}  // namespace gg
