#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ggbraid/braid.hpp"

namespace gg {

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

double norm(Point p);
double distance(Point a, Point b);

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a trajectory hits a tangential or simultaneous crossing (or a
/// collision) that the extraction cannot resolve; callers perturb and retry.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radial twist (rho, theta) -> (rho, theta + t f(rho)) about `center`, with
/// f = angle on [0, r_in], f = 0 on [r_out, inf) and a quintic smoothstep in
/// between.
class TwistMap {
 public:
  TwistMap(Point center, double r_in, double r_out, double angle);

  Point center() const { return center_; }
  double r_in() const { return r_in_; }
  double r_out() const { return r_out_; }
  double angle() const { return angle_; }

  double profile(double rho) const;
  Point apply(Point p, double t = 1.0) const;
  /// pi * integral_0^r_out s^3 f(s) ds, the integral of the generating
  /// Hamiltonian H(rho) = int_rho^r_out f(s) s ds over the disk.
  double calabi() const;

  bool operator==(const TwistMap&) const = default;

 private:
  Point center_;
  double r_in_, r_out_, angle_;
};

struct Stage {
  TwistMap twist;
  double duration = 1.0;
  bool operator==(const Stage&) const = default;
};

/// Time-ordered product of twists. Durations are relative weights,
/// normalized on evaluation, so concatenation just appends stages.
class FlowPath {
 public:
  FlowPath() = default;
  explicit FlowPath(std::vector<Stage> stages);

  const std::vector<Stage>& stages() const { return stages_; }
  bool empty() const { return stages_.empty(); }
  double total_duration() const;

  /// g_t(x). Throws GeometryError for |x| > 1.
  Point evaluate(Point x, double t) const;
  Point time_one(Point x) const;

  FlowPath then(const FlowPath& next) const;
  /// g^p as the path repeated p times (p >= 0).
  FlowPath repeated(int p) const;
  /// Canonical text form, used for report hashes.
  std::string to_string() const;

  bool operator==(const FlowPath&) const = default;

 private:
  std::vector<Stage> stages_;
};

double calabi(const FlowPath& path);

/// Max |det Dg - 1| of the time-1 map over seeded uniform samples, by
/// fourth-order central differences of g(x) - x.
double area_preservation_check(const FlowPath& path, int samples, std::uint64_t seed, double step = 1e-5);

inline constexpr double kDefaultBasepointRadius = 0.5;
inline constexpr double kDefaultBasepointPhase = 0.3;

/// n points equally spaced on the circle of radius 1/2, phase 0.3 rad,
/// ordered by x-coordinate (strand k starts at the k-th from the left).
std::vector<Point> default_basepoints(int n);

class ConfigurationSample {
 public:
  /// Uses default_basepoints(points.size()).
  explicit ConfigurationSample(std::vector<Point> points, double min_separation = 1e-4);
  ConfigurationSample(std::vector<Point> points, std::vector<Point> basepoints, double min_separation);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Point>& basepoints() const { return basepoints_; }
  double min_separation() const { return delta_; }

  /// y_k = x_{sigma(k)}; the relabeling written sigma^{-1}(x).
  ConfigurationSample relabeled(const Permutation& sigma) const;
  ConfigurationSample with_points(std::vector<Point> points) const;

 private:
  std::vector<Point> points_;
  std::vector<Point> basepoints_;
  double delta_;
};

struct ExtractionOptions {
  double time_tolerance = 1e-12;  // root isolation width and minimum event gap
  double collision_tolerance = 1e-10;  // minimum |dy| at an x-crossing
};

/// The loop l(g;x): straight x0 -> x on [0,1/3], the isotopy on [1/3,2/3],
/// straight g(x) -> x0 on [2/3,1].
class TrajectoryBundle {
 public:
  TrajectoryBundle(FlowPath path, ConfigurationSample sample);

  int strands() const { return sample_.size(); }
  const FlowPath& path() const { return path_; }
  const ConfigurationSample& sample() const { return sample_; }
  const std::vector<Point>& image() const { return image_; }
  Point position(int strand, double t) const;

 private:
  FlowPath path_;
  ConfigurationSample sample_;
  std::vector<Point> image_;
};

TrajectoryBundle trajectory(const FlowPath& path, const ConfigurationSample& c);

/// Crossing letters of the x-projection; sigma_k is positive when the strand
/// moving right passes at smaller y. Throws DegenerateError.
PureBraid extract_braid(const TrajectoryBundle& tb, const ExtractionOptions& opt = {});

PureBraid gamma(const FlowPath& path, const ConfigurationSample& c, const ExtractionOptions& opt = {});

/// Braid of the straight motion from[k] -> to[k]; positions start in the
/// x-order of `from`.
BraidWord straight_word(const std::vector<Point>& from, const std::vector<Point>& to,
                        const ExtractionOptions& opt = {});

/// Braid traced by `points` under the isotopy; positions start in x-order.
/// Returns the word and the time-1 images.
std::pair<BraidWord, std::vector<Point>> flow_word(const FlowPath& path, const std::vector<Point>& points,
                                                   const ExtractionOptions& opt = {});

/// beta(sigma;x): x0 -> x, then x -> the basepoints permuted so that
/// permutation_of(result) = sigma.
BraidWord wiring_braid(const Permutation& sigma, const ConfigurationSample& c, const ExtractionOptions& opt = {});

struct RetryPolicy {
  int max_retries = 5;
  double perturbation = 1e-9;
};

/// gamma with seeded micro-perturbation of the sample on degeneracy.
/// Returns nullopt once the retry budget is exhausted.
std::optional<PureBraid> gamma_with_retry(const FlowPath& path, const ConfigurationSample& c, std::mt19937_64& rng,
                                          const RetryPolicy& policy = {}, const ExtractionOptions& opt = {},
                                          int* retries_used = nullptr);

}  // namespace gg
