#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ggbraid/dynamics.hpp"
#include "ggbraid/quasimorphism.hpp"

namespace gg {

class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EstimatorOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  int threads = 1;  // affects wall time only
  std::size_t chunk_size = 1024;
  double delta = 1e-4;  // minimum pairwise distance of sample points
  RetryPolicy retry;
  double max_failure_fraction = 0.01;
  ExtractionOptions extraction;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Independent generator for chunk `chunk` of the stream with `seed`.
std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk);

/// n i.i.d. uniform points in the unit disk, redrawn while any two are
/// closer than delta; basepoints are default_basepoints(n).
ConfigurationSample sample_configuration(std::mt19937_64& rng, int n, double delta);

using Sampler = std::function<ConfigurationSample(std::mt19937_64&)>;

inline constexpr std::size_t kMaxTrackedWords = 1000;

/// Mean and covariance of several quasi-morphisms evaluated on the same
/// samples; all values are scaled by `scale`.
struct MultiEstimate {
  std::vector<std::string> names;
  std::vector<double> mean;
  std::vector<double> comoment;  // row-major sum of centered products (unscaled)
  std::size_t samples = 0;
  std::size_t failures = 0;  // samples redrawn after exhausting retries
  std::size_t retries = 0;   // perturbation retries that succeeded
  std::size_t distinct_words = 0;  // capped at kMaxTrackedWords
  std::optional<BraidWord> first_word;
  double scale = 1.0;
  std::optional<double> wall_seconds;

  double std_error(std::size_t k) const;
  double sample_sd(std::size_t k) const;
  /// Standard error of sum_k c_k phi_k.
  double contrast_std_error(const std::vector<double>& c) const;
  double contrast_mean(const std::vector<double>& c) const;
};

/// Core loop: scale * mean of phi(gamma(path^p; x)) / p over samples from
/// `sampler`. Results are bit-identical for any thread count.
MultiEstimate estimate_many(const std::vector<QuasiMorphism>& phis, const FlowPath& path, const Sampler& sampler,
                            double scale, int power, const EstimatorOptions& opt);

struct EstimateReport {
  std::string phi;
  std::string path_hash;
  int strands = 0;
  int power = 1;
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t chunk_size = 0;
  double delta = 0;
  std::size_t failures = 0;
  std::size_t retries = 0;
  double volume = 0;
  bool defect_assumed = false;
  std::optional<double> wall_seconds;
};

/// Gamma_n(phi)(g) = integral over X_n(D^2) of phi(gamma(g;x)); volume pi^n.
EstimateReport estimate_gamma_qm(const QuasiMorphism& phi, const FlowPath& path, int n, const EstimatorOptions& opt);
/// (1/p) Gamma_n(phi)(g^p) with g^p the path repeated p times.
EstimateReport estimate_homogenized(const QuasiMorphism& phi, const FlowPath& path, int n, int p,
                                    const EstimatorOptions& opt);

/// FNV-1a of the path's canonical text.
std::string path_hash(const FlowPath& path);

}  // namespace gg
