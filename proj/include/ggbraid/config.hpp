#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ggbraid/experiments.hpp"

namespace gg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Every validation problem found in a config, reported together.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Scene block: {"stages": [{center, r_in, r_out, angle, duration}, ...]}
/// or {"realize": "<band word>", "layout": {...}} (layout optional).
FlowPath path_from_json(const Json& j);
/// Layout block: {"U": [{center, radius}, ...],
///                "pairs": [{"i", "j", "W": {center, radius}, "V": {...}}]}.
DiskLayout layout_from_json(const Json& j);
Json to_json(const FlowPath& path);
Json to_json(const DiskLayout& layout);

/// A run description. Keys:
///   experiment: "estimate" (default) | "theorem2" | "calabi" | "prop-mean" | "kernel"
///   strands, phi, samples, seed, delta, threads, p_schedule, braid, layout,
///   scene | scenes, reference, locked_constant, tolerance, braids,
///   layout_scales (theorem2, two strands: U radii for the scale trend)
struct RunConfig {
  std::string experiment = "estimate";
  int strands = 2;
  std::string phi = "lk";
  std::optional<std::string> braid;  // band word, theorem2 (default A1,2)
  std::optional<DiskLayout> layout;
  std::vector<Scene> scenes;  // empty: experiment defaults
  std::vector<int> p_schedule{1};
  EstimatorOptions estimator;
  std::optional<double> reference;
  std::optional<double> locked_constant = kLockedCalabiConstant;
  double tolerance = 0.02;
  int braids = 1000;
  std::vector<double> layout_scales;
  std::optional<mpq_class> signature_defect;
};

/// Throws ConfigError listing every problem.
RunConfig config_from_json(const Json& j);
Json read_json_file(const std::string& path);

/// Identifies a run; equal manifests give equal reports.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::map<std::string, std::string> input_hashes;
  std::optional<std::string> timestamp;  // only with --timing
};

/// FNV-1a, 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

Json to_json(const RunManifest& m);
Json to_json(const EstimatorOptions& o);
Json to_json(const EstimateReport& r, bool timing = false);
Json to_json(const Theorem2Report& r);
Json to_json(const CalabiReport& r);
Json to_json(const PropMeanReport& r);
Json to_json(const KernelReport& r);

std::string to_csv(const std::vector<EstimateReport>& rows);
std::string to_csv(const Theorem2Report& r);
Json to_json(const std::vector<ScaleTrendEntry>& trend);
std::string to_csv(const CalabiReport& r);
std::string to_csv(const PropMeanReport& r);
std::string to_csv(const KernelReport& r);

}  // namespace gg
