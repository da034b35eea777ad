#include "ggbraid/estimator.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <numbers>
#include <thread>

namespace gg {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(chunk + 0x51ED2701ULL)));
}

ConfigurationSample sample_configuration(std::mt19937_64& rng, int n, double delta) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  while (true) {
    for (auto& p : pts) {
      double r = std::sqrt(u(rng)), th = 2 * std::numbers::pi * u(rng);
      p = {r * std::cos(th), r * std::sin(th)};
    }
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      if (!(norm(pts[i]) < 1.0)) ok = false;
      for (std::size_t j = i + 1; j < pts.size() && ok; ++j)
        if (distance(pts[i], pts[j]) < delta) ok = false;
    }
    if (ok) return ConfigurationSample(pts, delta);
  }
}

// ------------------------------------------------------------ statistics

namespace {

struct Moments {
  std::size_t n = 0;
  std::vector<double> mean;
  std::vector<double> C;  // k x k

  explicit Moments(std::size_t k = 0) : mean(k, 0.0), C(k * k, 0.0) {}

  void add(const std::vector<double>& x) {
    const std::size_t k = mean.size();
    ++n;
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) {
      d[i] = x[i] - mean[i];
      mean[i] += d[i] / static_cast<double>(n);
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) C[i * k + j] += d[i] * (x[j] - mean[j]);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const std::size_t k = mean.size();
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = o.mean[i] - mean[i];
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) C[i * k + j] += o.C[i * k + j] + d[i] * d[j] * na * nb / nt;
    for (std::size_t i = 0; i < k; ++i) mean[i] += d[i] * nb / nt;
    n += o.n;
  }
};

struct ChunkResult {
  Moments m;
  std::size_t failures = 0;
  std::size_t retries = 0;
  bool aborted = false;
  std::string error;
  std::set<std::vector<int>> words;
  std::optional<BraidWord> first;
};

}  // namespace

double MultiEstimate::sample_sd(std::size_t k) const {
  if (samples < 2) return 0.0;
  const std::size_t K = mean.size();
  return scale * std::sqrt(std::max(0.0, comoment[k * K + k]) / static_cast<double>(samples - 1));
}

double MultiEstimate::std_error(std::size_t k) const {
  if (samples < 2) return 0.0;
  return sample_sd(k) / std::sqrt(static_cast<double>(samples));
}

double MultiEstimate::contrast_mean(const std::vector<double>& c) const {
  double s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * mean[i];
  return s;
}

double MultiEstimate::contrast_std_error(const std::vector<double>& c) const {
  if (samples < 2) return 0.0;
  const std::size_t K = mean.size();
  double v = 0;
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) v += c[i] * c[j] * comoment[i * K + j];
  v = std::max(0.0, v) / static_cast<double>(samples - 1) / static_cast<double>(samples);
  return scale * std::sqrt(v);
}

MultiEstimate estimate_many(const std::vector<QuasiMorphism>& phis, const FlowPath& path, const Sampler& sampler,
                            double scale, int power, const EstimatorOptions& opt) {
  if (power < 1) throw std::invalid_argument("power must be >= 1");
  if (opt.samples == 0) throw std::invalid_argument("need at least one sample");
  if (opt.chunk_size == 0) throw std::invalid_argument("chunk size must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const FlowPath gp = path.repeated(power);
  const std::size_t K = phis.size();
  const std::size_t chunks = (opt.samples + opt.chunk_size - 1) / opt.chunk_size;
  std::vector<ChunkResult> results(chunks);

  auto run_chunk = [&](std::size_t c) {
    ChunkResult& res = results[c];
    res.m = Moments(K);
    std::mt19937_64 rng = chunk_rng(opt.seed, c);
    const std::size_t begin = c * opt.chunk_size;
    const std::size_t len = std::min(opt.chunk_size, opt.samples - begin);
    std::map<std::vector<int>, std::vector<double>> cache;
    try {
      for (std::size_t s = 0; s < len;) {
        ConfigurationSample x = sampler(rng);
        int used = 0;
        auto g = gamma_with_retry(gp, x, rng, opt.retry, opt.extraction, &used);
        if (!g) {
          if (++res.failures > len) {
            res.aborted = true;
            return;
          }
          continue;
        }
        res.retries += static_cast<std::size_t>(used);
        if (!res.first) res.first = g->word();
        std::vector<int> key(g->word().letters().begin(), g->word().letters().end());
        auto it = cache.find(key);
        if (it == cache.end()) {
          std::vector<double> vals(K);
          for (std::size_t k = 0; k < K; ++k) vals[k] = to_double(mpq_class(phis[k](g->word()) / power));
          it = cache.emplace(std::move(key), std::move(vals)).first;
        }
        res.m.add(it->second);
        ++s;
      }
    } catch (const std::exception& e) {
      res.aborted = true;
      res.error = e.what();
    }
    for (const auto& [w, v] : cache) {
      if (res.words.size() >= kMaxTrackedWords) break;
      res.words.insert(w);
    }
  };

  const int threads = std::max(1, opt.threads);
  if (threads == 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  MultiEstimate out;
  for (const auto& q : phis) out.names.push_back(q.name());
  Moments total(K);
  std::set<std::vector<int>> words;
  for (const auto& r : results) {
    for (const auto& w : r.words)
      if (words.size() < kMaxTrackedWords) words.insert(w);
    if (!out.first_word && r.first) out.first_word = r.first;
    if (!r.error.empty()) throw EstimatorError("evaluation failed: " + r.error);
    if (r.aborted) throw EstimatorError("extraction failed on more samples than the chunk holds");
    total.merge(r.m);
    out.failures += r.failures;
    out.retries += r.retries;
  }
  if (static_cast<double>(out.failures) > opt.max_failure_fraction * static_cast<double>(opt.samples))
    throw EstimatorError("extraction failed on " + std::to_string(out.failures) + " of " +
                         std::to_string(opt.samples) + " samples (limit " +
                         std::to_string(opt.max_failure_fraction * 100) + "%)");
  out.distinct_words = words.size();
  out.samples = total.n;
  out.scale = scale;
  out.mean.resize(K);
  for (std::size_t k = 0; k < K; ++k) out.mean[k] = scale * total.mean[k];
  out.comoment = total.C;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string path_hash(const FlowPath& path) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : path.to_string()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

EstimateReport estimate_homogenized(const QuasiMorphism& phi, const FlowPath& path, int n, int p,
                                    const EstimatorOptions& opt) {
  const double volume = std::pow(std::numbers::pi, n);
  const double delta = opt.delta;
  auto m = estimate_many({phi}, path, [n, delta](std::mt19937_64& rng) { return sample_configuration(rng, n, delta); },
                         volume, p, opt);
  EstimateReport r;
  r.phi = phi.name();
  r.path_hash = path_hash(path);
  r.strands = n;
  r.power = p;
  r.mean = m.mean[0];
  r.std_error = m.std_error(0);
  r.samples = m.samples;
  r.seed = opt.seed;
  r.chunk_size = opt.chunk_size;
  r.delta = opt.delta;
  r.failures = m.failures;
  r.retries = m.retries;
  r.volume = volume;
  r.defect_assumed = phi.defect_assumed();
  r.wall_seconds = m.wall_seconds;
  return r;
}

EstimateReport estimate_gamma_qm(const QuasiMorphism& phi, const FlowPath& path, int n, const EstimatorOptions& opt) {
  return estimate_homogenized(phi, path, n, 1, opt);
}

}  // namespace gg
