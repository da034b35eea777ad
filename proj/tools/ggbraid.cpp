// ggbraid: braid algebra, quasi-morphisms and disk-average estimates.
//
// Exit codes: 0 success / all certificates pass, 1 certificate or
// estimation failure, 2 usage or config error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ggbraid/config.hpp"

namespace {

using namespace gg;

constexpr int kUsage = 2;
constexpr int kFailure = 1;

struct RunFlags {
  std::string config;
  std::string experiment;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<int> power;
  std::optional<int> threads;
  std::optional<double> delta;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON run description");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--samples", f.samples, "samples (per cell for theorem2)")->check(CLI::PositiveNumber);
  cmd->add_option("--power", f.power, "estimate phi on g^p (replaces p_schedule)")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  cmd->add_option("--delta", f.delta, "minimum pairwise distance of sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "output file (default: $GGBRAID_OUT_DIR/<name>.<format>, else stdout)");
  cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timing", f.timing, "add wall time and a timestamp to the report");
}

RunConfig load_config(const RunFlags& f, RunManifest& manifest) {
  Json j = Json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw ConfigError({"cannot open " + f.config});
    std::stringstream ss;
    ss << in.rdbuf();
    manifest.config_path = f.config;
    manifest.input_hashes["config"] = fnv1a_hex(ss.str());
    try {
      j = Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
      throw ConfigError({f.config + ": " + e.what()});
    }
  }
  if (!f.experiment.empty()) {
    if (j.contains("experiment") && j["experiment"] != f.experiment)
      throw ConfigError({"experiment: command line says '" + f.experiment + "', config says '" +
                         j["experiment"].get<std::string>() + "'"});
    j["experiment"] = f.experiment;
  }
  RunConfig c = config_from_json(j);
  if (f.seed) c.estimator.seed = *f.seed;
  if (f.samples) c.estimator.samples = *f.samples;
  if (f.power) c.p_schedule = {*f.power};
  if (f.threads) c.estimator.threads = *f.threads;
  if (f.delta) c.estimator.delta = *f.delta;
  manifest.seed = c.estimator.seed;
  if (f.timing) {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    manifest.timestamp = buf;
  }
  return c;
}

void emit(const RunFlags& f, const std::string& name, const std::string& text) {
  std::string path = f.out;
  if (path.empty())
    if (const char* dir = std::getenv("GGBRAID_OUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (name + "." + f.format)).string();
    }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  std::cerr << "wrote " << path << "\n";
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

Json envelope(const RunManifest& m, const RunConfig& c, Json report) {
  return {{"manifest", to_json(m)},
          {"options", to_json(c.estimator)},
          {"report", std::move(report)}};
}

QuasiMorphism make_qm(const RunConfig& c) {
  QmContext ctx;
  ctx.strands = c.strands;
  ctx.signature_defect = c.signature_defect;
  return parse_qm(c.phi, ctx);
}

int run_estimate(const RunFlags& f, RunManifest manifest) {
  RunConfig c = load_config(f, manifest);
  const QuasiMorphism phi = make_qm(c);
  const FlowPath& path = c.scenes.front().path;
  manifest.input_hashes["path"] = path_hash(path);
  std::vector<EstimateReport> rows;
  for (int p : c.p_schedule) rows.push_back(estimate_homogenized(phi, path, c.strands, p, c.estimator));
  if (f.format == "csv") {
    emit(f, "estimate", to_csv(rows));
  } else {
    Json list = Json::array();
    for (const auto& r : rows) list.push_back(to_json(r, f.timing));
    Json j = envelope(manifest, c, {{"scene", to_json(path)}, {"estimates", list}});
    emit(f, "estimate", json_text(j));
  }
  return 0;
}

template <class Report>
int finish(const RunFlags& f, const RunManifest& m, const RunConfig& c, const std::string& name, const Report& r,
           Json extra = Json::object()) {
  if (f.format == "csv") {
    emit(f, name, to_csv(r));
  } else {
    Json rep = to_json(r);
    for (auto& [k, v] : extra.items()) rep[k] = v;
    emit(f, name, json_text(envelope(m, c, rep)));
  }
  for (const auto& fail : r.failures) std::cerr << "certificate failed: " << fail << "\n";
  return r.pass() ? 0 : kFailure;
}

int run_experiment(const RunFlags& f, RunManifest manifest) {
  RunConfig c = load_config(f, manifest);
  if (c.experiment == "estimate") return run_estimate(f, manifest);
  if (c.experiment == "theorem2") {
    const BandWord beta = BandWord::parse(*c.braid);
    const DiskLayout layout = c.layout ? *c.layout : default_layout(c.strands);
    Theorem2Options opt;
    opt.estimator = c.estimator;
    opt.reference = c.reference;
    const QuasiMorphism phi = make_qm(c);
    auto r = theorem2_experiment(beta, phi, layout, opt);
    Json extra{{"layout", to_json(layout)}};
    if (!c.layout_scales.empty()) extra["scale_trend"] = to_json(theorem2_scale_trend(beta, phi, c.layout_scales, opt));
    return finish(f, manifest, c, "theorem2", r, extra);
  }
  if (c.experiment == "calabi") {
    auto scenes = c.scenes.empty() ? default_calabi_scenes() : c.scenes;
    auto r = calabi_proportionality_experiment(scenes, c.estimator, c.tolerance, c.locked_constant);
    return finish(f, manifest, c, "calabi", r);
  }
  if (c.experiment == "prop-mean") {
    auto scenes = c.scenes.empty() ? default_prop_mean_scenes() : c.scenes;
    auto r = prop_mean_experiment(make_qm(c), c.strands, scenes, c.estimator);
    return finish(f, manifest, c, "prop-mean", r);
  }
  auto scenes = c.scenes.empty() ? default_symmetric_scenes() : c.scenes;
  auto r = kernel_experiment(make_qm(c), c.strands, scenes, c.braids, c.estimator);
  return finish(f, manifest, c, "kernel", r);
}

bool g_exact = false;

std::string qm_value(const mpq_class& q) { return g_exact ? q.get_str() : to_decimal(q); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Braid quasi-morphisms and their averages over area-preserving disk maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_flag("--exact", g_exact, "print quasi-morphism values as exact rationals");

  // braid
  auto* braid = app.add_subcommand("braid", "braid word algebra")->require_subcommand(1);
  std::string w1, w2;
  int p = 1, ai = 1, aj = 2, an = 0;
  auto* compose_cmd = braid->add_subcommand("compose", "product, freely reduced");
  compose_cmd->add_option("a", w1)->required();
  compose_cmd->add_option("b", w2)->required();
  auto* inverse_cmd = braid->add_subcommand("inverse", "inverse word");
  inverse_cmd->add_option("word", w1)->required();
  auto* power_cmd = braid->add_subcommand("power", "p-th power");
  power_cmd->add_option("word", w1)->required();
  power_cmd->add_option("p", p)->required();
  auto* perm_cmd = braid->add_subcommand("perm", "permutation (1-based images)");
  perm_cmd->add_option("word", w1)->required();
  auto* pure_cmd = braid->add_subcommand("is-pure", "prints true or false");
  pure_cmd->add_option("word", w1)->required();
  auto* a_cmd = braid->add_subcommand("A", "pure generator A_{i,j}");
  a_cmd->add_option("i", ai)->required();
  a_cmd->add_option("j", aj)->required();
  a_cmd->add_option("--strands", an, "strand count (default j)");

  // qm
  auto* qm = app.add_subcommand("qm", "quasi-morphisms")->require_subcommand(1);
  std::string qname, qdefect;
  int qtrials = 10000, qlength = 20, qp = 64, qstrands = 2;
  std::uint64_t qseed = 1;
  auto add_defect_opt = [&](CLI::App* cmd) {
    cmd->add_option("--signature-defect", qdefect, "assumed D(signature), default the strand count");
  };
  auto* eval_cmd = qm->add_subcommand("eval", "phi(word), exact");
  eval_cmd->add_option("phi", qname)->required();
  eval_cmd->add_option("word", w1)->required();
  add_defect_opt(eval_cmd);
  auto* hom_cmd = qm->add_subcommand("homogenize", "phi(word^p)/p with the defect error bar");
  hom_cmd->add_option("phi", qname)->required();
  hom_cmd->add_option("word", w1)->required();
  hom_cmd->add_option("--power", qp, "p_max")->check(CLI::PositiveNumber);
  add_defect_opt(hom_cmd);
  auto* defect_cmd = qm->add_subcommand("defect", "empirical lower bound for D(phi)");
  defect_cmd->add_option("phi", qname)->required();
  defect_cmd->add_option("--strands", qstrands)->check(CLI::PositiveNumber);
  defect_cmd->add_option("--trials", qtrials)->check(CLI::PositiveNumber);
  defect_cmd->add_option("--length", qlength)->check(CLI::NonNegativeNumber);
  defect_cmd->add_option("--seed", qseed);
  add_defect_opt(defect_cmd);
  auto* trans_cmd = qm->add_subcommand("transfer", "homogenized transfer of a pure-braid phi at word");
  trans_cmd->add_option("phi", qname)->required();
  trans_cmd->add_option("word", w1)->required();
  add_defect_opt(trans_cmd);

  // estimate / experiment
  RunFlags est_flags, exp_flags;
  auto* estimate_cmd = app.add_subcommand("estimate", "estimate Gamma_n(phi)(g) for a scene");
  add_run_flags(estimate_cmd, est_flags);
  auto* experiment_cmd = app.add_subcommand("experiment", "run a certificate experiment");
  experiment_cmd->add_option("kind", exp_flags.experiment, "theorem2 | calabi | prop-mean | kernel")
      ->check(CLI::IsMember({"estimate", "theorem2", "calabi", "prop-mean", "kernel"}));
  add_run_flags(experiment_cmd, exp_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  std::string command;
  for (int k = 1; k < argc; ++k) command += (k > 1 ? " " : "") + std::string(argv[k]);
  RunManifest manifest;
  manifest.command = command;

  try {
    auto ctx = [&](int strands) {
      QmContext c;
      c.strands = strands;
      if (!qdefect.empty()) {
        c.signature_defect = mpq_class(qdefect);
        c.signature_defect->canonicalize();
      }
      return c;
    };
    if (compose_cmd->parsed()) std::cout << compose(BraidWord::parse(w1), BraidWord::parse(w2)).to_string() << "\n";
    else if (inverse_cmd->parsed()) std::cout << inverse(BraidWord::parse(w1)).to_string() << "\n";
    else if (power_cmd->parsed()) std::cout << power(BraidWord::parse(w1), p).to_string() << "\n";
    else if (perm_cmd->parsed()) std::cout << permutation_of(BraidWord::parse(w1)).to_string() << "\n";
    else if (pure_cmd->parsed()) std::cout << (is_pure(BraidWord::parse(w1)) ? "true" : "false") << "\n";
    else if (a_cmd->parsed()) std::cout << generator_A(ai, aj, an ? an : aj).word().to_string() << "\n";
    else if (eval_cmd->parsed()) {
      BraidWord w = BraidWord::parse(w1);
      std::cout << qm_value(parse_qm(qname, ctx(w.strands()))(w)) << "\n";
    } else if (hom_cmd->parsed()) {
      BraidWord w = BraidWord::parse(w1);
      auto r = homogenize(parse_qm(qname, ctx(w.strands())), w, qp);
      std::cout << qm_value(r.value);
      if (r.error) std::cout << " +- " << qm_value(*r.error);
      std::cout << "\n";
    } else if (defect_cmd->parsed()) {
      auto phi = parse_qm(qname, ctx(qstrands));
      std::cout << qm_value(defect_estimate(phi, qstrands, qtrials, qlength, qseed)) << "\n";
    } else if (trans_cmd->parsed()) {
      BraidWord w = BraidWord::parse(w1);
      auto phi = parse_qm(qname, ctx(w.strands()));
      if (phi.domain() != Domain::Pure) phi = restrict(phi);
      std::cout << qm_value(homogenized_transfer(phi, w, coset_representatives(w.strands()))) << "\n";
    } else if (estimate_cmd->parsed()) {
      return run_estimate(est_flags, manifest);
    } else if (experiment_cmd->parsed()) {
      if (exp_flags.config.empty() && exp_flags.experiment.empty()) {
        std::cerr << "experiment: give a kind or --config\n";
        return kUsage;
      }
      return run_experiment(exp_flags, manifest);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFailure;
  }
}
