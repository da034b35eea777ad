#include "ggbraid/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gg {

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid config:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

namespace {

// Collects problems while reading a JSON tree; every getter returns a
// usable default so parsing continues after the first error.
class Reader {
 public:
  std::vector<std::string> problems;

  double number(const Json& j, const std::string& where, std::optional<double> def = std::nullopt) {
    if (j.is_null() && def) return *def;
    if (!j.is_number()) {
      problems.push_back(where + ": expected a number");
      return def.value_or(0.0);
    }
    return j.get<double>();
  }

  long long integer(const Json& j, const std::string& where, std::optional<long long> def = std::nullopt) {
    if (j.is_null() && def) return *def;
    if (!j.is_number_integer()) {
      problems.push_back(where + ": expected an integer");
      return def.value_or(0);
    }
    return j.get<long long>();
  }

  std::string string(const Json& j, const std::string& where, std::optional<std::string> def = std::nullopt) {
    if (j.is_null() && def) return *def;
    if (!j.is_string()) {
      problems.push_back(where + ": expected a string");
      return def.value_or("");
    }
    return j.get<std::string>();
  }

  Point point(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      problems.push_back(where + ": expected [x, y]");
      return {};
    }
    return {j[0].get<double>(), j[1].get<double>()};
  }

  Disk disk(const Json& j, const std::string& where) {
    if (!j.is_object()) {
      problems.push_back(where + ": expected {center, radius}");
      return {};
    }
    return {point(get(j, "center"), where + ".center"), number(get(j, "radius"), where + ".radius")};
  }

  static Json get(const Json& j, const char* key) {
    if (j.is_object() && j.contains(key)) return j.at(key);
    return Json();
  }

  void unknown_keys(const Json& j, const std::string& where, std::initializer_list<const char*> known) {
    if (!j.is_object()) return;
    for (const auto& [k, v] : j.items()) {
      bool ok = false;
      for (const char* n : known) ok = ok || k == n;
      if (!ok) problems.push_back(where + ": unknown key '" + k + "'");
    }
  }

  std::optional<Stage> stage(const Json& j, const std::string& where) {
    if (!j.is_object()) {
      problems.push_back(where + ": expected a stage object");
      return std::nullopt;
    }
    unknown_keys(j, where, {"center", "r_in", "r_out", "angle", "duration"});
    const std::size_t before = problems.size();
    Point c = point(get(j, "center"), where + ".center");
    double r_in = number(get(j, "r_in"), where + ".r_in");
    double r_out = number(get(j, "r_out"), where + ".r_out");
    double angle = number(get(j, "angle"), where + ".angle");
    double duration = number(get(j, "duration"), where + ".duration", 1.0);
    if (!(duration > 0)) problems.push_back(where + ".duration: must be positive");
    if (problems.size() != before) return std::nullopt;
    try {
      return Stage{TwistMap(c, r_in, r_out, angle), duration};
    } catch (const std::exception& e) {
      problems.push_back(where + ": " + e.what());
      return std::nullopt;
    }
  }

  std::optional<DiskLayout> layout(const Json& j, const std::string& where) {
    if (!j.is_object()) {
      problems.push_back(where + ": expected a layout object");
      return std::nullopt;
    }
    unknown_keys(j, where, {"U", "pairs"});
    const std::size_t before = problems.size();
    std::vector<Disk> U;
    Json u = get(j, "U");
    if (!u.is_array()) problems.push_back(where + ".U: expected a list of disks");
    else
      for (std::size_t k = 0; k < u.size(); ++k) U.push_back(disk(u[k], where + ".U[" + std::to_string(k) + "]"));
    std::vector<PairRegion> pairs;
    Json p = get(j, "pairs");
    if (!p.is_null() && !p.is_array()) problems.push_back(where + ".pairs: expected a list");
    else if (p.is_array())
      for (std::size_t k = 0; k < p.size(); ++k) {
        const std::string w = where + ".pairs[" + std::to_string(k) + "]";
        unknown_keys(p[k], w, {"i", "j", "W", "V"});
        PairRegion r;
        r.i = static_cast<int>(integer(get(p[k], "i"), w + ".i"));
        r.j = static_cast<int>(integer(get(p[k], "j"), w + ".j"));
        r.W = disk(get(p[k], "W"), w + ".W");
        r.V = disk(get(p[k], "V"), w + ".V");
        pairs.push_back(r);
      }
    if (problems.size() != before) return std::nullopt;
    auto geo = DiskLayout::problems(U, pairs);
    for (const auto& g : geo) problems.push_back(where + ": " + g);
    if (!geo.empty()) return std::nullopt;
    return DiskLayout(std::move(U), std::move(pairs));
  }

  std::optional<FlowPath> path(const Json& j, const std::string& where, int strands) {
    if (!j.is_object()) {
      problems.push_back(where + ": expected a scene object");
      return std::nullopt;
    }
    unknown_keys(j, where, {"name", "stages", "realize", "layout"});
    if (j.contains("stages") == j.contains("realize")) {
      problems.push_back(where + ": give exactly one of 'stages' or 'realize'");
      return std::nullopt;
    }
    if (j.contains("stages")) {
      const Json& s = j.at("stages");
      if (!s.is_array()) {
        problems.push_back(where + ".stages: expected a list");
        return std::nullopt;
      }
      std::vector<Stage> stages;
      bool ok = true;
      for (std::size_t k = 0; k < s.size(); ++k) {
        auto st = stage(s[k], where + ".stages[" + std::to_string(k) + "]");
        if (st) stages.push_back(*st);
        else ok = false;
      }
      if (!ok) return std::nullopt;
      return FlowPath(std::move(stages));
    }
    std::string text = string(j.at("realize"), where + ".realize");
    std::optional<DiskLayout> lay;
    if (j.contains("layout")) lay = layout(j.at("layout"), where + ".layout");
    try {
      BandWord beta = BandWord::parse(text);
      if (strands > 0 && beta.strands != strands)
        problems.push_back(where + ".realize: braid has " + std::to_string(beta.strands) + " strands, expected " +
                           std::to_string(strands));
      if (!lay) {
        if (j.contains("layout")) return std::nullopt;
        lay = default_layout(beta.strands);
      }
      return realizer(beta, *lay);
    } catch (const std::exception& e) {
      problems.push_back(where + ".realize: " + e.what());
      return std::nullopt;
    }
  }
};

}  // namespace

FlowPath path_from_json(const Json& j) {
  Reader r;
  auto p = r.path(j, "scene", 0);
  if (!r.problems.empty()) throw ConfigError(r.problems);
  return *p;
}

DiskLayout layout_from_json(const Json& j) {
  Reader r;
  auto l = r.layout(j, "layout");
  if (!r.problems.empty()) throw ConfigError(r.problems);
  return *l;
}

Json to_json(const FlowPath& path) {
  Json stages = Json::array();
  for (const auto& s : path.stages())
    stages.push_back({{"center", {s.twist.center().x, s.twist.center().y}},
                      {"r_in", s.twist.r_in()},
                      {"r_out", s.twist.r_out()},
                      {"angle", s.twist.angle()},
                      {"duration", s.duration}});
  return {{"stages", stages}};
}

Json to_json(const DiskLayout& layout) {
  auto disk = [](const Disk& d) { return Json{{"center", {d.center.x, d.center.y}}, {"radius", d.radius}}; };
  Json U = Json::array(), pairs = Json::array();
  for (const auto& d : layout.U()) U.push_back(disk(d));
  for (const auto& p : layout.pairs()) pairs.push_back({{"i", p.i}, {"j", p.j}, {"W", disk(p.W)}, {"V", disk(p.V)}});
  return {{"U", U}, {"pairs", pairs}};
}

RunConfig config_from_json(const Json& j) {
  Reader r;
  RunConfig c;
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
  r.unknown_keys(j, "config",
                 {"experiment", "strands", "phi", "samples", "seed", "delta", "threads", "chunk_size", "p_schedule",
                  "braid", "layout", "scene", "scenes", "reference", "locked_constant", "tolerance", "braids",
                  "signature_defect", "layout_scales"});
  c.experiment = r.string(Reader::get(j, "experiment"), "experiment", "estimate");
  static const char* kinds[] = {"estimate", "theorem2", "calabi", "prop-mean", "kernel"};
  if (std::find(std::begin(kinds), std::end(kinds), c.experiment) == std::end(kinds))
    r.problems.push_back("experiment: unknown kind '" + c.experiment + "'");
  const int default_strands = c.experiment == "prop-mean" || c.experiment == "kernel" ? 3 : 2;
  c.strands = static_cast<int>(r.integer(Reader::get(j, "strands"), "strands", default_strands));
  if (c.strands < 1) r.problems.push_back("strands: must be >= 1");
  const char* default_phi = c.experiment == "theorem2"    ? "hom:signature:64"
                            : c.experiment == "prop-mean" ? "lk12"
                            : c.experiment == "kernel"    ? "lk12 - lk13"
                                                          : "lk";
  c.phi = r.string(Reader::get(j, "phi"), "phi", default_phi);
  long long samples = r.integer(Reader::get(j, "samples"), "samples", 10000);
  if (samples < 1) r.problems.push_back("samples: must be >= 1");
  c.estimator.samples = static_cast<std::size_t>(std::max(1LL, samples));
  long long seed = r.integer(Reader::get(j, "seed"), "seed", 1);
  if (seed < 0) r.problems.push_back("seed: must be >= 0");
  c.estimator.seed = static_cast<std::uint64_t>(seed);
  c.estimator.delta = r.number(Reader::get(j, "delta"), "delta", 1e-4);
  if (!(c.estimator.delta > 0)) r.problems.push_back("delta: must be positive");
  c.estimator.threads = static_cast<int>(r.integer(Reader::get(j, "threads"), "threads", 1));
  long long chunk = r.integer(Reader::get(j, "chunk_size"), "chunk_size", 1024);
  if (chunk < 1) r.problems.push_back("chunk_size: must be >= 1");
  c.estimator.chunk_size = static_cast<std::size_t>(std::max(1LL, chunk));
  if (j.contains("p_schedule")) {
    const Json& p = j.at("p_schedule");
    c.p_schedule.clear();
    if (!p.is_array() || p.empty()) r.problems.push_back("p_schedule: expected a non-empty list of integers");
    else
      for (std::size_t k = 0; k < p.size(); ++k) {
        long long v = r.integer(p[k], "p_schedule[" + std::to_string(k) + "]");
        if (v < 1) r.problems.push_back("p_schedule[" + std::to_string(k) + "]: must be >= 1");
        c.p_schedule.push_back(static_cast<int>(v));
      }
  }
  if (j.contains("braid")) {
    c.braid = r.string(j.at("braid"), "braid");
    try {
      BandWord b = BandWord::parse(*c.braid);
      if (b.strands != c.strands)
        r.problems.push_back("braid: has " + std::to_string(b.strands) + " strands, expected " +
                             std::to_string(c.strands));
    } catch (const std::exception& e) {
      r.problems.push_back(std::string("braid: ") + e.what());
    }
  }
  if (j.contains("layout")) {
    c.layout = r.layout(j.at("layout"), "layout");
    if (c.layout && c.layout->strands() != c.strands) r.problems.push_back("layout: strand count differs from strands");
  }
  if (j.contains("scene") && j.contains("scenes")) r.problems.push_back("config: give 'scene' or 'scenes', not both");
  if (j.contains("scene")) {
    if (auto p = r.path(j.at("scene"), "scene", c.strands))
      c.scenes.push_back({r.string(Reader::get(j.at("scene"), "name"), "scene.name", "scene"), *p});
  }
  if (j.contains("scenes")) {
    const Json& s = j.at("scenes");
    if (!s.is_array()) r.problems.push_back("scenes: expected a list");
    else
      for (std::size_t k = 0; k < s.size(); ++k) {
        const std::string w = "scenes[" + std::to_string(k) + "]";
        if (auto p = r.path(s[k], w, c.strands))
          c.scenes.push_back({r.string(Reader::get(s[k], "name"), w + ".name", w), *p});
      }
  }
  if (j.contains("reference")) c.reference = r.number(j.at("reference"), "reference");
  if (j.contains("locked_constant")) {
    if (j.at("locked_constant").is_null()) c.locked_constant.reset();
    else c.locked_constant = r.number(j.at("locked_constant"), "locked_constant");
  }
  c.tolerance = r.number(Reader::get(j, "tolerance"), "tolerance", 0.02);
  c.braids = static_cast<int>(r.integer(Reader::get(j, "braids"), "braids", 1000));
  if (j.contains("layout_scales")) {
    const Json& l = j.at("layout_scales");
    if (!l.is_array()) r.problems.push_back("layout_scales: expected a list of radii");
    else
      for (std::size_t k = 0; k < l.size(); ++k) {
        double v = r.number(l[k], "layout_scales[" + std::to_string(k) + "]");
        if (!(v > 0 && v <= 0.45)) r.problems.push_back("layout_scales[" + std::to_string(k) + "]: must be in (0, 0.45]");
        c.layout_scales.push_back(v);
      }
    if (c.experiment != "theorem2" || c.strands != 2)
      r.problems.push_back("layout_scales: only for the two-strand theorem2 experiment");
  }
  if (j.contains("signature_defect")) {
    try {
      c.signature_defect = mpq_class(r.string(j.at("signature_defect"), "signature_defect"));
      c.signature_defect->canonicalize();
    } catch (const std::exception&) {
      r.problems.push_back("signature_defect: expected a rational such as \"3\" or \"5/2\"");
    }
  }

  if (c.experiment == "estimate" && c.scenes.size() != 1)
    r.problems.push_back("estimate: exactly one scene required");
  if (c.experiment == "theorem2" && !c.braid && c.strands >= 2) c.braid = "n=" + std::to_string(c.strands) + " A1,2";
  if (c.experiment == "calabi" && c.strands != 2) r.problems.push_back("calabi: strands must be 2");
  if (!r.problems.empty()) throw ConfigError(r.problems);
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open " + path});
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const RunManifest& m) {
  Json j{{"command", m.command},
         {"config_path", m.config_path},
         {"seed", m.seed},
         {"version", m.version},
         {"input_hashes", m.input_hashes}};
  if (m.timestamp) j["timestamp"] = *m.timestamp;
  return j;
}

Json to_json(const EstimatorOptions& o) {
  return {{"samples", o.samples},
          {"seed", o.seed},
          {"chunk_size", o.chunk_size},
          {"delta", o.delta},
          {"max_retries", o.retry.max_retries},
          {"perturbation", o.retry.perturbation},
          {"max_failure_fraction", o.max_failure_fraction},
          {"time_tolerance", o.extraction.time_tolerance},
          {"collision_tolerance", o.extraction.collision_tolerance}};
}

Json to_json(const EstimateReport& r, bool timing) {
  Json j{{"phi", r.phi},         {"path_hash", r.path_hash}, {"strands", r.strands},   {"p", r.power},
         {"mean", r.mean},       {"std_error", r.std_error}, {"samples", r.samples},   {"seed", r.seed},
         {"chunk_size", r.chunk_size}, {"delta", r.delta},   {"failures", r.failures}, {"retries", r.retries},
         {"volume", r.volume},   {"defect_assumed", r.defect_assumed}};
  if (timing && r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j;
}

Json to_json(const Theorem2Report& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"F", c.F},
                     {"bijective", c.bijective},
                     {"weight", c.weight},
                     {"x_F", c.mean},
                     {"std_error", c.std_error},
                     {"sigma", c.sigma},
                     {"samples", c.samples},
                     {"failures", c.failures},
                     {"distinct_words", c.distinct_words},
                     {"word", c.word}});
  return {{"phi", r.phi},
          {"beta", r.beta},
          {"strands", r.strands},
          {"areas", r.areas},
          {"reference", r.reference},
          {"homogenization_error", r.homogenization_error},
          {"cells", cells},
          {"Y", r.Y},
          {"Y_sigma", r.Y_sigma},
          {"bijective_coefficient", r.bijective_coefficient},
          {"bijective_sigma", r.bijective_sigma},
          {"property_i", r.property_i},
          {"property_ii", r.property_ii},
          {"Y_nonzero", r.Y_nonzero},
          {"failures", r.failures},
          {"pass", r.pass()}};
}

Json to_json(const CalabiReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"name", e.name},
                       {"calabi", e.calabi},
                       {"gamma", e.gamma},
                       {"std_error", e.std_error},
                       {"ratio", e.ratio},
                       {"relative_deviation", e.relative_deviation}});
  Json j{{"entries", entries},
         {"constant", r.constant},
         {"constant_std_error", r.constant_std_error},
         {"max_relative_deviation", r.max_relative_deviation},
         {"tolerance", r.tolerance},
         {"locked", nullptr},
         {"samples", r.samples},
         {"seed", r.seed},
         {"failures", r.failures},
         {"pass", r.pass()}};
  if (r.locked) j["locked"] = *r.locked;
  return j;
}

namespace {

Json comparison_json(const ComparisonEntry& e) {
  return {{"name", e.name},
          {"lhs", e.lhs},
          {"lhs_std_error", e.lhs_std_error},
          {"rhs", e.rhs},
          {"rhs_std_error", e.rhs_std_error},
          {"difference", e.difference},
          {"difference_std_error", e.difference_std_error},
          {"pass", e.pass}};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string comparison_csv(const std::vector<ComparisonEntry>& entries) {
  std::ostringstream os;
  os << "name,lhs,lhs_std_error,rhs,rhs_std_error,difference,difference_std_error,pass\n";
  for (const auto& e : entries)
    os << quoted(e.name) << ',' << num(e.lhs) << ',' << num(e.lhs_std_error) << ',' << num(e.rhs) << ','
       << num(e.rhs_std_error) << ',' << num(e.difference) << ',' << num(e.difference_std_error) << ','
       << (e.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace

Json to_json(const PropMeanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(comparison_json(e));
  return {{"phi", r.phi},         {"transferred", r.transferred}, {"strands", r.strands}, {"entries", entries},
          {"samples", r.samples}, {"seed", r.seed},               {"failures", r.failures}, {"pass", r.pass()}};
}

Json to_json(const KernelReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(comparison_json(e));
  return {{"phi", r.phi},
          {"strands", r.strands},
          {"braids_checked", r.braids_checked},
          {"nonzero_transfers", r.nonzero_transfers},
          {"entries", entries},
          {"samples", r.samples},
          {"seed", r.seed},
          {"failures", r.failures},
          {"pass", r.pass()}};
}

std::string to_csv(const std::vector<EstimateReport>& rows) {
  std::ostringstream os;
  os << "phi,path_hash,strands,p,mean,std_error,samples,seed,chunk_size,delta,failures,retries,volume,defect_assumed\n";
  for (const auto& r : rows)
    os << quoted(r.phi) << ',' << r.path_hash << ',' << r.strands << ',' << r.power << ',' << num(r.mean) << ','
       << num(r.std_error) << ',' << r.samples << ',' << r.seed << ',' << r.chunk_size << ',' << num(r.delta) << ','
       << r.failures << ',' << r.retries << ',' << num(r.volume) << ',' << (r.defect_assumed ? "true" : "false")
       << '\n';
  return os.str();
}

Json to_json(const std::vector<ScaleTrendEntry>& trend) {
  Json out = Json::array();
  for (const auto& e : trend)
    out.push_back({{"radius", e.radius},
                   {"area_fraction", e.area_fraction},
                   {"Y", e.Y},
                   {"Y_sigma", e.Y_sigma},
                   {"full", e.full},
                   {"full_std_error", e.full_std_error},
                   {"remainder", e.remainder}});
  return out;
}

std::string to_csv(const Theorem2Report& r) {
  std::ostringstream os;
  os << "F,bijective,weight,x_F,std_error,sigma,samples,failures,distinct_words,word\n";
  for (const auto& c : r.cells) {
    std::string F;
    for (int v : c.F) F += (F.empty() ? "" : " ") + std::to_string(v);
    os << quoted(F) << ',' << (c.bijective ? "true" : "false") << ',' << num(c.weight) << ',' << num(c.mean) << ','
       << num(c.std_error) << ',' << num(c.sigma) << ',' << c.samples << ',' << c.failures << ','
       << c.distinct_words << ',' << quoted(c.word) << '\n';
  }
  return os.str();
}

std::string to_csv(const CalabiReport& r) {
  std::ostringstream os;
  os << "name,calabi,gamma,std_error,ratio,relative_deviation\n";
  for (const auto& e : r.entries)
    os << quoted(e.name) << ',' << num(e.calabi) << ',' << num(e.gamma) << ',' << num(e.std_error) << ','
       << num(e.ratio) << ',' << num(e.relative_deviation) << '\n';
  return os.str();
}

std::string to_csv(const PropMeanReport& r) { return comparison_csv(r.entries); }
std::string to_csv(const KernelReport& r) { return comparison_csv(r.entries); }

}  // namespace gg
