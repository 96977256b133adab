#include "ztnd/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ztnd::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why + " (got '" + value + "')");
}

double to_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) bad(key, value, "expected a number");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    bad(key, value, "expected a non-negative integer");
  }
  return out;
}

Vector to_vector(const std::string& key, const std::string& value) {
  Vector out;
  for (const auto& part : split(value, ',')) out.push_back(to_double(key, part));
  return out;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "scenario",          "model",              "models",
      "seed",              "output",             "init",
      "model.gamma",       "model.eta",          "model.a",
      "model.feedback",    "model.b",            "model.c",
      "model.t_c",         "model.bound",        "noise.kind",
      "noise.level",       "noise.slope",        "noise.lower",
      "noise.upper",       "noise.seed",         "integrator.method",
      "integrator.step",   "integrator.horizon", "integrator.record_every",
      "problem.frequency", "problem.amplitude",  "problem.dim",
      "problem.diag",      "problem.offset",     "aoa.stations",
      "aoa.trajectory",    "aoa.center_x",       "aoa.center_y",
      "aoa.amplitude",     "aoa.amplitude_x",    "aoa.amplitude_y",
      "aoa.frequency",     "aoa.frequency_x",    "aoa.frequency_y",
      "aoa.margin",        "metrics.threshold",  "metrics.tail_fraction",
      "metrics.negligible_cutoff",
  };
  return keys;
}

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  const auto& keys = known_keys();
  Settings s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where + ": unknown config key '" + key + "'");
    }
    s[key] = trim(body.substr(eq + 1));
  }
  return s;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ZTND_SEED"); env != nullptr && *env != '\0') {
    return to_uint("ZTND_SEED", env);
  }
  return 1;
}

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Example1: return "example1";
    case ScenarioKind::Aoa: return "aoa";
    case ScenarioKind::ConstantProblem: return "constant_problem";
  }
  return "unknown";
}

ScenarioConfig build_config(const Settings& s) {
  const auto& keys = known_keys();
  for (const auto& [k, v] : s) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = s.find(k);
    return it == s.end() ? nullptr : &it->second;
  };
  auto number = [&](const std::string& k, double& dst) {
    if (const auto* v = get(k)) dst = to_double(k, *v);
  };

  ScenarioConfig cfg;
  cfg.seed = default_seed();

  if (const auto* v = get("scenario")) {
    const std::string name = lower(trim(*v));
    if (name == "example1") cfg.scenario = ScenarioKind::Example1;
    else if (name == "aoa") cfg.scenario = ScenarioKind::Aoa;
    else if (name == "constant_problem") cfg.scenario = ScenarioKind::ConstantProblem;
    else bad("scenario", *v, "expected example1, aoa or constant_problem");
  }
  if (const auto* v = get("model")) {
    const auto kind = parse_model_kind(trim(*v));
    if (!kind) bad("model", *v, "expected aztnd, oznn, gnn, ptcznn or ncznn");
    cfg.model.kind = *kind;
  }
  if (const auto* v = get("models")) {
    for (const auto& name : split(*v, ',')) {
      const auto kind = parse_model_kind(name);
      if (!kind) bad("models", *v, "unknown model '" + name + "'");
      cfg.models.push_back(*kind);
    }
  }
  if (const auto* v = get("seed")) cfg.seed = to_uint("seed", *v);
  if (const auto* v = get("output")) cfg.output = trim(*v);
  if (const auto* v = get("init")) cfg.init = to_vector("init", *v);

  number("model.gamma", cfg.model.gamma);
  number("model.eta", cfg.model.adaptive.scale_exponent);
  number("model.a", cfg.model.adaptive.scale_offset);
  number("model.b", cfg.model.adaptive.feedback_exponent_or_base);
  number("model.c", cfg.model.adaptive.feedback_offset);
  number("model.t_c", cfg.model.t_c);
  number("model.bound", cfg.model.saturation_bound);
  if (const auto* v = get("model.feedback")) {
    const std::string f = lower(trim(*v));
    if (f == "power") cfg.model.adaptive.feedback_form = FeedbackForm::Power;
    else if (f == "exponential") cfg.model.adaptive.feedback_form = FeedbackForm::Exponential;
    else bad("model.feedback", *v, "expected power or exponential");
  }

  std::string noise_kind = "none";
  if (const auto* v = get("noise.kind")) noise_kind = lower(trim(*v));
  std::uint64_t noise_seed = cfg.seed;
  if (const auto* v = get("noise.seed")) noise_seed = to_uint("noise.seed", *v);
  if (noise_kind == "none") {
    cfg.noise = NoNoise{};
  } else if (noise_kind == "constant") {
    const auto* v = get("noise.level");
    cfg.noise = ConstantNoise{v ? to_vector("noise.level", *v) : Vector{5.0}};
  } else if (noise_kind == "linear") {
    const auto* v = get("noise.slope");
    cfg.noise = LinearNoise{v ? to_vector("noise.slope", *v) : Vector{0.4}};
  } else if (noise_kind == "random") {
    BoundedRandomNoise r{0.5, 3.0, noise_seed};
    number("noise.lower", r.lower);
    number("noise.upper", r.upper);
    if (!(r.lower < r.upper)) bad("noise.lower", std::to_string(r.lower), "must be below noise.upper");
    cfg.noise = r;
  } else {
    bad("noise.kind", noise_kind, "expected none, constant, linear or random");
  }

  if (const auto* v = get("integrator.method")) {
    const std::string m = lower(trim(*v));
    if (m == "euler") cfg.integrator.method = Method::Euler;
    else if (m == "rk4") cfg.integrator.method = Method::RK4;
    else bad("integrator.method", *v, "expected euler or rk4");
  }
  number("integrator.step", cfg.integrator.step);
  number("integrator.horizon", cfg.integrator.horizon);
  if (const auto* v = get("integrator.record_every")) {
    const auto r = to_uint("integrator.record_every", *v);
    if (r == 0 || r > 0xffffffffULL) bad("integrator.record_every", *v, "must be in [1, 2^32)");
    cfg.integrator.record_every = static_cast<std::uint32_t>(r);
  }

  number("problem.frequency", cfg.example1.frequency);
  number("problem.amplitude", cfg.example1.amplitude);
  if (const auto* v = get("problem.dim")) {
    cfg.constant_dim = to_uint("problem.dim", *v);
    if (cfg.constant_dim == 0) bad("problem.dim", *v, "must be positive");
  }
  number("problem.diag", cfg.constant_diag);
  number("problem.offset", cfg.constant_offset);

  if (const auto* v = get("aoa.stations")) {
    cfg.aoa.stations.clear();
    for (const auto& pair : split(*v, ';')) {
      const Vector xy = to_vector("aoa.stations", pair);
      if (xy.size() != 2) bad("aoa.stations", *v, "expected x,y pairs separated by ';'");
      cfg.aoa.stations.push_back({xy[0], xy[1]});
    }
  }
  if (const auto* v = get("aoa.trajectory")) {
    cfg.aoa.trajectory = lower(trim(*v));
    if (cfg.aoa.trajectory != "circle" && cfg.aoa.trajectory != "lissajous") {
      bad("aoa.trajectory", *v, "expected circle or lissajous");
    }
    if (cfg.aoa.trajectory == "lissajous") {
      cfg.aoa.amplitude_y = 1.5;
      cfg.aoa.frequency_y = 1.0;
    }
  }
  number("aoa.center_x", cfg.aoa.center_x);
  number("aoa.center_y", cfg.aoa.center_y);
  if (const auto* v = get("aoa.amplitude")) {
    cfg.aoa.amplitude_x = cfg.aoa.amplitude_y = to_double("aoa.amplitude", *v);
  }
  if (const auto* v = get("aoa.frequency")) {
    cfg.aoa.frequency_x = cfg.aoa.frequency_y = to_double("aoa.frequency", *v);
  }
  number("aoa.amplitude_x", cfg.aoa.amplitude_x);
  number("aoa.amplitude_y", cfg.aoa.amplitude_y);
  number("aoa.frequency_x", cfg.aoa.frequency_x);
  number("aoa.frequency_y", cfg.aoa.frequency_y);
  number("aoa.margin", cfg.aoa.margin);

  number("metrics.threshold", cfg.metrics.threshold);
  number("metrics.tail_fraction", cfg.metrics.tail_fraction);
  number("metrics.negligible_cutoff", cfg.metrics.negligible_cutoff);

  try {
    cfg.model.validate();
    cfg.integrator.validate();
    validate(cfg.noise);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  if (!(cfg.metrics.tail_fraction > 0.0 && cfg.metrics.tail_fraction < 1.0)) {
    bad("metrics.tail_fraction", std::to_string(cfg.metrics.tail_fraction), "must lie in (0, 1)");
  }
  return cfg;
}

TimeVaryingLinearProblem make_problem(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case ScenarioKind::Example1:
      return example1(cfg.example1);
    case ScenarioKind::ConstantProblem: {
      Matrix m = scalar_mul(cfg.constant_diag, Matrix::identity(cfg.constant_dim));
      return constant_problem(std::move(m), Vector(cfg.constant_dim, cfg.constant_offset));
    }
    case ScenarioKind::Aoa:
      return make_aoa_scenario(cfg).problem();
  }
  throw ConfigError("unsupported scenario");
}

aoa::Scenario make_aoa_scenario(const ScenarioConfig& cfg) {
  const auto& a = cfg.aoa;
  aoa::Trajectory truth = a.trajectory == "circle"
                              ? aoa::circle(a.center_x, a.center_y, a.amplitude_x, a.frequency_x)
                              : aoa::lissajous(a.center_x, a.center_y, a.amplitude_x, a.amplitude_y,
                                               a.frequency_x, a.frequency_y);
  return aoa::build_scenario(a.stations, std::move(truth), a.margin, cfg.integrator.horizon);
}

Vector initial_state(const ScenarioConfig& cfg, std::size_t dim) {
  if (cfg.init) {
    if (cfg.init->size() != dim) {
      throw ConfigError("config key 'init': expected " + std::to_string(dim) + " values, got " +
                        std::to_string(cfg.init->size()));
    }
    return *cfg.init;
  }
  return random_initial_state(dim, cfg.seed);
}

}  // namespace ztnd::cli
