#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ztnd/aoa.hpp"
#include "ztnd/dynamics.hpp"
#include "ztnd/errors.hpp"
#include "ztnd/integrator.hpp"
#include "ztnd/metrics.hpp"
#include "ztnd/noise.hpp"
#include "ztnd/problem.hpp"

namespace ztnd::cli {

/// Bad key, bad value or unreadable config file. Maps to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Flat key=value settings, later sources override earlier ones.
using Settings = std::map<std::string, std::string>;

/// Every key the harness understands.
const std::vector<std::string>& known_keys();

/// Parses `key = value` lines; '#' starts a comment. Unknown keys are
/// rejected with the file name, line and key in the message.
Settings read_config_file(const std::filesystem::path& path);

/// Seed used when none is configured: $ZTND_SEED if set, else 1.
std::uint64_t default_seed();

enum class ScenarioKind { Example1, Aoa, ConstantProblem };

struct AoaSettings {
  std::vector<aoa::Station> stations{{-5.0, 0.0}, {5.0, 0.0}};
  std::string trajectory = "circle";
  double center_x = 0.0;
  double center_y = 3.0;
  double amplitude_x = 2.0;
  double amplitude_y = 2.0;
  double frequency_x = 0.5;
  double frequency_y = 0.5;
  double margin = aoa::kDefaultMargin;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::Example1;
  ModelSpec model{};
  std::vector<ModelKind> models;  ///< compare only
  NoiseModel noise = NoNoise{};
  IntegratorConfig integrator{};
  std::uint64_t seed = 1;
  std::filesystem::path output = "out";
  std::optional<Vector> init;
  Example1Params example1{};
  std::size_t constant_dim = 2;
  double constant_diag = 1.0;
  double constant_offset = 0.0;
  AoaSettings aoa{};
  SummaryOptions metrics{};
};

std::string_view to_string(ScenarioKind k);

/// Builds a validated config. Throws ConfigError naming the offending key.
ScenarioConfig build_config(const Settings& s);

/// The problem selected by `cfg.scenario` (tracking scenarios go through aoa()).
TimeVaryingLinearProblem make_problem(const ScenarioConfig& cfg);
aoa::Scenario make_aoa_scenario(const ScenarioConfig& cfg);

/// Explicit init, or a seeded draw from [-2, 2]^dim.
Vector initial_state(const ScenarioConfig& cfg, std::size_t dim);

}  // namespace ztnd::cli
