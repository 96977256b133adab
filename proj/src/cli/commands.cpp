#include "ztnd/cli/commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <sstream>

#include "ztnd/cli/output.hpp"

namespace ztnd::cli {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::string to_text(const std::function<void(std::ostream&)>& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.3f}", *v) : "-"; }

void print_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << fmt::format("{:<8} {:>12} {:>12} {:>12} {:<11} {}\n", "model", "conv_time[s]", "MSSRE",
                     "tail_mean", "class", "terminated");
  for (const auto& r : rows) {
    out << fmt::format("{:<8} {:>12} {:>12.3e} {:>12.3e} {:<11} {}\n", r.label,
                       fmt_opt(r.summary.convergence_time), r.summary.steady_state_max,
                       r.summary.steady_state_mean, to_string(r.summary.classification),
                       to_string(r.terminated));
  }
}

Series residual_series(const std::string& label, const Trace& tr) {
  return {label, tr.times, tr.residual_norms};
}

}  // namespace

Trace run_model(const ScenarioConfig& cfg, ModelKind kind) {
  ModelSpec model = cfg.model;
  model.kind = kind;
  if (cfg.scenario == ScenarioKind::Aoa) {
    const aoa::Scenario sc = make_aoa_scenario(cfg);
    const Vector g0 = initial_state(cfg, 2);
    return aoa::track(model, sc, cfg.noise, {g0[0], g0[1]}, cfg.integrator);
  }
  const TimeVaryingLinearProblem p = make_problem(cfg);
  return simulate(model, p, cfg.noise, initial_state(cfg, p.dim), cfg.integrator);
}

int cmd_run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  const Trace tr = run_model(cfg, cfg.model.kind);
  const std::string label(to_string(cfg.model.kind));
  const RunSummary summary = summarize(tr, cfg.metrics);

  ensure_dir(cfg.output);
  write_file(cfg.output / "trace.csv", to_text([&](std::ostream& os) { write_trace_csv(os, tr); }));
  write_file(cfg.output / "summary.csv", to_text([&](std::ostream& os) {
               write_summary_csv(os, {{label, summary, tr.terminated}});
             }));
  write_file(cfg.output / "residual.svg",
             render_svg({fmt::format("{} on {}", label, to_string(cfg.scenario)), "t [s]",
                         "residual ||eps(t)||_2", true, false, {residual_series(label, tr)}}));

  print_table(out, {{label, summary, tr.terminated}});
  if (tr.terminated != Termination::Completed) {
    err << "run ended early: " << to_string(tr.terminated) << ": " << tr.message << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int cmd_compare(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<ModelKind> models = cfg.models;
  if (models.empty()) {
    models = {ModelKind::AZTND, ModelKind::OZNN, ModelKind::GNN, ModelKind::PTCZNN, ModelKind::NCZNN};
  }
  if (models.size() < 2) {
    err << "compare needs at least two models (use --models a,b,...)\n";
    return kConfigError;
  }
  if (cfg.scenario == ScenarioKind::Aoa) {
    for (ModelKind k : models) {
      if (k != ModelKind::AZTND && k != ModelKind::OZNN) {
        err << "aoa scenario supports only aztnd and oznn\n";
        return kConfigError;
      }
    }
  }

  // Each member run only reads the shared config; results land by index.
  std::vector<std::future<Trace>> pending;
  for (ModelKind k : models) {
    pending.push_back(std::async(std::launch::async, [&cfg, k] { return run_model(cfg, k); }));
  }
  std::vector<Trace> traces;
  for (auto& f : pending) traces.push_back(f.get());

  std::vector<SummaryRow> rows;
  std::map<double, std::vector<std::optional<double>>> table;
  PlotSpec plot{fmt::format("model comparison on {}", to_string(cfg.scenario)), "t [s]",
                "residual ||eps(t)||_2", true, false, {}};
  for (std::size_t i = 0; i < models.size(); ++i) {
    const std::string label(to_string(models[i]));
    const Trace& tr = traces[i];
    rows.push_back({label, summarize(tr, cfg.metrics), tr.terminated});
    plot.series.push_back(residual_series(label, tr));
    for (std::size_t k = 0; k < tr.size(); ++k) {
      auto& row = table[tr.times[k]];
      row.resize(models.size());
      row[i] = tr.residual_norms[k];
    }
  }

  ensure_dir(cfg.output);
  write_file(cfg.output / "compare.csv", to_text([&](std::ostream& os) {
               os << "t";
               for (ModelKind k : models) os << ',' << to_string(k);
               os << '\n';
               for (const auto& [t, vals] : table) {
                 os << format_number(t);
                 for (std::size_t i = 0; i < models.size(); ++i) {
                   os << ',';
                   if (i < vals.size() && vals[i]) os << format_number(*vals[i]);
                 }
                 os << '\n';
               }
             }));
  write_file(cfg.output / "summary.csv", to_text([&](std::ostream& os) { write_summary_csv(os, rows); }));
  write_file(cfg.output / "compare.svg", render_svg(plot));
  print_table(out, rows);
  return kOk;
}

int cmd_aoa(const ScenarioConfig& base, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg = base;
  cfg.scenario = ScenarioKind::Aoa;
  if (cfg.model.kind != ModelKind::AZTND && cfg.model.kind != ModelKind::OZNN) {
    err << "aoa tracking supports only aztnd and oznn\n";
    return kConfigError;
  }
  const aoa::Scenario sc = make_aoa_scenario(cfg);
  const Vector g0 = initial_state(cfg, 2);
  const Trace tr = aoa::track(cfg.model, sc, cfg.noise, {g0[0], g0[1]}, cfg.integrator);
  const std::string label(to_string(cfg.model.kind));
  const RunSummary summary = summarize(tr.times, tr.solution_errors, tr.terminated, cfg.metrics);

  Series truth{"truth", {}, {}}, est{label + " estimate", {}, {}};
  ensure_dir(cfg.output);
  write_file(cfg.output / "trajectory.csv", to_text([&](std::ostream& os) {
               os << "t,truth_x,truth_y,est_x,est_y,position_error\n";
               for (std::size_t k = 0; k < tr.size(); ++k) {
                 const aoa::Point u = sc.truth().pos_at(tr.times[k]);
                 truth.x.push_back(u.x);
                 truth.y.push_back(u.y);
                 est.x.push_back(tr.states[k][0]);
                 est.y.push_back(tr.states[k][1]);
                 os << format_number(tr.times[k]) << ',' << format_number(u.x) << ','
                    << format_number(u.y) << ',' << format_number(tr.states[k][0]) << ','
                    << format_number(tr.states[k][1]) << ',' << format_number(tr.solution_errors[k])
                    << '\n';
               }
             }));
  write_file(cfg.output / "summary.csv", to_text([&](std::ostream& os) {
               write_summary_csv(os, {{label, summary, tr.terminated}});
             }));
  write_file(cfg.output / "trajectory.svg",
             render_svg({"AoA tracking: truth vs estimate", "x", "y", false, true, {truth, est}}));
  write_file(cfg.output / "error.svg",
             render_svg({fmt::format("{} position error", label), "t [s]", "||g(t) - u(t)||_2", true,
                         false, {{label, tr.times, tr.solution_errors}}}));

  print_table(out, {{label, summary, tr.terminated}});
  if (tr.terminated != Termination::Completed) {
    err << "tracking ended early: " << to_string(tr.terminated) << ": " << tr.message << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeroing-type neural dynamics simulator for time-varying quadratic minimization", "ztnd"};
  app.require_subcommand(1);

  Settings flags;
  std::vector<std::string> overrides;
  std::string config_path;

  auto bind = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(flag, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--set", overrides, "override a config key (key=value), repeatable");
    bind(sub, "--scenario", "scenario", "example1 | aoa | constant_problem");
    bind(sub, "--noise", "noise.kind", "none | constant | linear | random");
    bind(sub, "--level", "noise.level", "constant noise level (scalar or comma list)");
    bind(sub, "--slope", "noise.slope", "linear noise slope per second");
    bind(sub, "--lower", "noise.lower", "bounded random noise lower bound");
    bind(sub, "--upper", "noise.upper", "bounded random noise upper bound");
    bind(sub, "--noise-seed", "noise.seed", "noise seed (defaults to --seed)");
    bind(sub, "--seed", "seed", "seed for the initial state and noise");
    bind(sub, "--method", "integrator.method", "euler | rk4");
    bind(sub, "--step", "integrator.step", "integration step [s]");
    bind(sub, "--horizon", "integrator.horizon", "simulated time [s]");
    bind(sub, "--record-every", "integrator.record_every", "trace decimation");
    bind(sub, "--init", "init", "initial state, comma separated");
    bind(sub, "-o,--output", "output", "output directory");
    bind(sub, "--stations", "aoa.stations", "station list x,y;x,y;...");
    bind(sub, "--trajectory", "aoa.trajectory", "circle | lissajous");
  };

  CLI::App* run = app.add_subcommand("run", "simulate one model and write trace.csv, summary.csv, residual.svg");
  common(run);
  bind(run, "--model", "model", "aztnd | oznn | gnn | ptcznn | ncznn");
  CLI::App* compare = app.add_subcommand("compare", "run several models from one initial state");
  common(compare);
  bind(compare, "--models", "models", "comma separated model list");
  CLI::App* aoa_cmd = app.add_subcommand("aoa", "angle-of-arrival target tracking");
  common(aoa_cmd);
  bind(aoa_cmd, "--model", "model", "aztnd | oznn");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Settings settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& [k, v] : flags) settings[k] = v;
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      settings[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const ScenarioConfig cfg = build_config(settings);
    if (run->parsed()) return cmd_run(cfg, out, err);
    if (compare->parsed()) return cmd_compare(cfg, out, err);
    return cmd_aoa(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const GeometryDegenerate& e) {
    err << "degenerate AoA geometry: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace ztnd::cli
