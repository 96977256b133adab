#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ztnd/cli/commands.hpp"
#include "ztnd/cli/config.hpp"
#include "ztnd/cli/output.hpp"

using namespace ztnd;
using namespace ztnd::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// One summary.csv data row keyed by label.
std::map<std::string, std::vector<std::string>> summary_rows(const fs::path& file) {
  std::map<std::string, std::vector<std::string>> rows;
  auto ls = lines(slurp(file));
  for (std::size_t i = 1; i < ls.size(); ++i) {
    auto f = split(ls[i]);
    rows[f[0]] = f;
  }
  return rows;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("ztnd_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str(const std::string& sub = "") const { return (path_ / sub).string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST_CASE("run aztnd on example1") {
  TempDir d;
  auto r = invoke({"run", "--scenario", "example1", "--model", "aztnd", "-o", d.str()});
  CHECK(r.code == kOk);
  INFO(r.err);
  REQUIRE(fs::exists(d.path() / "trace.csv"));
  REQUIRE(fs::exists(d.path() / "summary.csv"));
  REQUIRE(fs::exists(d.path() / "residual.svg"));
  auto rows = summary_rows(d.path() / "summary.csv");
  REQUIRE(rows.count("aztnd") == 1);
  CHECK(rows["aztnd"][4] == "Negligible");
  CHECK(rows["aztnd"][5] == "Completed");
  CHECK(r.out.find("Negligible") != std::string::npos);

  auto trace = lines(slurp(d.path() / "trace.csv"));
  CHECK(trace.front() == "t,z_1,z_2,residual_norm,solution_error,xi,kappa");
  CHECK(trace.size() == 1002);  // header + 1000 decimated steps + t = 0
  for (std::size_t i = 1; i < trace.size(); i += 97) CHECK(split(trace[i]).size() == 7);
}

TEST_CASE("summary.csv agrees with the trace") {
  TempDir d;
  REQUIRE(invoke({"run", "--model", "oznn", "--noise", "constant", "-o", d.str()}).code == kOk);
  auto trace = lines(slurp(d.path() / "trace.csv"));
  std::vector<double> t, r;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    auto f = split(trace[i]);
    t.push_back(std::stod(f[0]));
    r.push_back(std::stod(f[3]));
    CHECK(f[5].empty());  // no adaptive coefficients for fixed-gain models
  }
  auto s = summarize(t, r, Termination::Completed);
  auto row = summary_rows(d.path() / "summary.csv")["oznn"];
  CHECK(std::stod(row[2]) == s.steady_state_max);
  CHECK(std::stod(row[3]) == s.steady_state_mean);
  CHECK(row[4] == std::string(to_string(s.classification)));
  CHECK(row[1].empty() == !s.convergence_time.has_value());
}

TEST_CASE("unknown keys are rejected and named") {
  TempDir d;
  auto r = invoke({"run", "--set", "modle=aztnd", "-o", d.str()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("modle") != std::string::npos);

  std::ofstream(d.path() / "bad.cfg") << "# comment\nmodel = aztnd\nmodle = gnn\n";
  r = invoke({"run", "--config", d.str("bad.cfg"), "-o", d.str()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("modle") != std::string::npos);
  CHECK(r.err.find("bad.cfg:3") != std::string::npos);

  r = invoke({"run", "--model", "mznn", "-o", d.str()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("model") != std::string::npos);

  r = invoke({"run", "--set", "noise.lower=5", "--noise", "random", "-o", d.str()});
  CHECK(r.code == kConfigError);
  CHECK(invoke({"run", "--step", "abc", "-o", d.str()}).code == kConfigError);
  CHECK(invoke({"frobnicate"}).code == kConfigError);
  CHECK(invoke({"run", "--config", d.str("missing.cfg")}).code == kConfigError);
}

TEST_CASE("config file values and flag precedence") {
  TempDir d;
  std::ofstream(d.path() / "run.cfg") << "model = gnn\nintegrator.horizon = 2\nintegrator.record_every = 100\n";
  auto r = invoke({"run", "--config", d.str("run.cfg"), "--model", "ncznn", "-o", d.str()});
  REQUIRE(r.code == kOk);
  auto rows = summary_rows(d.path() / "summary.csv");
  CHECK(rows.count("ncznn") == 1);
  CHECK(lines(slurp(d.path() / "trace.csv")).size() == 22);  // 2 s at 100 steps per sample

  Settings s{{"model", "ptcznn"}, {"model.t_c", "4"}, {"noise.kind", "linear"}, {"noise.slope", "0.1"}};
  auto cfg = build_config(s);
  CHECK(cfg.model.kind == ModelKind::PTCZNN);
  CHECK(cfg.model.t_c == 4.0);
  CHECK(std::get<LinearNoise>(cfg.noise).slope == Vector{0.1});
  for (const auto& k : known_keys()) CHECK_FALSE(k.empty());
}

TEST_CASE("compare needs at least two models") {
  TempDir d;
  auto r = invoke({"compare", "--models", "aztnd", "-o", d.str()});
  CHECK(r.code == kConfigError);
  CHECK(invoke({"compare", "--scenario", "aoa", "--models", "aztnd,gnn", "-o", d.str()}).code == kConfigError);
}

TEST_CASE("compare under constant noise") {
  TempDir d;
  auto r = invoke({"compare", "--noise", "constant", "-o", d.str()});
  REQUIRE(r.code == kOk);
  auto rows = summary_rows(d.path() / "summary.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows["aztnd"][4] == "Negligible");
  for (const char* m : {"oznn", "gnn", "ptcznn", "ncznn"}) {
    INFO(m);
    CHECK(rows[m][4] == "Bounded");
  }
  auto header = split(lines(slurp(d.path() / "compare.csv")).front());
  CHECK(header.front() == "t");
  CHECK(header.size() == 6);
  for (const char* m : {"aztnd", "oznn", "gnn", "ptcznn", "ncznn"}) {
    CHECK(std::find(header.begin(), header.end(), m) != header.end());
    CHECK(r.out.find(m) != std::string::npos);
  }
  CHECK(fs::exists(d.path() / "compare.svg"));
}

TEST_CASE("aoa from the truth") {
  TempDir d;
  auto r = invoke({"aoa", "--model", "aztnd", "--init", "2,3", "-o", d.str()});
  REQUIRE(r.code == kOk);
  auto traj = lines(slurp(d.path() / "trajectory.csv"));
  CHECK(traj.front() == "t,truth_x,truth_y,est_x,est_y,position_error");
  for (std::size_t i = 1; i < traj.size(); ++i) CHECK(std::stod(split(traj[i])[5]) < 1e-6);
  CHECK(fs::exists(d.path() / "trajectory.svg"));
  CHECK(fs::exists(d.path() / "error.svg"));

  // an init on a station's vertical line is a configuration problem
  CHECK(invoke({"aoa", "--init", "5,1", "-o", d.str()}).code == kConfigError);
}

TEST_CASE("noise-free aoa tracking") {
  TempDir d;
  REQUIRE(invoke({"aoa", "--model", "aztnd", "-o", d.str()}).code == kOk);
  auto row = summary_rows(d.path() / "summary.csv")["aztnd"];
  CHECK(std::stod(row[2]) < 1e-4);
}

TEST_CASE("reruns are byte identical") {
  TempDir a, b;
  for (const auto* d : {&a, &b}) {
    REQUIRE(invoke({"compare", "--noise", "random", "--seed", "7", "--horizon", "3", "-o", d->str()}).code == kOk);
    REQUIRE(invoke({"aoa", "--seed", "7", "--horizon", "3", "-o", d->str("aoa")}).code == kOk);
  }
  for (const char* f : {"compare.csv", "summary.csv", "compare.svg", "aoa/trajectory.csv", "aoa/summary.csv"}) {
    INFO(f);
    CHECK(slurp(a.path() / f) == slurp(b.path() / f));
    CHECK_FALSE(slurp(a.path() / f).empty());
  }
}

TEST_CASE("ZTND_SEED sets the default seed") {
  TempDir a, b, c;
  ::setenv("ZTND_SEED", "99", 1);
  CHECK(default_seed() == 99);
  REQUIRE(invoke({"run", "--horizon", "1", "-o", a.str()}).code == kOk);
  ::unsetenv("ZTND_SEED");
  CHECK(default_seed() == 1);
  REQUIRE(invoke({"run", "--horizon", "1", "--seed", "99", "-o", b.str()}).code == kOk);
  REQUIRE(invoke({"run", "--horizon", "1", "-o", c.str()}).code == kOk);
  CHECK(slurp(a.path() / "trace.csv") == slurp(b.path() / "trace.csv"));
  CHECK(slurp(a.path() / "trace.csv") != slurp(c.path() / "trace.csv"));
}

TEST_CASE("runtime termination exits 2 but still writes output") {
  TempDir d;
  auto r = invoke({"run", "--model", "ptcznn", "-o", d.str()});
  CHECK(r.code == kRuntimeError);
  CHECK(r.err.find("PredefinedTimeExceeded") != std::string::npos);
  CHECK(fs::exists(d.path() / "trace.csv"));
  CHECK(summary_rows(d.path() / "summary.csv")["ptcznn"][5] == "PredefinedTimeExceeded");
}

TEST_CASE("unwritable output exits 3") {
  TempDir d;
  std::ofstream(d.path() / "blocker") << "x";
  auto r = invoke({"run", "--horizon", "1", "-o", d.str("blocker/out")});
  CHECK(r.code == kIoError);
  CHECK(r.err.find("blocker") != std::string::npos);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 1e-300}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("svg output is self-contained and clamps the log floor") {
  PlotSpec spec{.title = "t & <r>", .x_label = "t [s]", .y_label = "r", .log_y = true};
  spec.series.push_back({"a", {0, 1, 2}, {1, 1e-3, 0.0}});
  spec.series.push_back({"b", {0, 1, 2}, {2, 2, 2}});
  std::string svg = render_svg(spec);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("t &amp; &lt;r&gt;") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("csv writers") {
  Trace tr;
  tr.times = {0, 0.5};
  tr.states = {{1, 2}, {3, 4}};
  tr.integrals = {{0, 0}, {0, 0}};
  tr.residual_norms = {0.25, 0.125};
  tr.solution_errors = {1, 2};
  std::ostringstream os;
  write_trace_csv(os, tr);
  CHECK(os.str() == "t,z_1,z_2,residual_norm,solution_error,xi,kappa\n0,1,2,0.25,1,,\n0.5,3,4,0.125,2,,\n");

  std::ostringstream ss;
  write_summary_csv(ss, {{"m", RunSummary{std::nullopt, 0.5, 0.25, Classification::Bounded}, Termination::Completed}});
  CHECK(ss.str() ==
        "label,convergence_time,steady_state_max,steady_state_mean,classification,terminated\n"
        "m,,0.5,0.25,Bounded,Completed\n");
}
