#include <doctest.h>

#include "ztnd/errors.hpp"
#include "ztnd/integrator.hpp"
#include "ztnd/metrics.hpp"
#include "ztnd/problem.hpp"

using namespace ztnd;

namespace {

std::vector<double> grid(std::size_t n, double horizon) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = horizon * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

}  // namespace

TEST_CASE("identically zero residual") {
  auto t = grid(101, 10.0);
  std::vector<double> r(t.size(), 0.0);
  auto s = summarize(t, r, Termination::Completed);
  REQUIRE(s.convergence_time.has_value());
  CHECK(*s.convergence_time == 0.0);
  CHECK(s.classification == Classification::Negligible);
}

TEST_CASE("linear growth") {
  // With the default 20% tail the window spans 8..10 s, where 0.4 t only
  // grows by 25%: strictly increasing but short of the 10x rule, so Bounded.
  // A tail that reaches back towards t = 0 sees the full "+inf"-style growth.
  auto t = grid(1001, 10.0);
  std::vector<double> r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) r[i] = 0.4 * t[i];
  CHECK(summarize(t, r, Termination::Completed).classification == Classification::Bounded);
  auto s = summarize(t, r, Termination::Completed, {.tail_fraction = 0.95});
  CHECK(s.classification == Classification::Divergent);
  CHECK_FALSE(s.convergence_time.has_value());
}

TEST_CASE("constant plateau") {
  auto t = grid(101, 10.0);
  std::vector<double> r(t.size(), 0.05);
  auto s = summarize(t, r, Termination::Completed);
  CHECK(s.classification == Classification::Bounded);
  CHECK_FALSE(s.convergence_time.has_value());
  CHECK(s.steady_state_max == doctest::Approx(0.05));
  CHECK(s.steady_state_mean == doctest::Approx(0.05));
}

TEST_CASE("convergence time needs the series to stay below the threshold") {
  std::vector<double> t{0, 1, 2, 3, 4, 5};
  std::vector<double> r{1, 1e-5, 1, 1e-5, 1e-6, 1e-7};
  auto s = summarize(t, r, Termination::Completed);
  REQUIRE(s.convergence_time.has_value());
  CHECK(*s.convergence_time == 3.0);
}

TEST_CASE("a diverged run is Divergent regardless of the tail shape") {
  std::vector<double> t{0, 1, 2};
  std::vector<double> r{1, 0.5, 0.7};
  CHECK(summarize(t, r, Termination::Diverged).classification == Classification::Divergent);
  CHECK(summarize(t, r, Termination::Completed).classification == Classification::Bounded);
}

TEST_CASE("errors") {
  std::vector<double> empty;
  CHECK_THROWS_AS(summarize(empty, empty, Termination::Completed), EmptyTrace);
  CHECK_THROWS_AS(summarize(Trace{}), EmptyTrace);
  std::vector<double> t{0, 1}, r{1, 1};
  CHECK_THROWS_AS(summarize(t, r, Termination::Completed, {.tail_fraction = 0.0}), InvalidArgument);
  CHECK_THROWS_AS(summarize(t, r, Termination::Completed, {.tail_fraction = 1.0}), InvalidArgument);
  std::vector<double> r3{1, 1, 1};
  CHECK_THROWS_AS(summarize(t, r3, Termination::Completed), DimensionMismatch);
}

TEST_CASE("property: steady-state mean never exceeds the max") {
  auto p = example1();
  Vector z0 = random_initial_state(2, 3);
  for (auto k : {ModelKind::AZTND, ModelKind::OZNN, ModelKind::GNN, ModelKind::NCZNN}) {
    auto tr = simulate(ModelSpec{.kind = k}, p, BoundedRandomNoise{0.5, 3.0, 3}, z0, {.horizon = 4.0});
    auto s = summarize(tr);
    CHECK(s.steady_state_mean <= s.steady_state_max);
  }
}

TEST_CASE("property: decimation changes steady-state stats by at most 2%") {
  auto p = example1();
  Vector z0 = random_initial_state(2, 1);
  for (auto k : {ModelKind::AZTND, ModelKind::GNN, ModelKind::OZNN}) {
    INFO(to_string(k));
    auto fine = summarize(simulate(ModelSpec{.kind = k}, p, NoNoise{}, z0, {.record_every = 1}));
    auto coarse = summarize(simulate(ModelSpec{.kind = k}, p, NoNoise{}, z0, {.record_every = 10}));
    CHECK(coarse.steady_state_max == doctest::Approx(fine.steady_state_max).epsilon(0.02));
    CHECK(coarse.steady_state_mean == doctest::Approx(fine.steady_state_mean).epsilon(0.02));
  }
}

TEST_CASE("property: classification is monotone in the linear-noise slope") {
  auto p = example1();
  Vector z0 = random_initial_state(2, 1);
  auto rank = [](Classification c) { return static_cast<int>(c); };  // Negligible < Bounded < Divergent
  for (auto k : {ModelKind::OZNN, ModelKind::GNN, ModelKind::NCZNN}) {
    int prev = -1;
    for (double slope : {0.0, 0.1, 0.4, 1.0, 4.0}) {
      auto tr = simulate(ModelSpec{.kind = k}, p, LinearNoise{{slope}}, z0, {});
      int now = rank(summarize(tr).classification);
      INFO(to_string(k) << " slope " << slope);
      CHECK(now >= prev);
      prev = now;
    }
  }
}
