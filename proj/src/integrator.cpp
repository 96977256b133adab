#include "ztnd/integrator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ztnd/errors.hpp"

namespace ztnd {

std::string_view to_string(Method m) { return m == Method::Euler ? "euler" : "rk4"; }

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::Diverged: return "Diverged";
    case Termination::SingularMatrix: return "SingularMatrix";
    case Termination::PredefinedTimeExceeded: return "PredefinedTimeExceeded";
    case Termination::Overflow: return "Overflow";
  }
  return "Unknown";
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("integrator step must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("integrator horizon must be positive");
  }
  if (step > horizon) throw InvalidArgument("integrator step exceeds horizon");
  if (record_every == 0) throw InvalidArgument("record_every must be positive");
  const double n = horizon / step;
  if (n > 1e12) throw InvalidArgument("horizon / step does not fit the step counter");
  if (std::abs(n - std::round(n)) > 1e-6 * n) {
    throw InvalidArgument("horizon must be an integer multiple of step");
  }
}

std::uint64_t IntegratorConfig::step_count() const {
  return static_cast<std::uint64_t>(std::llround(horizon / step));
}

Vector random_initial_state(std::size_t dim, std::uint64_t seed) {
  // Stream id distinct from the noise component streams.
  constexpr std::uint64_t kInitStream = 0x1717'0000'0000'0001ULL;
  Vector z(dim);
  for (std::size_t i = 0; i < dim; ++i) z[i] = -2.0 + 4.0 * counter_uniform(seed, kInitStream, i);
  return z;
}

namespace {

struct StageResult {
  Vector zdot;
  Vector eps;
};

class Stepper {
 public:
  Stepper(const ModelSpec& model, const TimeVaryingLinearProblem& p) : model_(model), p_(p) {}

  StageResult eval(double t, const Vector& z, const Vector& w, const Vector& noise) const {
    SolverState s{z, w, t};
    StageResult r;
    r.zdot = model_derivative(model_, p_, s, noise);
    r.eps = residual(p_, z, t);
    return r;
  }

 private:
  const ModelSpec& model_;
  const TimeVaryingLinearProblem& p_;
};

Vector shifted(const Vector& x, double c, const Vector& dx) {
  Vector r = x;
  axpy(c, dx, r);
  return r;
}

bool within_limits(const Vector& v) {
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > kDivergenceLimit) return false;
  }
  return true;
}

}  // namespace

Trace simulate(const ModelSpec& model, const TimeVaryingLinearProblem& p, const NoiseModel& noise,
               std::span<const double> init, const IntegratorConfig& cfg) {
  cfg.validate();
  model.validate();
  validate(noise);
  if (init.size() != p.dim) {
    throw DimensionMismatch("initial state has " + std::to_string(init.size()) +
                            " entries, problem expects " + std::to_string(p.dim));
  }

  const double h = cfg.step;
  const std::uint64_t n_steps = cfg.step_count();
  const bool held = is_step_held(noise);
  const bool adaptive = model.kind == ModelKind::AZTND;
  // PTCZNN refuses to approach t_c closer than ten steps.
  const double t_limit = model.kind == ModelKind::PTCZNN ? model.t_c - 10.0 * h
                                                         : std::numeric_limits<double>::infinity();

  Trace tr;
  Vector z(init.begin(), init.end());
  Vector w(p.equations, 0.0);
  std::uint64_t last_recorded = std::numeric_limits<std::uint64_t>::max();

  auto fail = [&](Termination why, std::string msg) {
    tr.terminated = why;
    tr.message = std::move(msg);
  };

  // Returns false (and sets the termination) if the sample cannot be evaluated.
  auto record = [&](std::uint64_t k) -> bool {
    if (k == last_recorded) return true;
    const double t = static_cast<double>(k) * h;
    try {
      const Vector eps = residual(p, z, t);
      Coefficients c;
      if (adaptive) c = {adaptive_scale(eps, model.adaptive), adaptive_feedback(w, model.adaptive)};
      const double err = norm2(sub(z, theoretical_solution(p, t)));
      tr.times.push_back(t);
      tr.states.push_back(z);
      tr.integrals.push_back(w);
      tr.residual_norms.push_back(norm2(eps));
      tr.solution_errors.push_back(err);
      if (adaptive) tr.coefficients.push_back(c);
    } catch (const SingularMatrix& e) {
      fail(Termination::SingularMatrix, e.what());
      return false;
    } catch (const Overflow& e) {
      fail(Termination::Overflow, e.what());
      return false;
    }
    last_recorded = k;
    return true;
  };

  Stepper stepper(model, p);
  for (std::uint64_t k = 0; k < n_steps; ++k) {
    if (k % cfg.record_every == 0 && !record(k)) return tr;
    const double t = static_cast<double>(k) * h;
    if (static_cast<double>(k + 1) * h >= t_limit) {
      record(k);
      fail(Termination::PredefinedTimeExceeded,
           "stopped at t = " + std::to_string(t) + ", within 10 steps of t_c = " +
               std::to_string(model.t_c));
      return tr;
    }

    const Vector held_noise = sample(noise, t, k, p.equations);
    auto noise_at = [&](double ts) { return held ? held_noise : sample(noise, ts, k, p.equations); };

    const Vector z_prev = z;
    const Vector w_prev = w;
    try {
      if (cfg.method == Method::Euler) {
        const StageResult k1 = stepper.eval(t, z, w, held_noise);
        axpy(h, k1.zdot, z);
        axpy(h, k1.eps, w);
      } else {
        const double tm = t + 0.5 * h;
        const Vector n_mid = noise_at(tm);
        const StageResult k1 = stepper.eval(t, z, w, held_noise);
        const StageResult k2 =
            stepper.eval(tm, shifted(z, 0.5 * h, k1.zdot), shifted(w, 0.5 * h, k1.eps), n_mid);
        const StageResult k3 =
            stepper.eval(tm, shifted(z, 0.5 * h, k2.zdot), shifted(w, 0.5 * h, k2.eps), n_mid);
        const StageResult k4 =
            stepper.eval(t + h, shifted(z, h, k3.zdot), shifted(w, h, k3.eps), noise_at(t + h));
        for (std::size_t i = 0; i < z.size(); ++i) {
          z[i] += h / 6.0 * (k1.zdot[i] + 2.0 * (k2.zdot[i] + k3.zdot[i]) + k4.zdot[i]);
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
          w[i] += h / 6.0 * (k1.eps[i] + 2.0 * (k2.eps[i] + k3.eps[i]) + k4.eps[i]);
        }
      }
    } catch (const SingularMatrix& e) {
      record(k);
      fail(Termination::SingularMatrix, e.what());
      return tr;
    } catch (const Overflow& e) {
      record(k);
      fail(Termination::Overflow, e.what());
      return tr;
    } catch (const PredefinedTimeExceeded& e) {
      record(k);
      fail(Termination::PredefinedTimeExceeded, e.what());
      return tr;
    }

    if (!within_limits(z) || !within_limits(w)) {
      z = z_prev;
      w = w_prev;
      record(k);
      fail(Termination::Diverged, "state left the finite range after t = " + std::to_string(t));
      return tr;
    }
  }
  record(n_steps);
  return tr;
}

std::optional<double> richardson_order_check(const ModelSpec& model,
                                             const TimeVaryingLinearProblem& p,
                                             std::span<const double> init, Method method,
                                             double step, double horizon) {
  auto final_state = [&](double h) -> std::optional<Vector> {
    IntegratorConfig cfg{method, h, horizon, std::numeric_limits<std::uint32_t>::max()};
    const Trace tr = simulate(model, p, NoNoise{}, init, cfg);
    if (tr.terminated != Termination::Completed) return std::nullopt;
    return tr.states.back();
  };
  const auto coarse = final_state(step);
  const auto fine = final_state(step / 2.0);
  const auto reference = final_state(step / 8.0);
  if (!coarse || !fine || !reference) return std::nullopt;

  const double e1 = norm2(sub(*coarse, *reference));
  const double e2 = norm2(sub(*fine, *reference));
  const double floor = 1e-13 * std::max(1.0, norm2(*reference));
  if (e1 <= floor || e2 <= floor) return std::nullopt;
  return std::log2(e1 / e2);
}

}  // namespace ztnd
