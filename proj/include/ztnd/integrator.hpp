#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ztnd/dynamics.hpp"
#include "ztnd/noise.hpp"
#include "ztnd/problem.hpp"

namespace ztnd {

enum class Method { Euler, RK4 };

std::string_view to_string(Method m);

struct IntegratorConfig {
  Method method = Method::RK4;
  double step = 1e-3;
  double horizon = 10.0;
  std::uint32_t record_every = 10;

  void validate() const;
  std::uint64_t step_count() const;
};

enum class Termination { Completed, Diverged, SingularMatrix, PredefinedTimeExceeded, Overflow };

std::string_view to_string(Termination t);

/// States beyond this magnitude end the run as Diverged.
inline constexpr double kDivergenceLimit = 1e9;

struct Coefficients {
  double xi = 0.0;
  double kappa = 0.0;
};

/// Recorded samples of one run. All per-sample vectors have the same length;
/// `solution_errors` is empty when the problem has no oracle and
/// `coefficients` is empty for every model except AZTND.
struct Trace {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> integrals;
  std::vector<double> residual_norms;
  std::vector<double> solution_errors;
  std::vector<Coefficients> coefficients;
  Termination terminated = Termination::Completed;
  std::string message;  ///< error text when terminated early

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
};

/// Fixed-step integration of dz/dt from model_derivative together with
/// dw/dt = eps(t), from t = 0 and w = 0. Step-held noise is sampled once per
/// step at its start. Never throws for dynamics failures; they end the trace
/// with the matching Termination.
Trace simulate(const ModelSpec& model, const TimeVaryingLinearProblem& p, const NoiseModel& noise,
               std::span<const double> init, const IntegratorConfig& cfg);

/// Uniform draw on [-2, 2]^dim from `seed`.
Vector random_initial_state(std::size_t dim, std::uint64_t seed);

/// Empirical convergence order: final-state errors of noise-free runs at h
/// and h/2 measured against an h/8 reference, order = log2(err_h / err_h2).
/// nullopt when the errors sit at round-off level (nothing to measure) or a
/// run terminated early.
std::optional<double> richardson_order_check(const ModelSpec& model, const TimeVaryingLinearProblem& p,
                              std::span<const double> init, Method method, double step,
                              double horizon);

}  // namespace ztnd
