#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ztnd/linalg.hpp"
#include "ztnd/problem.hpp"

namespace ztnd {

enum class FeedbackForm { Power, Exponential };

/// Parameters of the residual-driven scale xi(eps) = ||eps||^eta + a and the
/// integral feedback kappa(w) = ||w||^b + c (Power) or base^||w|| + c
/// (Exponential).
struct AdaptiveCoefficientSpec {
  double scale_exponent = 3.0;  ///< eta > 0
  double scale_offset = 5.0;    ///< a > 1
  FeedbackForm feedback_form = FeedbackForm::Exponential;
  double feedback_exponent_or_base = 5.0;
  double feedback_offset = 5.0;  ///< c > 0

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

/// Integral windup guard for the exponential feedback form.
inline constexpr double kFeedbackOverflowLimit = 1e12;

enum class ModelKind { AZTND, OZNN, GNN, PTCZNN, NCZNN };

std::string_view to_string(ModelKind kind);
/// Case-insensitive; nullopt on unknown names.
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::AZTND;
  double gamma = 5.0;  ///< fixed scale for the non-adaptive models
  AdaptiveCoefficientSpec adaptive{};
  double t_c = 10.0;              ///< PTCZNN predefined time
  double saturation_bound = 10.0;  ///< NCZNN activation bound

  void validate() const;
};

/// PTCZNN gain is clipped here to keep the step finite as t -> t_c.
inline constexpr double kPtcznnGainCap = 1e6;

/// Augmented state: estimate z, accumulated residual integral w, time t.
struct SolverState {
  Vector z;
  Vector w;
  double t = 0.0;
};

double adaptive_scale(std::span<const double> eps, const AdaptiveCoefficientSpec& spec);
double adaptive_feedback(std::span<const double> w, const AdaptiveCoefficientSpec& spec);

/// gamma (e^t - 1) / ((t_c - t) e^t), capped at kPtcznnGainCap.
/// Throws PredefinedTimeExceeded for t >= t_c.
double ptcznn_gain(double t, double gamma, double t_c);

/// Elementwise clamp to [-bound, bound].
Vector ncznn_activation(std::span<const double> x, double bound);

/// eps_i^2 + kappa w_i^2 / 2
double lyapunov_value(double eps_i, double w_i, double kappa);

/// dz/dt of the selected model at state s with additive perturbation `noise`
/// (residual-space length). Mass-matrix models solve M(t) dz = rhs; GNN is
/// explicit. Tall M goes through the normal equations.
Vector model_derivative(const ModelSpec& spec, const TimeVaryingLinearProblem& p,
                        const SolverState& s, std::span<const double> noise);

}  // namespace ztnd
