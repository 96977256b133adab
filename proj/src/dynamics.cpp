#include "ztnd/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "ztnd/errors.hpp"

namespace ztnd {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 5> kModelNames{{
    {ModelKind::AZTND, "aztnd"},
    {ModelKind::OZNN, "oznn"},
    {ModelKind::GNN, "gnn"},
    {ModelKind::PTCZNN, "ptcznn"},
    {ModelKind::NCZNN, "ncznn"},
}};

void positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(field) + " must be positive and finite");
  }
}

}  // namespace

void AdaptiveCoefficientSpec::validate() const {
  positive(scale_exponent, "scale_exponent");
  if (!(scale_offset > 1.0)) throw InvalidArgument("scale_offset must exceed 1");
  positive(feedback_offset, "feedback_offset");
  if (feedback_form == FeedbackForm::Power) {
    positive(feedback_exponent_or_base, "feedback exponent");
  } else if (!(feedback_exponent_or_base > 1.0)) {
    throw InvalidArgument("feedback base must exceed 1");
  }
}

std::string_view to_string(ModelKind kind) {
  for (const auto& [k, name] : kModelNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& [k, n] : kModelNames) {
    if (n == lower) return k;
  }
  return std::nullopt;
}

void ModelSpec::validate() const {
  switch (kind) {
    case ModelKind::AZTND:
      adaptive.validate();
      break;
    case ModelKind::PTCZNN:
      positive(gamma, "gamma");
      positive(t_c, "t_c");
      break;
    case ModelKind::NCZNN:
      positive(gamma, "gamma");
      positive(saturation_bound, "saturation_bound");
      break;
    case ModelKind::OZNN:
    case ModelKind::GNN:
      positive(gamma, "gamma");
      break;
  }
}

double adaptive_scale(std::span<const double> eps, const AdaptiveCoefficientSpec& spec) {
  return std::pow(norm2(eps), spec.scale_exponent) + spec.scale_offset;
}

double adaptive_feedback(std::span<const double> w, const AdaptiveCoefficientSpec& spec) {
  const double r = norm2(w);
  if (spec.feedback_form == FeedbackForm::Power) {
    return std::pow(r, spec.feedback_exponent_or_base) + spec.feedback_offset;
  }
  const double k = std::pow(spec.feedback_exponent_or_base, r) + spec.feedback_offset;
  if (!(k <= kFeedbackOverflowLimit)) {
    throw Overflow("exponential feedback " + std::to_string(k) + " exceeds windup limit at ||w|| = " +
                   std::to_string(r));
  }
  return k;
}

double ptcznn_gain(double t, double gamma, double t_c) {
  if (t >= t_c) {
    throw PredefinedTimeExceeded("PTCZNN evaluated at t = " + std::to_string(t) +
                                 " >= t_c = " + std::to_string(t_c));
  }
  // (e^t - 1) / e^t written as 1 - e^-t to stay finite for large t.
  const double g = gamma * (-std::expm1(-t)) / (t_c - t);
  return std::min(g, kPtcznnGainCap);
}

Vector ncznn_activation(std::span<const double> x, double bound) {
  Vector r(x.size());
  std::transform(x.begin(), x.end(), r.begin(),
                 [bound](double v) { return std::clamp(v, -bound, bound); });
  return r;
}

double lyapunov_value(double eps_i, double w_i, double kappa) {
  return eps_i * eps_i + kappa * w_i * w_i / 2.0;
}

Vector model_derivative(const ModelSpec& spec, const TimeVaryingLinearProblem& p,
                        const SolverState& s, std::span<const double> noise) {
  if (s.z.size() != p.dim) throw DimensionMismatch("state length differs from problem dim");
  if (!noise.empty() && noise.size() != p.equations) {
    throw DimensionMismatch("noise length differs from residual length");
  }
  const Matrix m = p.m_at(s.t);
  Vector eps = mat_vec(m, s.z);
  axpy(1.0, p.b_at(s.t), eps);

  if (spec.kind == ModelKind::GNN) {
    Vector zdot = mat_t_vec(m, eps);
    for (double& v : zdot) v *= -spec.gamma;
    if (!noise.empty()) {
      if (noise.size() != zdot.size()) throw DimensionMismatch("GNN noise must match dim");
      axpy(1.0, noise, zdot);
    }
    return zdot;
  }

  // rhs = -dM z - db - feedback + noise
  Vector rhs = mat_vec(p.dm_at(s.t), s.z);
  axpy(1.0, p.db_at(s.t), rhs);
  for (double& v : rhs) v = -v;

  switch (spec.kind) {
    case ModelKind::AZTND: {
      if (s.w.size() != p.equations) throw DimensionMismatch("integral length differs from residual");
      const double xi = adaptive_scale(eps, spec.adaptive);
      const double kappa = adaptive_feedback(s.w, spec.adaptive);
      axpy(-xi, eps, rhs);
      axpy(-kappa, s.w, rhs);
      break;
    }
    case ModelKind::OZNN:
      axpy(-spec.gamma, eps, rhs);
      break;
    case ModelKind::PTCZNN:
      axpy(-ptcznn_gain(s.t, spec.gamma, spec.t_c), eps, rhs);
      break;
    case ModelKind::NCZNN:
      axpy(-spec.gamma, ncznn_activation(eps, spec.saturation_bound), rhs);
      break;
    case ModelKind::GNN:
      break;
  }
  if (!noise.empty()) axpy(1.0, noise, rhs);

  return p.is_square() ? solve(m, rhs) : least_squares_solve(m, rhs);
}

}  // namespace ztnd
