#pragma once

#include <functional>
#include <string>

#include "ztnd/linalg.hpp"

namespace ztnd {

using MatrixFn = std::function<Matrix(double)>;
using VectorFn = std::function<Vector(double)>;

/// The time-varying system M(t) z + b(t) = 0 that every dynamics model drives
/// to zero. For quadratic minimization M is the (symmetric) Hessian and the
/// residual is the gradient. Tracking problems reuse the same object with a
/// tall M (equations > unknowns) and b = -h.
///
/// Instances are immutable after construction; evaluators must be pure in t.
struct TimeVaryingLinearProblem {
  std::string name;
  std::size_t dim = 0;        ///< unknowns (columns of M)
  std::size_t equations = 0;  ///< residual length (rows of M); equals dim for TVQM
  MatrixFn m_at;
  VectorFn b_at;
  MatrixFn dm_at;
  VectorFn db_at;
  /// Optional closed-form reference for z*(t); falls back to solving M z = -b.
  VectorFn solution_at;

  bool is_square() const { return dim == equations; }
};

/// 1/2 z^T M z + b^T z
double objective(const TimeVaryingLinearProblem& p, std::span<const double> z, double t);

/// M z + b
Vector gradient(const TimeVaryingLinearProblem& p, std::span<const double> z, double t);

/// The error function the dynamics zero out. Same value as gradient() for
/// quadratic problems; for tracking problems built with b = -h it is F g - h.
Vector residual(const TimeVaryingLinearProblem& p, std::span<const double> z, double t);

/// -M^{-1} b (least squares when M is tall), or solution_at when provided.
Vector theoretical_solution(const TimeVaryingLinearProblem& p, double t);

struct Example1Params {
  double frequency = 1.0;  ///< angular frequency of every sin/cos term
  double amplitude = 1.0;  ///< scale of b(t)
};

/// M(t) = [[0.5 sin t + 2, cos t], [cos t, 0.5 cos t + 2]], b(t) = [sin t, cos t].
TimeVaryingLinearProblem example1(Example1Params params = {});

/// Time-invariant problem M z + b = 0; derivatives are identically zero.
TimeVaryingLinearProblem constant_problem(Matrix m, Vector b);

}  // namespace ztnd
