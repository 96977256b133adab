#include "ztnd/problem.hpp"

#include <cmath>
#include <utility>

#include "ztnd/errors.hpp"

namespace ztnd {

namespace {

void check_dim(const TimeVaryingLinearProblem& p, std::span<const double> z) {
  if (z.size() != p.dim) {
    throw DimensionMismatch("problem '" + p.name + "' expects " + std::to_string(p.dim) +
                            " unknowns, got " + std::to_string(z.size()));
  }
}

}  // namespace

double objective(const TimeVaryingLinearProblem& p, std::span<const double> z, double t) {
  check_dim(p, z);
  if (!p.is_square()) throw DimensionMismatch("objective requires a square Hessian");
  const Vector mz = mat_vec(p.m_at(t), z);
  return 0.5 * dot(z, mz) + dot(p.b_at(t), z);
}

Vector gradient(const TimeVaryingLinearProblem& p, std::span<const double> z, double t) {
  check_dim(p, z);
  Vector g = mat_vec(p.m_at(t), z);
  axpy(1.0, p.b_at(t), g);
  return g;
}

Vector residual(const TimeVaryingLinearProblem& p, std::span<const double> z, double t) {
  return gradient(p, z, t);
}

Vector theoretical_solution(const TimeVaryingLinearProblem& p, double t) {
  if (p.solution_at) return p.solution_at(t);
  const Vector rhs = scalar_mul(-1.0, p.b_at(t));
  return p.is_square() ? solve(p.m_at(t), rhs) : least_squares_solve(p.m_at(t), rhs);
}

TimeVaryingLinearProblem example1(Example1Params params) {
  const double w = params.frequency;
  const double a = params.amplitude;
  TimeVaryingLinearProblem p;
  p.name = "example1";
  p.dim = 2;
  p.equations = 2;
  p.m_at = [w](double t) {
    const double s = std::sin(w * t), c = std::cos(w * t);
    return Matrix{{0.5 * s + 2.0, c}, {c, 0.5 * c + 2.0}};
  };
  p.dm_at = [w](double t) {
    const double s = std::sin(w * t), c = std::cos(w * t);
    return Matrix{{0.5 * w * c, -w * s}, {-w * s, -0.5 * w * s}};
  };
  p.b_at = [w, a](double t) { return Vector{a * std::sin(w * t), a * std::cos(w * t)}; };
  p.db_at = [w, a](double t) {
    return Vector{a * w * std::cos(w * t), -a * w * std::sin(w * t)};
  };
  return p;
}

TimeVaryingLinearProblem constant_problem(Matrix m, Vector b) {
  if (!m.square() || b.size() != m.rows()) {
    throw DimensionMismatch("constant_problem: M must be square and match b");
  }
  const std::size_t n = m.rows();
  TimeVaryingLinearProblem p;
  p.name = "constant_problem";
  p.dim = n;
  p.equations = n;
  p.m_at = [m = std::move(m)](double) { return m; };
  p.b_at = [b = std::move(b)](double) { return b; };
  p.dm_at = [n](double) { return Matrix(n, n); };
  p.db_at = [n](double) { return Vector(n, 0.0); };
  return p;
}

}  // namespace ztnd
