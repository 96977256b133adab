#include "ztnd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ztnd/errors.hpp"

namespace ztnd {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Vector solve(const Matrix& a, std::span<const double> rhs) {
  require(a.square(), "solve: matrix must be square");
  require(rhs.size() == a.rows(), "solve: rhs length must equal matrix size");
  const std::size_t n = a.rows();
  const double tol = kPivotTolerance * a.max_abs();

  Matrix lu = a;
  Vector x(rhs.begin(), rhs.end());

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    }
    if (!(std::abs(lu(piv, k)) > tol)) {
      throw SingularMatrix("pivot " + std::to_string(std::abs(lu(piv, k))) + " at column " +
                           std::to_string(k) + " below tolerance");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(x[k], x[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
    x[k] = s / lu(k, k);
  }
  return x;
}

Vector least_squares_solve(const Matrix& a, std::span<const double> rhs) {
  require(a.rows() >= a.cols(), "least_squares_solve: need rows >= cols");
  require(rhs.size() == a.rows(), "least_squares_solve: rhs length must equal rows");
  if (a.square()) return solve(a, rhs);
  const Matrix at = transpose(a);
  return solve(mat_mul(at, a), mat_vec(at, rhs));
}

double norm2(std::span<const double> v) {
  // Scaled accumulation keeps ||.||^eta well-defined for large residuals.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double x : v) {
    const double r = x / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "dot: length mismatch");
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

Vector mat_vec(const Matrix& a, std::span<const double> x) {
  require(x.size() == a.cols(), "mat_vec: vector length must equal cols");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vector mat_t_vec(const Matrix& a, std::span<const double> x) {
  require(x.size() == a.rows(), "mat_t_vec: vector length must equal rows");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += a(i, j) * x[i];
  }
  return y;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "mat_mul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "mat_add: shapes differ");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Matrix scalar_mul(double c, const Matrix& a) {
  Matrix r = a;
  for (double& v : r.data()) v *= c;
  return r;
}

Vector scalar_mul(double c, std::span<const double> v) {
  Vector r(v.begin(), v.end());
  for (double& x : r) x *= c;
  return r;
}

Vector add(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "add: length mismatch");
  Vector r(x.begin(), x.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vector sub(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "sub: length mismatch");
  Vector r(x.begin(), x.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

void axpy(double c, std::span<const double> x, std::span<double> y) {
  require(x.size() == y.size(), "axpy: length mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace ztnd
