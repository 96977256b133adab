#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ztnd {

using Vector = std::vector<double>;

/// Dense row-major real matrix. Sized for the handful of unknowns the
/// solvers here deal with; no expression templates, no views.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  /// Largest absolute entry; 0 for an all-zero matrix.
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Pivots smaller than this times max|a_ij| are treated as zero.
inline constexpr double kPivotTolerance = 1e-12;

/// Solves a x = rhs by LU with partial pivoting.
/// Throws SingularMatrix when a pivot drops below kPivotTolerance * max|a|,
/// DimensionMismatch on shape errors.
Vector solve(const Matrix& a, std::span<const double> rhs);

/// argmin ||a x - rhs||_2 through the normal equations (a^T a) x = a^T rhs.
/// Requires rows >= cols; a square input goes straight to solve().
Vector least_squares_solve(const Matrix& a, std::span<const double> rhs);

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double dot(std::span<const double> x, std::span<const double> y);

Vector mat_vec(const Matrix& a, std::span<const double> x);
/// a^T x without forming the transpose.
Vector mat_t_vec(const Matrix& a, std::span<const double> x);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix scalar_mul(double c, const Matrix& a);

Vector scalar_mul(double c, std::span<const double> v);
Vector add(std::span<const double> x, std::span<const double> y);
Vector sub(std::span<const double> x, std::span<const double> y);
/// y += c * x
void axpy(double c, std::span<const double> x, std::span<double> y);

bool all_finite(std::span<const double> v);

}  // namespace ztnd
