#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "rcqr/error.hpp"

namespace rcqr {

/// Row-major dense matrix of doubles. Never empty.
class DenseMatrix {
 public:
  /// Zero matrix. Throws DimensionError when either extent is zero.
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of `data` (row-major, rows*cols long). Rejects
  /// non-finite entries with ParamError.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool all_finite() const noexcept;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Square upper-triangular matrix; the strict lower part is exactly zero.
class UpperTriangular {
 public:
  explicit UpperTriangular(std::size_t n);

  /// Requires a square input with an all-zero strict lower part.
  explicit UpperTriangular(DenseMatrix m);

  /// Drops whatever sits below the diagonal of a square matrix.
  static UpperTriangular project(DenseMatrix m);

  static UpperTriangular identity(std::size_t n);

  std::size_t n() const noexcept { return m_.rows(); }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return m_(i, j);
  }
  // Writes below the diagonal are not allowed.
  double& at_upper(std::size_t i, std::size_t j);

  bool has_positive_diagonal() const noexcept;

  const DenseMatrix& dense() const noexcept { return m_; }

  bool operator==(const UpperTriangular&) const = default;

 private:
  DenseMatrix m_;
};

DenseMatrix transpose(const DenseMatrix& a);

/// C = A B, each entry summed left to right over the inner index.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// Product of two upper-triangular factors; the result is upper-triangular
/// because every strict-lower term of the product is a product with zero.
UpperTriangular matmul(const UpperTriangular& a, const UpperTriangular& b);

/// X^T X. The upper triangle is accumulated over blocks of 64 rows, block
/// sums are combined pairwise (fixed order), and the result is mirrored, so
/// it is bit-for-bit symmetric.
DenseMatrix gram(const DenseMatrix& x);

/// Unpivoted, unshifted Cholesky: returns R with R^T R = G. Only the upper
/// triangle of G is read. Throws CholeskyBreakdown on the first pivot that is
/// not strictly positive and finite.
UpperTriangular cholesky(const DenseMatrix& g);

/// Solves W R = X row by row (forward substitution on R^T).
DenseMatrix trisolve_right(const DenseMatrix& x, const UpperTriangular& r);

/// Eigenvalues of a symmetric matrix in descending order, by cyclic Jacobi
/// rotations. Stops once the off-diagonal Frobenius mass is at most
/// 1e-14 * ||S||_F or after 100 sweeps.
std::vector<double> sym_eigenvalues(const DenseMatrix& s);

/// Singular values (descending) of an m x n matrix with m >= n.
///
/// Computed with one-sided Jacobi: column pairs of X are rotated until
/// mutually orthogonal, which diagonalises X^T X implicitly without
/// squaring the condition number. Column norms at convergence are the
/// singular values.
std::vector<double> singular_values(const DenseMatrix& x);

/// sigma_1 / sigma_n. Throws RankDeficient when sigma_n < 1e-300.
double cond2(const DenseMatrix& x);

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double alpha, const DenseMatrix& a);

}  // namespace rcqr
