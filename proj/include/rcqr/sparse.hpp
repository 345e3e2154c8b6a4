#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rcqr/dense.hpp"

namespace rcqr {

/// Compressed-sparse-row matrix. Column indices are strictly increasing
/// within a row; explicitly stored zeros are allowed.
class SparseMatrix {
 public:
  /// Validates the CSR arrays; throws DimensionError or ParamError.
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> row_ptr,
               std::vector<std::size_t> col_idx, std::vector<double> values);

  /// Empty (all-zero) matrix.
  SparseMatrix(std::size_t rows, std::size_t cols);

  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };
  /// Builds from unordered triplets; duplicates are summed.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

enum class MatrixClass { T1, T2, Dense };

const char* to_string(MatrixClass c) noexcept;

/// Dense/sparse column split of a matrix.
struct SparsityProfile {
  std::size_t v = 0;   // number of dense columns
  std::size_t t1 = 0;  // max nnz over dense columns (0 when v == 0)
  std::size_t t2 = 0;  // max nnz over the remaining columns
  double c = 0.0;      // max |x_ij|
  std::vector<std::size_t> dense_cols;
  MatrixClass matrix_class = MatrixClass::T2;
};

/// Classifies each column as dense when its stored-nonzero count is at least
/// dense_fraction * rows. Stored zeros do not count.
SparsityProfile profile_sparsity(const SparseMatrix& x,
                                 double dense_fraction = 0.25);
SparsityProfile profile_sparsity(const DenseMatrix& x,
                                 double dense_fraction = 0.25);

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d);
DenseMatrix dense_times_sparse(const DenseMatrix& d, const SparseMatrix& s);

DenseMatrix to_dense(const SparseMatrix& s);
/// Keeps entries with |x| > drop_tol (every nonzero when drop_tol == 0).
SparseMatrix from_dense(const DenseMatrix& d, double drop_tol = 0.0);

double max_abs(const SparseMatrix& s);
double max_abs(const DenseMatrix& d);

/// beta with c = sqrt(beta/m) * ||X||_2, i.e. beta = m c^2 / ||X||_2^2.
double enc_beta(const SparseMatrix& s);
double enc_beta(const DenseMatrix& d);

}  // namespace rcqr
