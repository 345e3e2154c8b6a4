#include "rcqr/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "rcqr/norms.hpp"

namespace rcqr {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0)
    throw DimensionError("SparseMatrix: extents must be positive");
  if (row_ptr_.size() != rows_ + 1)
    throw DimensionError("SparseMatrix: row_ptr must have rows+1 entries");
  if (col_idx_.size() != values_.size())
    throw DimensionError("SparseMatrix: col_idx and values lengths differ");
  if (row_ptr_.front() != 0 || row_ptr_.back() != values_.size())
    throw ParamError("SparseMatrix: row_ptr must run from 0 to nnz");
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1])
      throw ParamError("SparseMatrix: row_ptr decreases at row " +
                       std::to_string(i));
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= cols_)
        throw ParamError("SparseMatrix: column index out of range in row " +
                         std::to_string(i));
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1])
        throw ParamError("SparseMatrix: column indices not increasing in row " +
                         std::to_string(i));
      if (!std::isfinite(values_[k]))
        throw ParamError("SparseMatrix: non-finite entry");
    }
  }
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : SparseMatrix(rows, cols, std::vector<std::size_t>(rows + 1, 0), {}, {}) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
  for (const auto& t : entries)
    if (t.row >= rows || t.col >= cols)
      throw DimensionError("from_triplets: entry out of range");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(entries.size());
  values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      values.back() += t.value;
      continue;
    }
    col_idx.push_back(t.col);
    values.push_back(t.value);
    ++row_ptr[t.row + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) row_ptr[i + 1] += row_ptr[i];
  return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col_idx),
                      std::move(values));
}

const char* to_string(MatrixClass c) noexcept {
  switch (c) {
    case MatrixClass::T1: return "T1";
    case MatrixClass::T2: return "T2";
    case MatrixClass::Dense: return "DENSE";
  }
  return "?";
}

namespace {

SparsityProfile classify(const std::vector<std::size_t>& col_nnz,
                         std::size_t rows, double c, double dense_fraction) {
  if (!(dense_fraction > 0.0 && dense_fraction <= 1.0))
    throw ParamError("profile_sparsity: dense_fraction must lie in (0,1]");
  SparsityProfile p;
  p.c = c;
  const double cut = dense_fraction * static_cast<double>(rows);
  for (std::size_t j = 0; j < col_nnz.size(); ++j) {
    if (static_cast<double>(col_nnz[j]) >= cut) {
      p.dense_cols.push_back(j);
      p.t1 = std::max(p.t1, col_nnz[j]);
    } else {
      p.t2 = std::max(p.t2, col_nnz[j]);
    }
  }
  p.v = p.dense_cols.size();
  if (p.v == 0)
    p.matrix_class = MatrixClass::T2;
  else if (p.v == col_nnz.size())
    p.matrix_class = MatrixClass::Dense;
  else
    p.matrix_class = MatrixClass::T1;
  return p;
}

}  // namespace

SparsityProfile profile_sparsity(const SparseMatrix& x, double dense_fraction) {
  std::vector<std::size_t> col_nnz(x.cols(), 0);
  for (std::size_t k = 0; k < x.nnz(); ++k)
    if (x.values()[k] != 0.0) ++col_nnz[x.col_idx()[k]];
  return classify(col_nnz, x.rows(), max_abs(x), dense_fraction);
}

SparsityProfile profile_sparsity(const DenseMatrix& x, double dense_fraction) {
  std::vector<std::size_t> col_nnz(x.cols(), 0);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) != 0.0) ++col_nnz[j];
  return classify(col_nnz, x.rows(), max_abs(x), dense_fraction);
}

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d) {
  if (s.cols() != d.rows())
    throw DimensionError("spmm: inner dimensions disagree");
  DenseMatrix out(s.rows(), d.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto oi = out.row(i);
    for (std::size_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k) {
      const double v = s.values()[k];
      const auto dr = d.row(s.col_idx()[k]);
      for (std::size_t j = 0; j < oi.size(); ++j) oi[j] += v * dr[j];
    }
  }
  return out;
}

DenseMatrix dense_times_sparse(const DenseMatrix& d, const SparseMatrix& s) {
  if (d.cols() != s.rows())
    throw DimensionError("dense_times_sparse: inner dimensions disagree");
  DenseMatrix out(d.rows(), s.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    auto oi = out.row(i);
    const auto di = d.row(i);
    for (std::size_t l = 0; l < s.rows(); ++l) {
      const double dil = di[l];
      for (std::size_t k = s.row_ptr()[l]; k < s.row_ptr()[l + 1]; ++k)
        oi[s.col_idx()[k]] += dil * s.values()[k];
    }
  }
  return out;
}

DenseMatrix to_dense(const SparseMatrix& s) {
  DenseMatrix d(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k)
      d(i, s.col_idx()[k]) = s.values()[k];
  return d;
}

SparseMatrix from_dense(const DenseMatrix& d, double drop_tol) {
  if (!(drop_tol >= 0.0)) throw ParamError("from_dense: drop_tol must be >= 0");
  std::vector<std::size_t> row_ptr(d.rows() + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const double v = d(i, j);
      if (v != 0.0 && std::abs(v) > drop_tol) {
        col_idx.push_back(j);
        values.push_back(v);
      }
    }
    row_ptr[i + 1] = values.size();
  }
  return SparseMatrix(d.rows(), d.cols(), std::move(row_ptr),
                      std::move(col_idx), std::move(values));
}

double max_abs(const SparseMatrix& s) {
  double c = 0.0;
  for (double v : s.values()) c = std::max(c, std::abs(v));
  return c;
}

double max_abs(const DenseMatrix& d) {
  double c = 0.0;
  for (double v : d.data()) c = std::max(c, std::abs(v));
  return c;
}

double enc_beta(const DenseMatrix& d) {
  const double norm2 = two_norm(d);
  if (norm2 == 0.0) throw Undefined("enc_beta: zero matrix");
  const double c = max_abs(d);
  return static_cast<double>(d.rows()) * c * c / (norm2 * norm2);
}

double enc_beta(const SparseMatrix& s) { return enc_beta(to_dense(s)); }

}  // namespace rcqr
