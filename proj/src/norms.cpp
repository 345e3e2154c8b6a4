#include "rcqr/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rcqr/sparse.hpp"

namespace rcqr {

double fro_norm(const DenseMatrix& x) {
  double s = 0.0;
  for (double v : x.data()) s += v * v;
  return std::sqrt(s);
}

double two_norm(const DenseMatrix& x) {
  if (x.rows() < x.cols()) return singular_values(transpose(x)).front();
  return singular_values(x).front();
}

double g_bracket(const DenseMatrix& x) {
  std::vector<double> sq(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xi = x.row(i);
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] += xi[j] * xi[j];
  }
  return std::sqrt(*std::max_element(sq.begin(), sq.end()));
}

double g_norm(const DenseMatrix& x) {
  return std::sqrt(static_cast<double>(x.cols())) * g_bracket(x);
}

double eta(const DenseMatrix& x) {
  const double n2 = two_norm(x);
  if (n2 == 0.0) throw Undefined("eta: zero matrix");
  return max_abs(x) / n2;
}

double j_ratio(const DenseMatrix& x) {
  const double n2 = two_norm(x);
  if (n2 == 0.0) throw Undefined("j_ratio: zero matrix");
  return g_norm(x) / n2;
}

double fro_norm(const SparseMatrix& x) {
  double s = 0.0;
  for (double v : x.values()) s += v * v;
  return std::sqrt(s);
}

double g_bracket(const SparseMatrix& x) {
  std::vector<double> sq(x.cols(), 0.0);
  for (std::size_t k = 0; k < x.nnz(); ++k)
    sq[x.col_idx()[k]] += x.values()[k] * x.values()[k];
  return std::sqrt(*std::max_element(sq.begin(), sq.end()));
}

double g_norm(const SparseMatrix& x) {
  return std::sqrt(static_cast<double>(x.cols())) * g_bracket(x);
}

}  // namespace rcqr
