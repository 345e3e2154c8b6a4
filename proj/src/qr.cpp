#include "rcqr/qr.hpp"

#include <cmath>
#include <string>

#include "rcqr/norms.hpp"

namespace rcqr {

namespace {

constexpr const char* kFirst = "first-cholesky";
constexpr const char* kSecond = "second-cholesky";
constexpr const char* kSketch = "sketch-cholesky";
constexpr const char* kRefine = "refine-cholesky";

void require_tall(std::size_t m, std::size_t n, const char* op) {
  if (m < n)
    throw DimensionError(std::string(op) + ": need rows >= cols, got " +
                         std::to_string(m) + "x" + std::to_string(n));
}

UpperTriangular staged_cholesky(const DenseMatrix& g, const char* stage) {
  try {
    return cholesky(g);
  } catch (const CholeskyBreakdown& e) {
    throw e.with_stage(stage);
  }
}

// Y = chol((Omega X)^T (Omega X)), W = X Y^{-1}, then one CholeskyQR on W.
QRResult precondition_and_refine(const DenseMatrix& x, const DenseMatrix& a,
                                 bool diagnostics) {
  QRResult out{x, UpperTriangular(x.cols()), {}};
  const UpperTriangular y = staged_cholesky(gram(a), kSketch);
  out.diagnostics.stages_completed.push_back(kSketch);
  const DenseMatrix w = trisolve_right(x, y);
  const UpperTriangular z = staged_cholesky(gram(w), kRefine);
  out.diagnostics.stages_completed.push_back(kRefine);
  out.Q = trisolve_right(w, z);
  out.R = matmul(z, y);
  if (diagnostics) fill_diagnostics(out, x);
  return out;
}

}  // namespace

double orthogonality(const DenseMatrix& q) {
  DenseMatrix g = gram(q);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return fro_norm(g);
}

double residual(const DenseMatrix& q, const UpperTriangular& r,
                const DenseMatrix& x) {
  if (q.cols() != r.n() || q.rows() != x.rows() || q.cols() != x.cols())
    throw DimensionError("residual: shapes of Q, R and X disagree");
  return fro_norm(matmul(q, r.dense()) - x);
}

void fill_diagnostics(QRResult& res, const DenseMatrix& x) {
  res.diagnostics.orthogonality = orthogonality(res.Q);
  res.diagnostics.residual = residual(res.Q, res.R, x);
}

QRResult cholesky_qr(const DenseMatrix& x, bool diagnostics) {
  require_tall(x.rows(), x.cols(), "cholesky_qr");
  QRResult out{x, staged_cholesky(gram(x), kFirst), {}};
  out.diagnostics.stages_completed.push_back(kFirst);
  out.Q = trisolve_right(x, out.R);
  if (diagnostics) fill_diagnostics(out, x);
  return out;
}

QRResult cholesky_qr2(const DenseMatrix& x, bool diagnostics) {
  require_tall(x.rows(), x.cols(), "cholesky_qr2");
  QRResult out{x, UpperTriangular(x.cols()), {}};
  const UpperTriangular y = staged_cholesky(gram(x), kFirst);
  out.diagnostics.stages_completed.push_back(kFirst);
  const DenseMatrix w = trisolve_right(x, y);
  const UpperTriangular z = staged_cholesky(gram(w), kSecond);
  out.diagnostics.stages_completed.push_back(kSecond);
  out.Q = trisolve_right(w, z);
  out.R = matmul(z, y);
  if (diagnostics) fill_diagnostics(out, x);
  return out;
}

QRResult sr_cholesky_qr2(const DenseMatrix& x, const GaussianSketchOp& gauss,
                         bool diagnostics) {
  require_tall(x.rows(), x.cols(), "sr_cholesky_qr2");
  if (gauss.in_rows() != x.rows())
    throw DimensionError("sr_cholesky_qr2: sketch input rows != rows of X");
  if (gauss.out_rows() < x.cols())
    throw ParamError("sr_cholesky_qr2: sketch size below column count");
  return precondition_and_refine(x, apply_gaussian(gauss, x), diagnostics);
}

QRResult sr_cholesky_qr2(const SparseMatrix& x, const GaussianSketchOp& gauss,
                         bool diagnostics) {
  require_tall(x.rows(), x.cols(), "sr_cholesky_qr2");
  if (gauss.in_rows() != x.rows())
    throw DimensionError("sr_cholesky_qr2: sketch input rows != rows of X");
  if (gauss.out_rows() < x.cols())
    throw ParamError("sr_cholesky_qr2: sketch size below column count");
  return precondition_and_refine(to_dense(x), apply_gaussian(gauss, x),
                                 diagnostics);
}

QRResult mr_cholesky_qr2(const DenseMatrix& x, const MultiSketchOp& multi,
                         bool diagnostics) {
  require_tall(x.rows(), x.cols(), "mr_cholesky_qr2");
  if (multi.in_rows() != x.rows() ||
      multi.gauss.in_rows() != multi.count.out_rows())
    throw DimensionError("mr_cholesky_qr2: sketch dimensions do not chain");
  if (multi.out_rows() < x.cols())
    throw ParamError("mr_cholesky_qr2: sketch size below column count");
  return precondition_and_refine(x, apply_multi(multi, x), diagnostics);
}

QRResult mr_cholesky_qr2(const SparseMatrix& x, const MultiSketchOp& multi,
                         bool diagnostics) {
  require_tall(x.rows(), x.cols(), "mr_cholesky_qr2");
  if (multi.in_rows() != x.rows() ||
      multi.gauss.in_rows() != multi.count.out_rows())
    throw DimensionError("mr_cholesky_qr2: sketch dimensions do not chain");
  if (multi.out_rows() < x.cols())
    throw ParamError("mr_cholesky_qr2: sketch size below column count");
  return precondition_and_refine(to_dense(x), apply_multi(multi, x),
                                 diagnostics);
}

}  // namespace rcqr
