#pragma once

#include <string>
#include <vector>

#include "rcqr/dense.hpp"
#include "rcqr/sketch.hpp"
#include "rcqr/sparse.hpp"

namespace rcqr {

struct QRDiagnostics {
  double orthogonality = 0.0;  ///< ||Q^T Q - I||_F
  double residual = 0.0;       ///< ||Q R - X||_F
  std::vector<std::string> stages_completed;
};

struct QRResult {
  DenseMatrix Q;
  UpperTriangular R;
  QRDiagnostics diagnostics;
};

/// ||Q^T Q - I||_F.
double orthogonality(const DenseMatrix& q);
/// ||Q R - X||_F. Throws DimensionError on a shape mismatch.
double residual(const DenseMatrix& q, const UpperTriangular& r,
                const DenseMatrix& x);

/// Fills orthogonality and residual of `res` against X.
void fill_diagnostics(QRResult& res, const DenseMatrix& x);

// Each algorithm fills the diagnostics unless `diagnostics` is false (the
// bench harness times the factorization alone). Breakdowns surface as
// CholeskyBreakdown tagged with the failing stage.

/// Single pass: G = X^T X, R = chol(G), Q = X R^{-1}.
QRResult cholesky_qr(const DenseMatrix& x, bool diagnostics = true);

/// CholeskyQR applied twice; R = Z Y.
QRResult cholesky_qr2(const DenseMatrix& x, bool diagnostics = true);

/// Sketch with a Gaussian operator, precondition, then one CholeskyQR pass.
QRResult sr_cholesky_qr2(const DenseMatrix& x, const GaussianSketchOp& gauss,
                         bool diagnostics = true);
QRResult sr_cholesky_qr2(const SparseMatrix& x, const GaussianSketchOp& gauss,
                         bool diagnostics = true);

/// As sr_cholesky_qr2 with the composed CountSketch + Gaussian operator.
QRResult mr_cholesky_qr2(const DenseMatrix& x, const MultiSketchOp& multi,
                         bool diagnostics = true);
QRResult mr_cholesky_qr2(const SparseMatrix& x, const MultiSketchOp& multi,
                         bool diagnostics = true);

}  // namespace rcqr
