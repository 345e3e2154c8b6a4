#pragma once

#include "rcqr/dense.hpp"

namespace rcqr {

class SparseMatrix;

double fro_norm(const DenseMatrix& x);

/// Largest singular value. Wide inputs are handled through the transpose.
double two_norm(const DenseMatrix& x);

/// [X]_g: the largest column 2-norm.
double g_bracket(const DenseMatrix& x);

/// ||X||_g = sqrt(cols) * [X]_g. A matrix norm sandwiched as
/// ||X||_2 <= ||X||_F <= ||X||_g <= sqrt(n) ||X||_2.
double g_norm(const DenseMatrix& x);

/// eta = max|x_ij| / ||X||_2, in (0, 1]. Throws Undefined for X = 0.
double eta(const DenseMatrix& x);

/// j = ||X||_g / ||X||_2, in [1, sqrt(n)]. Throws Undefined for X = 0.
double j_ratio(const DenseMatrix& x);

double fro_norm(const SparseMatrix& x);
double g_bracket(const SparseMatrix& x);
double g_norm(const SparseMatrix& x);

}  // namespace rcqr
