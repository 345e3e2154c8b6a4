#include "rcqr/dense.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace rcqr {

namespace {

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shapes " + shape(a) + " and " +
                         shape(b) + " differ");
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0)
    throw DimensionError("DenseMatrix: extents must be positive");
  data_.assign(rows * cols, 0.0);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0)
    throw DimensionError("DenseMatrix: extents must be positive");
  if (data_.size() != rows * cols)
    throw DimensionError("DenseMatrix: expected " +
                         std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
  if (!all_finite()) throw ParamError("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(data));
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

UpperTriangular::UpperTriangular(std::size_t n) : m_(n, n) {}

UpperTriangular::UpperTriangular(DenseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw DimensionError("UpperTriangular: matrix is " + shape(m_));
  for (std::size_t i = 1; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m_(i, j) != 0.0)
        throw ParamError("UpperTriangular: nonzero below the diagonal at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
}

UpperTriangular UpperTriangular::project(DenseMatrix m) {
  if (m.rows() != m.cols())
    throw DimensionError("UpperTriangular::project: matrix is " + shape(m));
  for (std::size_t i = 1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = 0.0;
  return UpperTriangular(std::move(m));
}

UpperTriangular UpperTriangular::identity(std::size_t n) {
  return UpperTriangular(DenseMatrix::identity(n));
}

double& UpperTriangular::at_upper(std::size_t i, std::size_t j) {
  if (i > j) throw ParamError("UpperTriangular: write below the diagonal");
  return m_(i, j);
}

bool UpperTriangular::has_positive_diagonal() const noexcept {
  for (std::size_t i = 0; i < n(); ++i)
    if (!(m_(i, i) > 0.0)) return false;
  return true;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions of " + shape(a) + " and " +
                         shape(b) + " disagree");
  DenseMatrix c(a.rows(), b.cols());
  // i-l-j order: each c(i,j) still receives its terms in increasing l.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      const auto bl = b.row(l);
      for (std::size_t j = 0; j < ci.size(); ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

UpperTriangular matmul(const UpperTriangular& a, const UpperTriangular& b) {
  if (a.n() != b.n()) throw DimensionError("matmul: triangular sizes differ");
  return UpperTriangular::project(matmul(a.dense(), b.dense()));
}

namespace {

constexpr std::size_t kGramLeaf = 64;

// Upper triangle of sum over rows [lo, hi) of x_l^T x_l, added into g.
// Ranges longer than a leaf are split in half and the halves summed
// pairwise.
void gram_upper(const DenseMatrix& x, std::size_t lo, std::size_t hi,
                DenseMatrix& g) {
  const std::size_t n = x.cols();
  if (hi - lo <= kGramLeaf) {
    for (std::size_t l = lo; l < hi; ++l) {
      const auto xl = x.row(l);
      for (std::size_t i = 0; i < n; ++i) {
        const double xli = xl[i];
        auto gi = g.row(i);
        for (std::size_t j = i; j < n; ++j) gi[j] += xli * xl[j];
      }
    }
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  DenseMatrix right(n, n);
  gram_upper(x, lo, mid, g);
  gram_upper(x, mid, hi, right);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) += right(i, j);
}

}  // namespace

DenseMatrix gram(const DenseMatrix& x) {
  const std::size_t n = x.cols();
  DenseMatrix g(n, n);
  gram_upper(x, 0, x.rows(), g);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

UpperTriangular cholesky(const DenseMatrix& g) {
  if (g.rows() != g.cols())
    throw DimensionError("cholesky: matrix is " + shape(g));
  const std::size_t n = g.rows();
  UpperTriangular r(n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = g(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= r(k, j) * r(k, j);
    if (!(pivot > 0.0) || !std::isfinite(pivot))
      throw CholeskyBreakdown(j, pivot);
    const double rjj = std::sqrt(pivot);
    r.at_upper(j, j) = rjj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = g(j, i);
      for (std::size_t k = 0; k < j; ++k) s -= r(k, j) * r(k, i);
      r.at_upper(j, i) = s / rjj;
    }
  }
  return r;
}

DenseMatrix trisolve_right(const DenseMatrix& x, const UpperTriangular& r) {
  const std::size_t n = r.n();
  if (x.cols() != n)
    throw DimensionError("trisolve_right: " + shape(x) + " against order " +
                         std::to_string(n));
  for (std::size_t j = 0; j < n; ++j)
    if (r(j, j) == 0.0)
      throw SingularTriangular("trisolve_right: zero diagonal at " +
                               std::to_string(j));
  DenseMatrix w(x.rows(), n);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xi = x.row(i);
    auto wi = w.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      double s = xi[j];
      for (std::size_t k = 0; k < j; ++k) s -= wi[k] * r(k, j);
      wi[j] = s / r(j, j);
    }
  }
  return w;
}

std::vector<double> sym_eigenvalues(const DenseMatrix& s) {
  if (s.rows() != s.cols())
    throw DimensionError("sym_eigenvalues: matrix is " + shape(s));
  const std::size_t n = s.rows();
  double fro2 = 0.0;
  for (double v : s.data()) fro2 += v * v;
  const double fro = std::sqrt(fro2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-12 * fro)
        throw SymmetryError("sym_eigenvalues: asymmetric at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");

  DenseMatrix a = s;
  const double tol = 1e-14 * fro;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off2 += a(i, j) * a(i, j);
    if (std::sqrt(off2) <= tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> singular_values(const DenseMatrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  if (m < n)
    throw DimensionError("singular_values: needs rows >= cols, got " +
                         shape(x));

  // Column-major working copy so that each rotation streams two columns.
  std::vector<std::vector<double>> col(n, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j][i] = x(i, j);

  const double tol =
      std::sqrt(static_cast<double>(m)) * std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto& cp = col[p];
        auto& cq = col[q];
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += cp[i] * cp[i];
          beta += cq[i] * cq[i];
          gamma += cp[i] * cq[i];
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta))
          continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double a = cp[i];
          const double b = cq[i];
          cp[i] = c * a - s * b;
          cq[i] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0.0;
    for (double v : col[j]) ss += v * v;
    sv[j] = std::sqrt(ss);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double cond2(const DenseMatrix& x) {
  const auto sv = singular_values(x);
  if (sv.back() < 1e-300)
    throw RankDeficient("cond2: smallest singular value is " +
                        std::to_string(sv.back()));
  return sv.front() / sv.back();
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "operator+");
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] += bd[k];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "operator-");
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] -= bd[k];
  return c;
}

DenseMatrix operator*(double alpha, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (double& v : c.data()) v *= alpha;
  return c;
}

}  // namespace rcqr
