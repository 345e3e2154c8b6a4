#include "rcqr/sketch.hpp"

#include <cmath>
#include <string>

#include "rcqr/rng.hpp"

namespace rcqr {

namespace {

constexpr std::uint64_t kTagCountRow = 1;
constexpr std::uint64_t kTagCountSign = 2;
constexpr std::uint64_t kTagGauss = 3;
constexpr std::uint64_t kTagMultiCount = 4;
constexpr std::uint64_t kTagMultiGauss = 5;
constexpr std::uint64_t kTagProbe = 6;

// Rounds q up to an integer, treating values within a relative 1e-12 of an
// integer as that integer. The size formulas are exact rationals whose
// decimal inputs (0.6, 1.5, ...) are not representable in binary.
std::size_t ceil_snapped(double q) {
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-12 * std::max(1.0, std::abs(q)))
    return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(q));
}

void require_rows(std::size_t got, std::size_t want, const char* op) {
  if (got != want)
    throw DimensionError(std::string(op) + ": operator expects " +
                         std::to_string(want) + " input rows, got " +
                         std::to_string(got));
}

}  // namespace

CountSketchOp::CountSketchOp(std::size_t out_rows,
                             std::vector<std::size_t> row_of,
                             std::vector<signed char> sign_of,
                             std::uint64_t seed)
    : out_rows_(out_rows),
      row_of_(std::move(row_of)),
      sign_of_(std::move(sign_of)),
      seed_(seed) {
  if (out_rows_ == 0 || row_of_.empty())
    throw ParamError("CountSketchOp: extents must be positive");
  if (row_of_.size() != sign_of_.size())
    throw DimensionError("CountSketchOp: row_of and sign_of lengths differ");
  for (std::size_t i = 0; i < row_of_.size(); ++i) {
    if (row_of_[i] >= out_rows_)
      throw ParamError("CountSketchOp: target row out of range");
    if (sign_of_[i] != 1 && sign_of_[i] != -1)
      throw ParamError("CountSketchOp: sign must be +1 or -1");
  }
}

CountSketchOp CountSketchOp::identity(std::size_t m) {
  std::vector<std::size_t> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = i;
  return CountSketchOp(m, std::move(rows), std::vector<signed char>(m, 1));
}

GaussianSketchOp::GaussianSketchOp(std::size_t out_rows, std::size_t in_rows,
                                   std::uint64_t seed)
    : out_rows_(out_rows),
      in_rows_(in_rows),
      seed_(seed),
      key_(rng::stream_key(seed, kTagGauss)),
      scale_(1.0 / std::sqrt(static_cast<double>(out_rows))) {
  if (out_rows == 0 || out_rows > in_rows)
    throw ParamError("GaussianSketchOp: need 1 <= s <= m_in, got s=" +
                     std::to_string(out_rows) +
                     " m_in=" + std::to_string(in_rows));
}

double GaussianSketchOp::entry(std::size_t i, std::size_t l) const noexcept {
  return rng::normal(key_, static_cast<std::uint64_t>(i) * in_rows_ + l) *
         scale_;
}

void GaussianSketchOp::fill_row(std::size_t i, std::span<double> out) const {
  if (out.size() != in_rows_)
    throw DimensionError("GaussianSketchOp::fill_row: wrong buffer length");
  const std::uint64_t base = static_cast<std::uint64_t>(i) * in_rows_;
  std::size_t l = 0;
  if (base % 2 == 1 && l < in_rows_) {
    out[l] = rng::normal(key_, base) * scale_;
    ++l;
  }
  for (; l + 1 < in_rows_; l += 2) {
    const auto p = rng::normal_pair(key_, (base + l) / 2);
    out[l] = p.first * scale_;
    out[l + 1] = p.second * scale_;
  }
  if (l < in_rows_) out[l] = rng::normal(key_, base + l) * scale_;
}

CountSketchOp build_countsketch(std::size_t s1, std::size_t m,
                                std::uint64_t seed) {
  if (s1 < 1 || s1 > m)
    throw ParamError("build_countsketch: need 1 <= s1 <= m, got s1=" +
                     std::to_string(s1) + " m=" + std::to_string(m));
  const std::uint64_t row_key = rng::stream_key(seed, kTagCountRow);
  const std::uint64_t sign_key = rng::stream_key(seed, kTagCountSign);
  std::vector<std::size_t> rows(m);
  std::vector<signed char> signs(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i] = static_cast<std::size_t>(rng::below(rng::bits(row_key, i), s1));
    signs[i] = (rng::bits(sign_key, i) >> 63) ? -1 : 1;
  }
  return CountSketchOp(s1, std::move(rows), std::move(signs), seed);
}

GaussianSketchOp build_gaussian(std::size_t s, std::size_t m_in,
                                std::uint64_t seed) {
  return GaussianSketchOp(s, m_in, seed);
}

MultiSketchOp build_multi(std::size_t s1, std::size_t s2, std::size_t m,
                          std::size_t n, std::uint64_t seed) {
  if (!(n <= s2 && s2 <= s1 && s1 <= m))
    throw ParamError("build_multi: need n <= s2 <= s1 <= m, got n=" +
                     std::to_string(n) + " s2=" + std::to_string(s2) +
                     " s1=" + std::to_string(s1) + " m=" + std::to_string(m));
  return MultiSketchOp{
      build_countsketch(s1, m, rng::stream_key(seed, kTagMultiCount)),
      build_gaussian(s2, s1, rng::stream_key(seed, kTagMultiGauss))};
}

DenseMatrix apply_countsketch(const CountSketchOp& op, const DenseMatrix& x) {
  require_rows(x.rows(), op.in_rows(), "apply_countsketch");
  DenseMatrix out(op.out_rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto dst = out.row(op.row_of()[i]);
    const auto src = x.row(i);
    if (op.sign_of()[i] > 0) {
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    } else {
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= src[j];
    }
  }
  return out;
}

DenseMatrix apply_countsketch(const CountSketchOp& op, const SparseMatrix& x) {
  require_rows(x.rows(), op.in_rows(), "apply_countsketch");
  DenseMatrix out(op.out_rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto dst = out.row(op.row_of()[i]);
    const double sign = op.sign_of()[i];
    for (std::size_t k = x.row_ptr()[i]; k < x.row_ptr()[i + 1]; ++k)
      dst[x.col_idx()[k]] += sign * x.values()[k];
  }
  return out;
}

DenseMatrix apply_gaussian(const GaussianSketchOp& op, const DenseMatrix& x) {
  require_rows(x.rows(), op.in_rows(), "apply_gaussian");
  DenseMatrix out(op.out_rows(), x.cols());
  std::vector<double> g(op.in_rows());
  for (std::size_t i = 0; i < op.out_rows(); ++i) {
    op.fill_row(i, g);
    auto oi = out.row(i);
    for (std::size_t l = 0; l < g.size(); ++l) {
      const double gl = g[l];
      const auto xl = x.row(l);
      for (std::size_t j = 0; j < oi.size(); ++j) oi[j] += gl * xl[j];
    }
  }
  return out;
}

DenseMatrix apply_gaussian(const GaussianSketchOp& op, const SparseMatrix& x) {
  require_rows(x.rows(), op.in_rows(), "apply_gaussian");
  DenseMatrix out(op.out_rows(), x.cols());
  std::vector<double> g(op.in_rows());
  for (std::size_t i = 0; i < op.out_rows(); ++i) {
    op.fill_row(i, g);
    auto oi = out.row(i);
    for (std::size_t l = 0; l < g.size(); ++l) {
      const double gl = g[l];
      for (std::size_t k = x.row_ptr()[l]; k < x.row_ptr()[l + 1]; ++k)
        oi[x.col_idx()[k]] += gl * x.values()[k];
    }
  }
  return out;
}

DenseMatrix apply_multi(const MultiSketchOp& op, const DenseMatrix& x) {
  return apply_gaussian(op.gauss, apply_countsketch(op.count, x));
}

DenseMatrix apply_multi(const MultiSketchOp& op, const SparseMatrix& x) {
  return apply_gaussian(op.gauss, apply_countsketch(op.count, x));
}

DenseMatrix apply_sketch(const SketchOperator& op, const DenseMatrix& x) {
  return std::visit(
      [&](const auto& o) -> DenseMatrix {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, CountSketchOp>)
          return apply_countsketch(o, x);
        else if constexpr (std::is_same_v<T, GaussianSketchOp>)
          return apply_gaussian(o, x);
        else
          return apply_multi(o, x);
      },
      op);
}

DenseMatrix to_dense(const CountSketchOp& op) {
  DenseMatrix d(op.out_rows(), op.in_rows());
  for (std::size_t i = 0; i < op.in_rows(); ++i)
    d(op.row_of()[i], i) = op.sign_of()[i];
  return d;
}

DenseMatrix to_dense(const GaussianSketchOp& op) {
  DenseMatrix d(op.out_rows(), op.in_rows());
  for (std::size_t i = 0; i < op.out_rows(); ++i) op.fill_row(i, d.row(i));
  return d;
}

DenseMatrix to_dense(const MultiSketchOp& op) {
  return matmul(to_dense(op.gauss), to_dense(op.count));
}

double operator_fro_norm(const CountSketchOp& op) {
  double s = 0.0;
  for (signed char v : op.sign_of()) s += static_cast<double>(v) * v;
  return std::sqrt(s);
}

std::size_t countsketch_min_rows(std::size_t n, double eps, double p) {
  if (!(eps > 0.0 && eps < 1.0) || !(p > 0.0 && p < 1.0))
    throw ParamError("countsketch_min_rows: need 0 < eps < 1 and 0 < p < 1");
  const double nn = static_cast<double>(n);
  return ceil_snapped((nn * nn + nn) / (eps * eps * p));
}

std::size_t gaussian_rows_hint(std::size_t n, double y) {
  if (!(y >= 1.0)) throw ParamError("gaussian_rows_hint: need y >= 1");
  return ceil_snapped(y * static_cast<double>(n));
}

EmbeddingParams combine_embedding(double e1, double p1, double e2, double p2) {
  return {e1 + e2 - e1 * e2, e1 + e2 + e1 * e2, p1 + p2 - p1 * p2};
}

double verify_embedding(const SketchOperator& op, const DenseMatrix& x,
                        double eps_lower, double eps_upper, std::size_t trials,
                        std::uint64_t seed) {
  if (trials < 1) throw ParamError("verify_embedding: trials must be >= 1");
  // Omega (X c) == (Omega X) c, so the sketch is applied to X once.
  const DenseMatrix sx = apply_sketch(op, x);
  const std::uint64_t key = rng::stream_key(seed, kTagProbe);
  const double lo = std::sqrt(1.0 - eps_lower);
  const double hi = std::sqrt(1.0 + eps_upper);
  const std::size_t n = x.cols();
  std::vector<double> c(n);
  std::size_t hits = 0;
  auto norm_of_combination = [&](const DenseMatrix& a) {
    double ss = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const auto ai = a.row(i);
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += ai[j] * c[j];
      ss += v * v;
    }
    return std::sqrt(ss);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t j = 0; j < n; ++j) c[j] = rng::normal(key, t * n + j);
    const double nx = norm_of_combination(x);
    const double ny = norm_of_combination(sx);
    if (lo * nx <= ny && ny <= hi * nx) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double verify_embedding(const SketchOperator& op, const DenseMatrix& x,
                        double eps, std::size_t trials, std::uint64_t seed) {
  return verify_embedding(op, x, eps, eps, trials, seed);
}

double verify_embedding(const SketchOperator& op, const DenseMatrix& x,
                        const EmbeddingParams& params, std::size_t trials,
                        std::uint64_t seed) {
  return verify_embedding(op, x, params.eps_s, params.eps_b, trials, seed);
}

}  // namespace rcqr
