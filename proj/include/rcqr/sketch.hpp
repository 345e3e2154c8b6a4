#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "rcqr/dense.hpp"
#include "rcqr/sparse.hpp"

namespace rcqr {

/// CountSketch: input coordinate i lands in output row row_of[i] with sign
/// sign_of[i]. Exactly one +-1 per input coordinate, so ||Omega||_F = sqrt(m).
class CountSketchOp {
 public:
  /// Explicit construction; validates lengths, targets and signs.
  CountSketchOp(std::size_t out_rows, std::vector<std::size_t> row_of,
                std::vector<signed char> sign_of, std::uint64_t seed = 0);

  /// Row-preserving identity of order m (testing aid).
  static CountSketchOp identity(std::size_t m);

  std::size_t out_rows() const noexcept { return out_rows_; }
  std::size_t in_rows() const noexcept { return row_of_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::size_t>& row_of() const noexcept { return row_of_; }
  const std::vector<signed char>& sign_of() const noexcept { return sign_of_; }

  bool operator==(const CountSketchOp&) const = default;

 private:
  std::size_t out_rows_;
  std::vector<std::size_t> row_of_;
  std::vector<signed char> sign_of_;
  std::uint64_t seed_;
};

/// Dense Gaussian embedding with entries N(0,1)/sqrt(s).
///
/// Entries are never stored: entry (i, l) is regenerated from (seed, i*m+l)
/// through the counter-based generator, so a 500 x 20000 operator costs no
/// memory and rows can be produced independently.
class GaussianSketchOp {
 public:
  GaussianSketchOp(std::size_t out_rows, std::size_t in_rows,
                   std::uint64_t seed);

  std::size_t out_rows() const noexcept { return out_rows_; }
  std::size_t in_rows() const noexcept { return in_rows_; }
  std::uint64_t seed() const noexcept { return seed_; }
  double scale() const noexcept { return scale_; }

  double entry(std::size_t i, std::size_t l) const noexcept;
  /// Writes row i (in_rows values) into `out`.
  void fill_row(std::size_t i, std::span<double> out) const;

  bool operator==(const GaussianSketchOp&) const = default;

 private:
  std::size_t out_rows_;
  std::size_t in_rows_;
  std::uint64_t seed_;
  std::uint64_t key_;
  double scale_;
};

/// CountSketch followed by a Gaussian sketch: Omega2 * Omega1.
struct MultiSketchOp {
  CountSketchOp count;
  GaussianSketchOp gauss;

  std::size_t out_rows() const noexcept { return gauss.out_rows(); }
  std::size_t in_rows() const noexcept { return count.in_rows(); }
};

using SketchOperator =
    std::variant<CountSketchOp, GaussianSketchOp, MultiSketchOp>;

/// Distortion parameters of a (possibly composed) embedding: lower distortion
/// eps_s, upper distortion eps_b, failure probability p_f. For a single
/// sketch eps_s == eps_b == eps and p_f == p.
struct EmbeddingParams {
  double eps_s = 0.0;
  double eps_b = 0.0;
  double p_f = 0.0;
};

/// Requires 1 <= s1 <= m.
CountSketchOp build_countsketch(std::size_t s1, std::size_t m,
                                std::uint64_t seed);
/// Requires 1 <= s <= m_in.
GaussianSketchOp build_gaussian(std::size_t s, std::size_t m_in,
                                std::uint64_t seed);
/// Requires n <= s2 <= s1 <= m. The two factors draw from independent
/// sub-streams of `seed`.
MultiSketchOp build_multi(std::size_t s1, std::size_t s2, std::size_t m,
                          std::size_t n, std::uint64_t seed);

DenseMatrix apply_countsketch(const CountSketchOp& op, const DenseMatrix& x);
DenseMatrix apply_countsketch(const CountSketchOp& op, const SparseMatrix& x);
DenseMatrix apply_gaussian(const GaussianSketchOp& op, const DenseMatrix& x);
DenseMatrix apply_gaussian(const GaussianSketchOp& op, const SparseMatrix& x);
DenseMatrix apply_multi(const MultiSketchOp& op, const DenseMatrix& x);
DenseMatrix apply_multi(const MultiSketchOp& op, const SparseMatrix& x);
DenseMatrix apply_sketch(const SketchOperator& op, const DenseMatrix& x);

DenseMatrix to_dense(const CountSketchOp& op);
DenseMatrix to_dense(const GaussianSketchOp& op);
DenseMatrix to_dense(const MultiSketchOp& op);

/// Frobenius norm of the operator, summed over its stored nonzeros.
double operator_fro_norm(const CountSketchOp& op);

/// Smallest s with s >= (n^2+n) / (eps^2 p). Requires 0 < eps, p < 1.
std::size_t countsketch_min_rows(std::size_t n, double eps, double p);

/// ceil(y * n) for y >= 1.
std::size_t gaussian_rows_hint(std::size_t n, double y);

/// Composition rule for two independent embeddings.
EmbeddingParams combine_embedding(double e1, double p1, double e2, double p2);

/// Fraction of `trials` random vectors x = X c (c standard normal) for which
/// sqrt(1-eps_lower) ||x|| <= ||Omega x|| <= sqrt(1+eps_upper) ||x||.
double verify_embedding(const SketchOperator& op, const DenseMatrix& x,
                        double eps_lower, double eps_upper, std::size_t trials,
                        std::uint64_t seed);
double verify_embedding(const SketchOperator& op, const DenseMatrix& x,
                        double eps, std::size_t trials, std::uint64_t seed);
double verify_embedding(const SketchOperator& op, const DenseMatrix& x,
                        const EmbeddingParams& params, std::size_t trials,
                        std::uint64_t seed);

}  // namespace rcqr
