#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "rcqr/dense.hpp"
#include "rcqr/sketch.hpp"
#include "rcqr/sparse.hpp"

namespace rcqr {

/// Unit roundoff of IEEE binary64.
inline constexpr double kUnitRoundoff = 0x1.0p-53;

enum class Algorithm { CholQR2, SR, MR };

const char* to_string(Algorithm a) noexcept;
/// Accepts "cholqr2", "sr", "mr" (case-insensitive). Throws ParamError.
Algorithm parse_algorithm(const std::string& name);

/// Sketch configuration feeding the bounds. Multi: CountSketch (e1, p1, s1)
/// followed by Gaussian (e2, p2, s2). Single: Gaussian (e, p, s).
struct SketchParams {
  enum class Mode { None, Single, Multi };

  Mode mode = Mode::None;
  double e1 = 0.0, p1 = 0.0, e2 = 0.0, p2 = 0.0;
  std::size_t s1 = 0, s2 = 0;
  double e = 0.0, p = 0.0;
  std::size_t s = 0;
  /// Constant of the Gaussian operator-norm estimate.
  double C = 2.0;
  /// Measured operator norms; the estimates are used when unset.
  std::optional<double> norm_o1_f;
  std::optional<double> norm_o2_2;
  std::optional<double> norm_o_2;

  static SketchParams none();
  static SketchParams single(double e, double p, std::size_t s);
  static SketchParams multi(double e1, double p1, double e2, double p2,
                            std::size_t s1, std::size_t s2);

  /// eps_s, eps_b, p_f. Zero distortion when Mode::None.
  EmbeddingParams embedding() const;
  /// Throws ParamError unless n <= s2 <= s1 <= m (multi) or n <= s <= m.
  void validate(std::size_t m, std::size_t n) const;
};

/// gamma_n = n u / (1 - n u). Throws ParamError when n u >= 1.
double gamma(double n, double u = kUnitRoundoff);

/// m n u + n (n+1) u.
double size_term(std::size_t m, std::size_t n, double u = kUnitRoundoff);

struct SizeCheck {
  bool mnu_ok = false;  ///< m n u <= 1/64
  bool nnu_ok = false;  ///< n (n+1) u <= 1/64
  bool ok() const noexcept { return mnu_ok && nnu_ok; }
};
SizeCheck check_size(std::size_t m, std::size_t n, double u = kUnitRoundoff);

/// sqrt(1-eps_s)/sqrt(1+eps_b) >= (32/3) sqrt(size_term) + 2/87.
bool check_assumption_multi(double eps_s, double eps_b, std::size_t m,
                            std::size_t n, double u = kUnitRoundoff);
bool check_assumption_single(double eps, std::size_t m, std::size_t n,
                             double u = kUnitRoundoff);

/// 1.16 / (0.87 sqrt((1-eps_s)/(1+eps_b)) - 0.02). Throws
/// AssumptionViolated when the denominator is not positive.
double const_a(double eps_s, double eps_b);
double const_b(double eps);
/// 5 a^2 size_term.
double const_d(double a, std::size_t m, std::size_t n,
               double u = kUnitRoundoff);
double const_h(double b, std::size_t m, std::size_t n,
               double u = kUnitRoundoff);

/// Estimate 1 + C (sqrt(rows_in/rows_out) + 3/sqrt(rows_out)) of the
/// 2-norm of a scaled Gaussian sketch.
double gaussian_norm_bound(std::size_t rows_out, std::size_t rows_in,
                           double C = 2.0);

/// Multi-sketch t constant.
double const_t(std::size_t s1, std::size_t s2, std::size_t m, double eps1,
               double norm_o1_f, double norm_o2_2, double u = kUnitRoundoff);
/// k = t sqrt(v t1 + n t2).
double const_k(std::size_t s1, std::size_t s2, std::size_t m, std::size_t n,
               double eps1, std::size_t v, std::size_t t1, std::size_t t2,
               double norm_o1_f, double norm_o2_2, double u = kUnitRoundoff);

/// Single-sketch counterpart of t: 1.1 m u sqrt(s) ||Omega||_2.
double const_t_single(std::size_t m, std::size_t s, double norm_o_2,
                      double u = kUnitRoundoff);
/// k1 = const_t_single * sqrt(v t1 + n t2).
double const_k1(std::size_t m, std::size_t s, std::size_t n, std::size_t v,
                std::size_t t1, std::size_t t2, double norm_o_2,
                double u = kUnitRoundoff);

/// Matrix quantities the limits and residual bounds depend on.
struct MatrixFeatures {
  SparsityProfile profile;
  double eta = 0.0;
  double j = 0.0;
  double norm2 = 0.0;
};

MatrixFeatures measure_features(const DenseMatrix& x,
                                double dense_fraction = 0.25);
MatrixFeatures measure_features(const SparseMatrix& x,
                                double dense_fraction = 0.25);

struct KappaLimits {
  double r = 0.0, w = 0.0;      ///< MR
  double r1 = 0.0, w1 = 0.0;    ///< SR
  double K1 = 0.0, K2 = 0.0;    ///< CholeskyQR2
};

/// All six limits that apply to the parameters (others stay 0).
KappaLimits kappa_limits(const MatrixFeatures& f, const SketchParams& params,
                         std::size_t m, std::size_t n,
                         double u = kUnitRoundoff);

/// The limit for this algorithm and matrix class.
double kappa_limit(Algorithm alg, const MatrixFeatures& f,
                   const SketchParams& params, std::size_t m, std::size_t n,
                   double u = kUnitRoundoff);

/// Orthogonality bound. MR: 6a^2 (alternative 5a^2); SR: 5b^2;
/// CholeskyQR2: 6 (alternative 5.9); each times size_term.
double predicted_orth(Algorithm alg, const SketchParams& params,
                      std::size_t m, std::size_t n, double u = kUnitRoundoff);
double predicted_orth_alt(Algorithm alg, const SketchParams& params,
                          std::size_t m, std::size_t n,
                          double u = kUnitRoundoff);

/// Residual bound U1..U6 selected by algorithm and class.
double predicted_resid(Algorithm alg, const MatrixFeatures& f,
                       const SketchParams& params, std::size_t m,
                       std::size_t n, double norm_x_2,
                       double u = kUnitRoundoff);

/// 5 n^2 sqrt(n) u ||X||_2.
double baseline_resid(std::size_t n, double norm_x_2,
                      double u = kUnitRoundoff);

/// Leading-term flop counts: MR m n + s2 s1 n + s2 n^2; SR s m n + s n^2
/// with s = s2; CholeskyQR2 m n^2.
std::uint64_t complexity_estimate(Algorithm alg, std::uint64_t m,
                                  std::uint64_t n, std::uint64_t s1,
                                  std::uint64_t s2);

struct BoundConstants {
  double gamma_n = 0.0;
  double a_or_b = 0.0;
  double d_or_h = 0.0;
  double k_or_k1 = 0.0;
  double t_or_t1 = 0.0;
  double eta = 0.0;
  double j = 0.0;
};

struct BoundReport {
  Algorithm algorithm = Algorithm::CholQR2;
  MatrixClass matrix_class = MatrixClass::T2;
  std::size_t m = 0, n = 0;
  EmbeddingParams embedding;
  bool size_ok = false;
  bool assumption_ok = false;
  double kappa_limit = 0.0;
  double kappa_measured = 0.0;
  bool admissible = false;
  BoundConstants constants;
  KappaLimits limits;
  double predicted_orth = 0.0;
  double predicted_orth_alt = 0.0;
  double predicted_resid = 0.0;
  double baseline_resid = 0.0;
  std::uint64_t complexity = 0;
};

/// Evaluates every check and bound for X. Inadmissible configurations
/// still produce a report; kappa_limit is 0 when the assumption fails.
BoundReport bound_report(Algorithm alg, const DenseMatrix& x,
                         const SketchParams& params,
                         double dense_fraction = 0.25,
                         double u = kUnitRoundoff);

}  // namespace rcqr
