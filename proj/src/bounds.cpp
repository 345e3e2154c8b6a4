#include "rcqr/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rcqr/norms.hpp"

namespace rcqr {

namespace {

double dz(std::size_t v) { return static_cast<double>(v); }

double sparse_weight(const SparsityProfile& p, std::size_t n) {
  return dz(p.v) * dz(p.t1) + dz(n) * dz(p.t2);
}

double norm_o1_f(const SketchParams& p, std::size_t m) {
  return p.norm_o1_f.value_or(std::sqrt(dz(m)));
}

double norm_o2_2(const SketchParams& p) {
  return p.norm_o2_2.value_or(gaussian_norm_bound(p.s2, p.s1, p.C));
}

double norm_o_2(const SketchParams& p, std::size_t m) {
  return p.norm_o_2.value_or(gaussian_norm_bound(p.s, m, p.C));
}

// min(sqrt(1-es)/(10.5 f c), 1/(10.5 f (sqrt(1+eb) g + c)) sqrt((1-es)/(s u + (n+1) u)))
double sketched_limit(double es, double eb, double f, double c, double g,
                      std::size_t s, std::size_t n, double u) {
  const double first = std::sqrt(1.0 - es) / (10.5 * f * c);
  const double second = 1.0 / (10.5 * f * (std::sqrt(1.0 + eb) * g + c)) *
                        std::sqrt((1.0 - es) / (dz(s) * u + dz(n + 1) * u));
  return std::min(first, second);
}

// Shared shape of U1..U4: dd is d or h, c is k/k1 (T1) or t/t1 (otherwise),
// f is eta (T1) or j, g is sqrt(v t1 + n t2) (T1) or 1.
double sketched_resid(double es, double eb, double dd, double c, double f,
                      double g, std::size_t n, double norm, double u) {
  const double nn = dz(n);
  const double root = std::sqrt(1.0 + dd);
  const double lead = (1.32 + 1.34 * root) / std::sqrt(1.0 - es);
  const double first = lead * (std::sqrt(1.0 + eb) * g + c) * f * nn *
                       std::sqrt(nn) * u * norm;
  const double second = 1.34 * root / std::sqrt(1.0 - es) *
                        (std::sqrt(1.0 + eb) + c * f) * nn * nn * u * norm;
  return first + second;
}

void require_mode(const SketchParams& p, SketchParams::Mode mode,
                  const char* what) {
  if (p.mode != mode) throw ParamError(std::string(what) +
                                       ": sketch parameters do not match the "
                                       "algorithm");
}

}  // namespace

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::CholQR2: return "cholqr2";
    case Algorithm::SR: return "sr";
    case Algorithm::MR: return "mr";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (s == "cholqr2") return Algorithm::CholQR2;
  if (s == "sr") return Algorithm::SR;
  if (s == "mr") return Algorithm::MR;
  throw ParamError("unknown algorithm '" + name + "'");
}

SketchParams SketchParams::none() { return {}; }

SketchParams SketchParams::single(double e, double p, std::size_t s) {
  SketchParams out;
  out.mode = Mode::Single;
  out.e = e;
  out.p = p;
  out.s = s;
  return out;
}

SketchParams SketchParams::multi(double e1, double p1, double e2, double p2,
                                 std::size_t s1, std::size_t s2) {
  SketchParams out;
  out.mode = Mode::Multi;
  out.e1 = e1;
  out.p1 = p1;
  out.e2 = e2;
  out.p2 = p2;
  out.s1 = s1;
  out.s2 = s2;
  return out;
}

EmbeddingParams SketchParams::embedding() const {
  switch (mode) {
    case Mode::Multi: return combine_embedding(e1, p1, e2, p2);
    case Mode::Single: return {e, e, p};
    case Mode::None: break;
  }
  return {};
}

void SketchParams::validate(std::size_t m, std::size_t n) const {
  if (mode == Mode::Multi && !(n <= s2 && s2 <= s1 && s1 <= m))
    throw ParamError("sketch sizes must satisfy n <= s2 <= s1 <= m");
  if (mode == Mode::Single && !(n <= s && s <= m))
    throw ParamError("sketch size must satisfy n <= s <= m");
}

double gamma(double n, double u) {
  const double nu = n * u;
  if (nu >= 1.0) throw ParamError("gamma: n u must be below 1");
  return nu / (1.0 - nu);
}

double size_term(std::size_t m, std::size_t n, double u) {
  return dz(m) * dz(n) * u + dz(n) * dz(n + 1) * u;
}

SizeCheck check_size(std::size_t m, std::size_t n, double u) {
  return {dz(m) * dz(n) * u <= 1.0 / 64.0, dz(n) * dz(n + 1) * u <= 1.0 / 64.0};
}

bool check_assumption_multi(double eps_s, double eps_b, std::size_t m,
                            std::size_t n, double u) {
  if (!(eps_s < 1.0) || !(eps_b > -1.0)) return false;
  const double lhs = std::sqrt(1.0 - eps_s) / std::sqrt(1.0 + eps_b);
  const double rhs = 32.0 / 3.0 * std::sqrt(size_term(m, n, u)) + 2.0 / 87.0;
  return lhs >= rhs;
}

bool check_assumption_single(double eps, std::size_t m, std::size_t n,
                             double u) {
  return check_assumption_multi(eps, eps, m, n, u);
}

double const_a(double eps_s, double eps_b) {
  const double den = 0.87 * std::sqrt((1.0 - eps_s) / (1.0 + eps_b)) - 0.02;
  if (!(den > 0.0))
    throw AssumptionViolated("constant a: non-positive denominator");
  return 1.16 / den;
}

double const_b(double eps) { return const_a(eps, eps); }

double const_d(double a, std::size_t m, std::size_t n, double u) {
  return 5.0 * a * a * size_term(m, n, u);
}

double const_h(double b, std::size_t m, std::size_t n, double u) {
  return const_d(b, m, n, u);
}

double gaussian_norm_bound(std::size_t rows_out, std::size_t rows_in,
                           double C) {
  if (rows_out == 0) throw ParamError("gaussian_norm_bound: rows_out is 0");
  return 1.0 + C * (std::sqrt(dz(rows_in) / dz(rows_out)) +
                    3.0 / std::sqrt(dz(rows_out)));
}

double const_t(std::size_t s1, std::size_t s2, std::size_t m, double eps1,
               double o1f, double o22, double u) {
  const double mu = 1.1 * dz(m) * u * o1f;
  return 1.1 * dz(s1) * u * std::sqrt(dz(s2)) * o22 *
             (std::sqrt(1.0 + eps1) + mu) +
         mu * o22;
}

double const_k(std::size_t s1, std::size_t s2, std::size_t m, std::size_t n,
               double eps1, std::size_t v, std::size_t t1, std::size_t t2,
               double o1f, double o22, double u) {
  const double g = std::sqrt(dz(v) * dz(t1) + dz(n) * dz(t2));
  return const_t(s1, s2, m, eps1, o1f, o22, u) * g;
}

double const_t_single(std::size_t m, std::size_t s, double o2, double u) {
  return 1.1 * dz(m) * u * std::sqrt(dz(s)) * o2;
}

double const_k1(std::size_t m, std::size_t s, std::size_t n, std::size_t v,
                std::size_t t1, std::size_t t2, double o2, double u) {
  const double g = std::sqrt(dz(v) * dz(t1) + dz(n) * dz(t2));
  return const_t_single(m, s, o2, u) * g;
}

MatrixFeatures measure_features(const DenseMatrix& x, double dense_fraction) {
  MatrixFeatures f;
  f.profile = profile_sparsity(x, dense_fraction);
  f.norm2 = two_norm(x);
  if (f.norm2 == 0.0) throw Undefined("measure_features: zero matrix");
  f.eta = max_abs(x) / f.norm2;
  f.j = g_norm(x) / f.norm2;
  return f;
}

MatrixFeatures measure_features(const SparseMatrix& x, double dense_fraction) {
  MatrixFeatures f = measure_features(to_dense(x), dense_fraction);
  f.profile = profile_sparsity(x, dense_fraction);
  return f;
}

KappaLimits kappa_limits(const MatrixFeatures& f, const SketchParams& params,
                         std::size_t m, std::size_t n, double u) {
  KappaLimits out;
  const double g = std::sqrt(sparse_weight(f.profile, n));
  const double base = dz(m) * u + dz(n + 1) * u;
  out.K2 = 1.0 / (10.5 * f.j * std::sqrt(base));
  out.K1 = 1.0 / (10.5 * f.eta * std::sqrt(base * g * g));
  const EmbeddingParams e = params.embedding();
  if (params.mode == SketchParams::Mode::Multi) {
    const double t = const_t(params.s1, params.s2, m, params.e1,
                             norm_o1_f(params, m), norm_o2_2(params), u);
    const double k = t * g;
    out.r = sketched_limit(e.eps_s, e.eps_b, f.eta, k, g, params.s2, n, u);
    out.w = sketched_limit(e.eps_s, e.eps_b, f.j, t, 1.0, params.s2, n, u);
  } else if (params.mode == SketchParams::Mode::Single) {
    const double t1 = const_t_single(m, params.s, norm_o_2(params, m), u);
    const double k1 = t1 * g;
    out.r1 = sketched_limit(e.eps_s, e.eps_b, f.eta, k1, g, params.s, n, u);
    out.w1 = sketched_limit(e.eps_s, e.eps_b, f.j, t1, 1.0, params.s, n, u);
  }
  return out;
}

double kappa_limit(Algorithm alg, const MatrixFeatures& f,
                   const SketchParams& params, std::size_t m, std::size_t n,
                   double u) {
  const bool t1 = f.profile.matrix_class == MatrixClass::T1;
  const EmbeddingParams e = params.embedding();
  switch (alg) {
    case Algorithm::MR:
      require_mode(params, SketchParams::Mode::Multi, "kappa_limit");
      if (!check_assumption_multi(e.eps_s, e.eps_b, m, n, u))
        throw AssumptionViolated("kappa_limit: embedding assumption fails");
      break;
    case Algorithm::SR:
      require_mode(params, SketchParams::Mode::Single, "kappa_limit");
      if (!check_assumption_single(params.e, m, n, u))
        throw AssumptionViolated("kappa_limit: embedding assumption fails");
      break;
    case Algorithm::CholQR2: break;
  }
  const KappaLimits l = kappa_limits(f, params, m, n, u);
  switch (alg) {
    case Algorithm::MR: return t1 ? std::min(l.r, l.w) : l.w;
    case Algorithm::SR: return t1 ? std::min(l.r1, l.w1) : l.w1;
    case Algorithm::CholQR2: return t1 ? std::min(l.K1, l.K2) : l.K2;
  }
  return 0.0;
}

double predicted_orth(Algorithm alg, const SketchParams& params,
                      std::size_t m, std::size_t n, double u) {
  const EmbeddingParams e = params.embedding();
  switch (alg) {
    case Algorithm::MR: {
      const double a = const_a(e.eps_s, e.eps_b);
      return 6.0 * a * a * size_term(m, n, u);
    }
    case Algorithm::SR: {
      const double b = const_b(params.e);
      return 5.0 * b * b * size_term(m, n, u);
    }
    case Algorithm::CholQR2: return 6.0 * size_term(m, n, u);
  }
  return 0.0;
}

double predicted_orth_alt(Algorithm alg, const SketchParams& params,
                          std::size_t m, std::size_t n, double u) {
  const EmbeddingParams e = params.embedding();
  switch (alg) {
    case Algorithm::MR: {
      const double a = const_a(e.eps_s, e.eps_b);
      return 5.0 * a * a * size_term(m, n, u);
    }
    case Algorithm::SR: return predicted_orth(alg, params, m, n, u);
    case Algorithm::CholQR2: return 5.9 * size_term(m, n, u);
  }
  return 0.0;
}

double predicted_resid(Algorithm alg, const MatrixFeatures& f,
                       const SketchParams& params, std::size_t m,
                       std::size_t n, double norm_x_2, double u) {
  const bool t1 = f.profile.matrix_class == MatrixClass::T1;
  const double g = std::sqrt(sparse_weight(f.profile, n));
  const double nn = dz(n);
  const EmbeddingParams e = params.embedding();
  switch (alg) {
    case Algorithm::MR: {
      require_mode(params, SketchParams::Mode::Multi, "predicted_resid");
      const double a = const_a(e.eps_s, e.eps_b);
      const double d = const_d(a, m, n, u);
      const double t = const_t(params.s1, params.s2, m, params.e1,
                               norm_o1_f(params, m), norm_o2_2(params), u);
      if (t1)
        return sketched_resid(e.eps_s, e.eps_b, d, t * g, f.eta, g, n,
                              norm_x_2, u);
      return sketched_resid(e.eps_s, e.eps_b, d, t, f.j, 1.0, n, norm_x_2, u);
    }
    case Algorithm::SR: {
      require_mode(params, SketchParams::Mode::Single, "predicted_resid");
      const double b = const_b(params.e);
      const double h = const_h(b, m, n, u);
      const double ts = const_t_single(m, params.s, norm_o_2(params, m), u);
      if (t1)
        return sketched_resid(params.e, params.e, h, ts * g, f.eta, g, n,
                              norm_x_2, u);
      return sketched_resid(params.e, params.e, h, ts, f.j, 1.0, n, norm_x_2,
                            u);
    }
    case Algorithm::CholQR2: {
      const double lead = t1 ? 2.52 * f.eta * g : 2.52 * f.j;
      return (lead + 1.34 * std::sqrt(nn)) * nn * std::sqrt(nn) * u *
             norm_x_2;
    }
  }
  return 0.0;
}

double baseline_resid(std::size_t n, double norm_x_2, double u) {
  const double nn = dz(n);
  return 5.0 * nn * nn * std::sqrt(nn) * u * norm_x_2;
}

std::uint64_t complexity_estimate(Algorithm alg, std::uint64_t m,
                                  std::uint64_t n, std::uint64_t s1,
                                  std::uint64_t s2) {
  switch (alg) {
    case Algorithm::MR: return m * n + s2 * s1 * n + s2 * n * n;
    case Algorithm::SR: return s2 * m * n + s2 * n * n;
    case Algorithm::CholQR2: return m * n * n;
  }
  return 0;
}

BoundReport bound_report(Algorithm alg, const DenseMatrix& x,
                         const SketchParams& params, double dense_fraction,
                         double u) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  if (alg == Algorithm::MR)
    require_mode(params, SketchParams::Mode::Multi, "bound_report");
  if (alg == Algorithm::SR)
    require_mode(params, SketchParams::Mode::Single, "bound_report");
  params.validate(m, n);

  BoundReport rep;
  rep.algorithm = alg;
  rep.m = m;
  rep.n = n;
  rep.embedding = params.embedding();
  const MatrixFeatures f = measure_features(x, dense_fraction);
  rep.matrix_class = f.profile.matrix_class;
  rep.size_ok = check_size(m, n, u).ok();
  rep.assumption_ok =
      alg == Algorithm::CholQR2 ||
      check_assumption_multi(rep.embedding.eps_s, rep.embedding.eps_b, m, n,
                             u);
  rep.kappa_measured = cond2(x);
  rep.limits = kappa_limits(f, params, m, n, u);

  const double g = std::sqrt(sparse_weight(f.profile, n));
  auto& c = rep.constants;
  c.gamma_n = gamma(dz(n), u);
  c.eta = f.eta;
  c.j = f.j;
  if (alg == Algorithm::MR) {
    c.t_or_t1 = const_t(params.s1, params.s2, m, params.e1,
                        norm_o1_f(params, m), norm_o2_2(params), u);
  } else if (alg == Algorithm::SR) {
    c.t_or_t1 = const_t_single(m, params.s, norm_o_2(params, m), u);
  }
  c.k_or_k1 = c.t_or_t1 * g;

  rep.baseline_resid = baseline_resid(n, f.norm2, u);
  rep.complexity = complexity_estimate(
      alg, m, n, params.mode == SketchParams::Mode::Multi ? params.s1 : 0,
      params.mode == SketchParams::Mode::Multi ? params.s2 : params.s);
  if (rep.assumption_ok) {
    if (alg != Algorithm::CholQR2) {
      c.a_or_b = const_a(rep.embedding.eps_s, rep.embedding.eps_b);
      c.d_or_h = const_d(c.a_or_b, m, n, u);
    }
    rep.kappa_limit = kappa_limit(alg, f, params, m, n, u);
    rep.predicted_orth = predicted_orth(alg, params, m, n, u);
    rep.predicted_orth_alt = predicted_orth_alt(alg, params, m, n, u);
    rep.predicted_resid = predicted_resid(alg, f, params, m, n, f.norm2, u);
  }
  rep.admissible = rep.size_ok && rep.assumption_ok &&
                   rep.kappa_measured <= rep.kappa_limit;
  return rep;
}

}  // namespace rcqr
