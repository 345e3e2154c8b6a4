#include "rcqr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "rcqr/matrix_market.hpp"
#include "rcqr/qr.hpp"
#include "rcqr/rng.hpp"
#include "rcqr/sketch.hpp"

namespace rcqr {

namespace {

std::size_t rows_of(const InputMatrix& x) {
  return std::visit([](const auto& m) { return m.rows(); }, x);
}

std::size_t cols_of(const InputMatrix& x) {
  return std::visit([](const auto& m) { return m.cols(); }, x);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

ExperimentRecord run_trial(const InputMatrix& x, const DenseMatrix& xd,
                           const ExperimentConfig& config, std::size_t i) {
  ExperimentRecord rec;
  rec.trial = i;
  rec.seed = rng::derive_seed(config.master_seed, i);
  const auto start = std::chrono::steady_clock::now();
  try {
    QRResult res = factorize(x, config, rec.seed, false);
    rec.wall_time_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    fill_diagnostics(res, xd);
    rec.orthogonality = res.diagnostics.orthogonality;
    rec.residual = res.diagnostics.residual;
    rec.outcome = res.diagnostics.orthogonality <= config.success_orth_threshold
                      ? Outcome::Success
                      : Outcome::QualityFail;
  } catch (const CholeskyBreakdown& e) {
    rec.wall_time_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    rec.outcome = Outcome::Breakdown;
    rec.breakdown_stage = e.stage();
  }
  return rec;
}

}  // namespace

SketchParams ExperimentConfig::sketch_params() const {
  switch (algorithm) {
    case Algorithm::MR: return SketchParams::multi(e1, p1, e2, p2, s1, s2);
    case Algorithm::SR: return SketchParams::single(e, p, s);
    case Algorithm::CholQR2: break;
  }
  return SketchParams::none();
}

InputMatrix load_input(const ExperimentConfig& config) {
  if (const auto* path = std::get_if<std::string>(&config.source))
    return read_matrix_market(*path);
  return generate(std::get<GeneratorSpec>(config.source));
}

QRResult factorize(const InputMatrix& x, const ExperimentConfig& config,
                   std::uint64_t seed, bool diagnostics) {
  const std::size_t m = rows_of(x);
  const std::size_t n = cols_of(x);
  config.sketch_params().validate(m, n);
  switch (config.algorithm) {
    case Algorithm::CholQR2: {
      if (const auto* d = std::get_if<DenseMatrix>(&x))
        return cholesky_qr2(*d, diagnostics);
      return cholesky_qr2(to_dense(std::get<SparseMatrix>(x)), diagnostics);
    }
    case Algorithm::SR: {
      const GaussianSketchOp op = build_gaussian(config.s, m, seed);
      return std::visit(
          [&](const auto& mat) { return sr_cholesky_qr2(mat, op, diagnostics); },
          x);
    }
    case Algorithm::MR: {
      const MultiSketchOp op = build_multi(config.s1, config.s2, m, n, seed);
      return std::visit(
          [&](const auto& mat) { return mr_cholesky_qr2(mat, op, diagnostics); },
          x);
    }
  }
  throw ParamError("unknown algorithm");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, load_input(config));
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const InputMatrix& x) {
  if (config.trials < 1) throw ParamError("trials must be at least 1");
  config.sketch_params().validate(rows_of(x), cols_of(x));
  const DenseMatrix xd = std::holds_alternative<DenseMatrix>(x)
                             ? std::get<DenseMatrix>(x)
                             : to_dense(std::get<SparseMatrix>(x));
  ExperimentResult out;
  out.records.resize(config.trials);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(config.threads, config.trials));
  if (workers == 1) {
    for (std::size_t i = 0; i < config.trials; ++i)
      out.records[i] = run_trial(x, xd, config, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
          try {
            out.records[i] = run_trial(x, xd, config, i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  out.summary = summarize(out.records);
  return out;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
  ExperimentSummary s;
  s.trials = records.size();
  double so = 0.0, sr = 0.0, st = 0.0;
  for (const auto& r : records) {
    switch (r.outcome) {
      case Outcome::Success:
        ++s.successes;
        so += *r.orthogonality;
        sr += *r.residual;
        st += r.wall_time_s;
        break;
      case Outcome::Breakdown: ++s.breakdowns; break;
      case Outcome::QualityFail: ++s.quality_fails; break;
    }
  }
  if (s.successes == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.mean_orthogonality = s.mean_residual = s.mean_time_s = nan;
  } else {
    const double k = static_cast<double>(s.successes);
    s.mean_orthogonality = so / k;
    s.mean_residual = sr / k;
    s.mean_time_s = st / k;
  }
  return s;
}

std::string outcome_label(const ExperimentRecord& r) {
  switch (r.outcome) {
    case Outcome::Success: return "SUCCESS";
    case Outcome::QualityFail: return "QUALITY_FAIL";
    case Outcome::Breakdown: return "BREAKDOWN(" + r.breakdown_stage + ")";
  }
  return "?";
}

void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << "trial,seed,outcome,orthogonality,residual,wall_time_s\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << outcome_label(r) << ','
        << (r.orthogonality ? sci(*r.orthogonality) : "") << ','
        << (r.residual ? sci(*r.residual) : "") << ',' << sci(r.wall_time_s)
        << '\n';
  }
}

void emit_csv(const std::vector<ExperimentRecord>& records,
              const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(records, f);
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string bound_report_json(const BoundReport& r) {
  using nlohmann::json;
  json j;
  j["algorithm"] = to_string(r.algorithm);
  j["matrix_class"] = to_string(r.matrix_class);
  j["m"] = r.m;
  j["n"] = r.n;
  j["embedding"] = {{"eps_s", r.embedding.eps_s},
                    {"eps_b", r.embedding.eps_b},
                    {"p_f", r.embedding.p_f}};
  j["size_ok"] = r.size_ok;
  j["assumption_ok"] = r.assumption_ok;
  j["kappa_limit"] = r.kappa_limit;
  j["kappa_measured"] = r.kappa_measured;
  j["admissible"] = r.admissible;
  j["constants"] = {{"gamma_n", r.constants.gamma_n},
                    {"a_or_b", r.constants.a_or_b},
                    {"d_or_h", r.constants.d_or_h},
                    {"k_or_k1", r.constants.k_or_k1},
                    {"t_or_t1", r.constants.t_or_t1},
                    {"eta", r.constants.eta},
                    {"j", r.constants.j}};
  j["kappa_limits"] = {{"r", r.limits.r},   {"w", r.limits.w},
                       {"r1", r.limits.r1}, {"w1", r.limits.w1},
                       {"K1", r.limits.K1}, {"K2", r.limits.K2}};
  j["predicted_orth"] = r.predicted_orth;
  j["predicted_orth_alt"] = r.predicted_orth_alt;
  j["predicted_resid"] = r.predicted_resid;
  j["baseline_resid"] = r.baseline_resid;
  j["complexity"] = r.complexity;
  return j.dump(2);
}

void emit_json(const BoundReport& report, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << bound_report_json(report) << '\n';
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace rcqr
