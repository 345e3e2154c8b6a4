#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "rcqr/bounds.hpp"
#include "rcqr/dense.hpp"
#include "rcqr/qr.hpp"
#include "rcqr/sparse.hpp"
#include "rcqr/testmatrices.hpp"

namespace rcqr {

struct ExperimentConfig {
  /// Either a generator or a Matrix Market file path.
  std::variant<GeneratorSpec, std::string> source = GeneratorSpec{};
  Algorithm algorithm = Algorithm::MR;
  std::size_t s1 = 2800, s2 = 500;  ///< MR
  std::size_t s = 500;              ///< SR
  double e1 = 0.5, p1 = 0.6, e2 = 0.5, p2 = 0.4;
  double e = 0.5, p = 0.6;
  std::size_t trials = 30;
  std::uint64_t master_seed = 0;
  double success_orth_threshold = 1e-12;
  std::size_t threads = 1;

  /// Sketch parameters matching the algorithm.
  SketchParams sketch_params() const;
};

enum class Outcome { Success, Breakdown, QualityFail };

struct ExperimentRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Success;
  std::string breakdown_stage;
  std::optional<double> orthogonality;
  std::optional<double> residual;
  double wall_time_s = 0.0;
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t breakdowns = 0;
  std::size_t quality_fails = 0;
  /// Means over successful trials; NaN when there are none.
  double mean_orthogonality = 0.0;
  double mean_residual = 0.0;
  double mean_time_s = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  ExperimentSummary summary;
};

/// The matrix an experiment runs on: sparse families stay sparse.
using InputMatrix = std::variant<SparseMatrix, DenseMatrix>;

InputMatrix load_input(const ExperimentConfig& config);

/// One factorization of X with the sketch seeded by `seed`. Throws
/// CholeskyBreakdown.
QRResult factorize(const InputMatrix& x, const ExperimentConfig& config,
                   std::uint64_t seed, bool diagnostics = true);

/// Trial i seeds its sketch with derive_seed(master_seed, i).
ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const InputMatrix& x);

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);

/// "SUCCESS", "QUALITY_FAIL" or "BREAKDOWN(stage)".
std::string outcome_label(const ExperimentRecord& r);

/// Header trial,seed,outcome,orthogonality,residual,wall_time_s then one row
/// per record, reals as %.6e. Breakdown rows leave the metrics empty.
void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
/// Throws IoError naming the path.
void emit_csv(const std::vector<ExperimentRecord>& records,
              const std::string& path);

std::string bound_report_json(const BoundReport& report);
void emit_json(const BoundReport& report, const std::string& path);

}  // namespace rcqr
