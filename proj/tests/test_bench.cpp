#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rcqr/bench.hpp"
#include "rcqr/rng.hpp"

using namespace rcqr;

namespace {

ExperimentConfig small_config(Algorithm alg, double sigma) {
  ExperimentConfig c;
  GeneratorSpec g;
  g.sigma = sigma;
  g.block_count = 100;
  c.source = g;
  c.algorithm = alg;
  c.s1 = 600;
  c.s2 = 100;
  c.s = 100;
  c.trials = 6;
  c.master_seed = 42;
  return c;
}

std::string without_time(const std::vector<ExperimentRecord>& recs) {
  auto copy = recs;
  for (auto& r : copy) r.wall_time_s = 0.0;
  std::ostringstream out;
  emit_csv(copy, out);
  return out.str();
}

}  // namespace

TEST(Experiment, SeedsDerivedPerTrial) {
  const auto res = run_experiment(small_config(Algorithm::MR, 1e-4));
  ASSERT_EQ(res.records.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(res.records[i].trial, i);
    EXPECT_EQ(res.records[i].seed, rng::derive_seed(42, i));
  }
  EXPECT_EQ(res.summary.successes, 6u);
  EXPECT_GE(res.summary.mean_orthogonality, 1e-16);
  EXPECT_LE(res.summary.mean_orthogonality, 1e-13);
}

TEST(Experiment, AddingTrialsKeepsEarlierOnes) {
  auto c = small_config(Algorithm::SR, 1e-4);
  const auto a = run_experiment(c);
  c.trials = 9;
  const auto b = run_experiment(c);
  std::vector<ExperimentRecord> head(b.records.begin(), b.records.begin() + 6);
  EXPECT_EQ(without_time(a.records), without_time(head));
}

TEST(Experiment, DeterministicAndThreadIndependent) {
  auto c = small_config(Algorithm::MR, 1e-6);
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  c.threads = 3;
  const auto p = run_experiment(c);
  EXPECT_EQ(without_time(a.records), without_time(b.records));
  EXPECT_EQ(without_time(a.records), without_time(p.records));
}

TEST(Experiment, BreakdownCounted) {
  auto c = small_config(Algorithm::CholQR2, 2e-8);
  c.trials = 3;
  const auto res = run_experiment(c);
  EXPECT_EQ(res.summary.successes, 0u);
  EXPECT_EQ(res.summary.breakdowns, 3u);
  EXPECT_TRUE(std::isnan(res.summary.mean_orthogonality));
  for (const auto& r : res.records) {
    EXPECT_EQ(r.outcome, Outcome::Breakdown);
    EXPECT_FALSE(r.orthogonality.has_value());
    EXPECT_FALSE(r.breakdown_stage.empty());
  }
}

TEST(Experiment, ThresholdMonotone) {
  auto c = small_config(Algorithm::MR, 1e-6);
  std::size_t prev = 1000;
  for (double th : {1e-12, 1e-14, 3e-15, 1e-15, 1e-16}) {
    c.success_orth_threshold = th;
    const auto res = run_experiment(c);
    EXPECT_LE(res.summary.successes, prev);
    prev = res.summary.successes;
    EXPECT_EQ(res.summary.successes + res.summary.quality_fails, c.trials);
  }
  EXPECT_EQ(prev, 0u);
}

TEST(Experiment, RejectsBadConfig) {
  auto c = small_config(Algorithm::MR, 1e-4);
  c.trials = 0;
  EXPECT_THROW(run_experiment(c), ParamError);
  c = small_config(Algorithm::MR, 1e-4);
  c.s1 = 5000;
  EXPECT_THROW(run_experiment(c), ParamError);
  c.source = std::string("/nonexistent/file.mtx");
  EXPECT_THROW(run_experiment(c), IoError);
}

TEST(Summary, AveragesSuccessesOnly) {
  std::vector<ExperimentRecord> recs(3);
  recs[0].orthogonality = 1.0;
  recs[0].residual = 2.0;
  recs[0].wall_time_s = 4.0;
  recs[1].outcome = Outcome::Breakdown;
  recs[2].outcome = Outcome::QualityFail;
  recs[2].orthogonality = 100.0;
  recs[2].residual = 100.0;
  const auto s = summarize(recs);
  EXPECT_EQ(s.successes, 1u);
  EXPECT_EQ(s.breakdowns, 1u);
  EXPECT_EQ(s.quality_fails, 1u);
  EXPECT_EQ(s.mean_orthogonality, 1.0);
  EXPECT_EQ(s.mean_residual, 2.0);
  EXPECT_EQ(s.mean_time_s, 4.0);
}

TEST(Csv, Format) {
  std::ostringstream empty;
  emit_csv({}, empty);
  EXPECT_EQ(empty.str(), "trial,seed,outcome,orthogonality,residual,wall_time_s\n");

  ExperimentRecord r;
  r.trial = 0;
  r.seed = 7;
  r.orthogonality = 7.04e-15;
  r.residual = 3.31e-13;
  r.wall_time_s = 0.25;
  ExperimentRecord b;
  b.trial = 1;
  b.seed = 8;
  b.outcome = Outcome::Breakdown;
  b.breakdown_stage = "first-cholesky";
  std::ostringstream out;
  emit_csv({r, b}, out);
  EXPECT_EQ(out.str(),
            "trial,seed,outcome,orthogonality,residual,wall_time_s\n"
            "0,7,SUCCESS,7.040000e-15,3.310000e-13,2.500000e-01\n"
            "1,8,BREAKDOWN(first-cholesky),,,0.000000e+00\n");
  EXPECT_THROW(emit_csv({r}, std::string("/nonexistent/dir/x.csv")), IoError);
}

TEST(Json, BoundReportFields) {
  BoundReport rep;
  rep.algorithm = Algorithm::MR;
  rep.admissible = true;
  rep.kappa_limit = 123.5;
  rep.limits.w = 123.5;
  const auto j = nlohmann::json::parse(bound_report_json(rep));
  EXPECT_EQ(j["algorithm"], "mr");
  EXPECT_EQ(j["admissible"], true);
  EXPECT_EQ(j["kappa_limit"], 123.5);
  EXPECT_EQ(j["kappa_limits"]["w"], 123.5);
  EXPECT_TRUE(j.contains("constants"));
  EXPECT_TRUE(j["constants"].contains("gamma_n"));
  EXPECT_THROW(emit_json(rep, "/nonexistent/dir/x.json"), IoError);
}
