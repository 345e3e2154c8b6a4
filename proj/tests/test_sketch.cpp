#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rcqr/bounds.hpp"
#include "rcqr/norms.hpp"
#include "rcqr/sketch.hpp"

using namespace rcqr;

TEST(CountSketch, FrobeniusNormIsSqrtM) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto op = build_countsketch(37, 1000, seed);
    EXPECT_EQ(operator_fro_norm(op), std::sqrt(1000.0));
    EXPECT_EQ(fro_norm(to_dense(op)), std::sqrt(1000.0));
  }
}

TEST(CountSketch, DeterministicAndValidated) {
  EXPECT_EQ(build_countsketch(10, 50, 3), build_countsketch(10, 50, 3));
  EXPECT_NE(build_countsketch(10, 50, 3), build_countsketch(10, 50, 4));
  EXPECT_THROW(build_countsketch(0, 5, 1), ParamError);
  EXPECT_THROW(build_countsketch(6, 5, 1), ParamError);
  EXPECT_THROW(CountSketchOp(2, {0, 2}, {1, 1}), ParamError);
  EXPECT_THROW(CountSketchOp(2, {0, 1}, {1, 0}), ParamError);
  EXPECT_THROW(CountSketchOp(2, {0, 1}, {1}), DimensionError);
}

TEST(CountSketch, UsesAllRowsAndBothSigns) {
  const auto op = build_countsketch(8, 4000, 11);
  std::vector<std::size_t> hits(8, 0);
  std::size_t neg = 0;
  for (std::size_t i = 0; i < 4000; ++i) {
    ++hits[op.row_of()[i]];
    neg += op.sign_of()[i] < 0;
  }
  for (auto h : hits) EXPECT_NEAR(h, 500.0, 100.0);
  EXPECT_NEAR(neg, 2000.0, 200.0);
}

TEST(CountSketch, ApplyExamples) {
  const CountSketchOp op(2, {0, 1}, {1, -1});
  EXPECT_EQ(apply_countsketch(op, DenseMatrix::from_rows({{1}, {2}})),
            DenseMatrix::from_rows({{1}, {-2}}));
  EXPECT_EQ(apply_countsketch(op, DenseMatrix(2, 3)), DenseMatrix(2, 3));
  EXPECT_THROW(apply_countsketch(op, DenseMatrix(3, 1)), DimensionError);
}

TEST(CountSketch, MatchesDensifiedOperatorAndIsLinear) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto op = build_countsketch(15, 120, seed);
    const auto x = oracle::gaussian(120, 4, seed);
    const auto y = oracle::gaussian(120, 4, seed + 50);
    const auto sx = apply_countsketch(op, x);
    const auto exact = oracle::matmul(to_dense(op), x);
    EXPECT_LE(oracle::fro(sx - exact), 1e-13 * oracle::fro(exact));
    EXPECT_LE(oracle::fro(apply_countsketch(op, from_dense(x)) - exact),
              1e-13 * oracle::fro(exact));
    const auto lin = apply_countsketch(op, 2.5 * x + (-0.75) * y);
    const auto sep = 2.5 * sx + (-0.75) * apply_countsketch(op, y);
    EXPECT_LE(oracle::fro(lin - sep), 1e-13 * oracle::fro(sep));
  }
}

TEST(Gaussian, EntriesScaledAndDeterministic) {
  const auto a = build_gaussian(50, 300, 9);
  const auto b = build_gaussian(50, 300, 9);
  EXPECT_EQ(to_dense(a), to_dense(b));
  EXPECT_EQ(a.scale(), 1.0 / std::sqrt(50.0));
  const auto d = to_dense(a);
  for (std::size_t i = 0; i < 50; i += 7)
    for (std::size_t l = 0; l < 300; l += 13) EXPECT_EQ(d(i, l), a.entry(i, l));
  double s = 0.0, s2 = 0.0;
  for (double v : d.data()) {
    s += v;
    s2 += v * v;
  }
  const double cnt = static_cast<double>(d.size());
  EXPECT_NEAR(s / cnt, 0.0, 0.01);
  EXPECT_NEAR(s2 / cnt * 50.0, 1.0, 0.03);
  EXPECT_THROW(build_gaussian(0, 5, 1), ParamError);
  EXPECT_THROW(build_gaussian(6, 5, 1), ParamError);
}

TEST(Gaussian, OddRowOffsetsFillConsistently) {
  const auto op = build_gaussian(3, 7, 21);
  std::vector<double> row(7);
  for (std::size_t i = 0; i < 3; ++i) {
    op.fill_row(i, row);
    for (std::size_t l = 0; l < 7; ++l) EXPECT_EQ(row[l], op.entry(i, l));
  }
}

TEST(Gaussian, ApplyMatchesDensified) {
  const auto op = build_gaussian(20, 200, 5);
  const auto x = oracle::gaussian(200, 3, 5);
  const auto exact = oracle::matmul(to_dense(op), x);
  EXPECT_LE(oracle::fro(apply_gaussian(op, x) - exact), 1e-13 * oracle::fro(exact));
  EXPECT_LE(oracle::fro(apply_gaussian(op, from_dense(x)) - exact),
            1e-13 * oracle::fro(exact));
  EXPECT_EQ(apply_gaussian(op, DenseMatrix(200, 2)), DenseMatrix(20, 2));
}

TEST(Gaussian, PreservesSquaredNormInExpectation) {
  const auto x = oracle::gaussian(100, 1, 1);
  const double nx2 = std::pow(fro_norm(x), 2);
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed)
    mean += std::pow(fro_norm(apply_gaussian(build_gaussian(10, 100, seed), x)), 2) / nx2;
  mean /= 2000.0;
  EXPECT_GE(mean, 0.95);
  EXPECT_LE(mean, 1.05);
}

TEST(Gaussian, OperatorNormEstimateHolds) {
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto op = build_gaussian(40, 200, seed);
    ok += two_norm(to_dense(op)) <= gaussian_norm_bound(40, 200, 2.0);
  }
  EXPECT_GE(ok, 190u);
}

TEST(Multi, ChainsAndMatchesDensified) {
  const auto op = build_multi(60, 12, 400, 5, 17);
  EXPECT_EQ(op.count.out_rows(), op.gauss.in_rows());
  EXPECT_EQ(op.out_rows(), 12u);
  const auto x = oracle::gaussian(400, 5, 3);
  const auto sx = apply_multi(op, x);
  EXPECT_EQ(sx.rows(), 12u);
  const auto exact =
      oracle::matmul(to_dense(op.gauss), oracle::matmul(to_dense(op.count), x));
  EXPECT_LE(oracle::fro(sx - exact), 1e-12 * oracle::fro(exact));
  EXPECT_LE(oracle::fro(apply_multi(op, from_dense(x)) - exact),
            1e-12 * oracle::fro(exact));
  EXPECT_EQ(apply_multi(op, DenseMatrix(400, 5)), DenseMatrix(12, 5));
  EXPECT_THROW(build_multi(60, 4, 400, 5, 1), ParamError);
  EXPECT_THROW(build_multi(60, 70, 400, 5, 1), ParamError);
  EXPECT_THROW(build_multi(500, 12, 400, 5, 1), ParamError);
}

TEST(Multi, FactorsUseIndependentStreams) {
  const auto op = build_multi(60, 12, 400, 5, 17);
  EXPECT_NE(op.count, build_countsketch(60, 400, 17));
  EXPECT_NE(to_dense(op.gauss), to_dense(build_gaussian(12, 60, 17)));
}

TEST(SketchSizes, Examples) {
  EXPECT_EQ(countsketch_min_rows(20, 0.5, 0.6), 2800u);
  EXPECT_EQ(countsketch_min_rows(1, 0.5, 0.5), 16u);
  EXPECT_EQ(countsketch_min_rows(3, 0.999999, 0.999999), 13u);
  EXPECT_THROW(countsketch_min_rows(3, 0.0, 0.5), ParamError);
  EXPECT_THROW(countsketch_min_rows(3, 0.5, 1.0), ParamError);
  EXPECT_EQ(gaussian_rows_hint(20, 25), 500u);
  EXPECT_EQ(gaussian_rows_hint(20, 1), 20u);
  EXPECT_EQ(gaussian_rows_hint(20, 1.5), 30u);
  EXPECT_EQ(gaussian_rows_hint(20, 1.51), 31u);
  EXPECT_THROW(gaussian_rows_hint(20, 0.9), ParamError);
}

TEST(CombineEmbedding, Examples) {
  const auto e = combine_embedding(0.5, 0.6, 0.5, 0.4);
  EXPECT_EQ(e.eps_s, 0.75);
  EXPECT_EQ(e.eps_b, 1.25);
  EXPECT_EQ(e.p_f, 0.76);
  const auto z = combine_embedding(0.0, 0.3, 0.0, 0.2);
  EXPECT_EQ(z.eps_s, 0.0);
  EXPECT_EQ(z.eps_b, 0.0);
  const auto id = combine_embedding(0.3, 0.0, 0.0, 0.0);
  EXPECT_EQ(id.eps_s, 0.3);
  EXPECT_EQ(id.eps_b, 0.3);
  EXPECT_EQ(id.p_f, 0.0);
  const auto a = combine_embedding(0.2, 0.1, 0.4, 0.3);
  const auto b = combine_embedding(0.4, 0.3, 0.2, 0.1);
  EXPECT_EQ(a.eps_s, b.eps_s);
  EXPECT_EQ(a.eps_b, b.eps_b);
  EXPECT_EQ(a.p_f, b.p_f);
}

TEST(VerifyEmbedding, IdentityAlwaysPasses) {
  const auto x = oracle::gaussian(50, 4, 2);
  EXPECT_EQ(verify_embedding(CountSketchOp::identity(50), x, 0.1, 200, 1), 1.0);
}

TEST(VerifyEmbedding, GaussianFrequency) {
  const auto x = oracle::gaussian(2000, 20, 8);
  const SketchOperator op = build_gaussian(500, 2000, 4);
  EXPECT_GE(verify_embedding(op, x, 0.5, 200, 3), 0.4);
  EXPECT_LE(verify_embedding(op, x, 0.0, 200, 3), 0.05);
  EXPECT_THROW(verify_embedding(op, x, 0.5, 0, 3), ParamError);
}

TEST(VerifyEmbedding, MultiUsesCombinedDistortion) {
  const auto x = oracle::gaussian(4000, 10, 8);
  const SketchOperator op = build_multi(1200, 200, 4000, 10, 6);
  const auto params = combine_embedding(0.5, 0.6, 0.5, 0.4);
  EXPECT_GE(verify_embedding(op, x, params, 200, 2), 0.24);
}
