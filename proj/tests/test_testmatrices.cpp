#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rcqr/norms.hpp"
#include "rcqr/testmatrices.hpp"

using namespace rcqr;

namespace {

GeneratorSpec spec_of(Family f, double sigma, std::size_t q = 1000) {
  GeneratorSpec s;
  s.family = f;
  s.sigma = sigma;
  s.block_count = q;
  return s;
}

}  // namespace

TEST(GeneratorSpec, Validation) {
  EXPECT_THROW(make_t1(spec_of(Family::T1Arrowhead, 0.0)), ParamError);
  EXPECT_THROW(make_t1(spec_of(Family::T1Arrowhead, 1.5)), ParamError);
  EXPECT_THROW(make_t1(spec_of(Family::T1Arrowhead, 0.5, 0)), ParamError);
  auto s = spec_of(Family::T2Rows, 0.5, 2);
  s.block_size = 10;
  EXPECT_THROW(make_t2(s), ParamError);
  s.block_size = 1;
  EXPECT_THROW(make_t1(s), ParamError);
  EXPECT_EQ(parse_family("T2"), Family::T2Rows);
  EXPECT_THROW(parse_family("t3"), ParamError);
}

TEST(T1, UnitSigmaBlock) {
  const auto b = to_dense(make_t1(spec_of(Family::T1Arrowhead, 1.0, 1)));
  ASSERT_EQ(b.rows(), 20u);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      double want = i == j ? 1.0 : 0.0;
      if (i == 0 && j > 0) want = -5.0;
      if (j == 0 && i > 0) want = -10.0;
      EXPECT_EQ(b(i, j), want) << i << "," << j;
    }
}

TEST(T1, DiagonalGradingAndStacking) {
  const auto x = to_dense(make_t1(spec_of(Family::T1Arrowhead, 1e-4, 3)));
  EXPECT_EQ(x.rows(), 60u);
  EXPECT_EQ(x(19, 19), 1e-4);
  EXPECT_NEAR(x(10, 10), std::pow(1e-4, 10.0 / 19.0), 1e-18);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) EXPECT_EQ(x(40 + i, j), x(i, j));
}

TEST(T1, ConditionNumbersMatchTables) {
  EXPECT_NEAR(cond2(to_dense(make_t1(spec_of(Family::T1Arrowhead, 1e-2)))), 3.99e3, 0.05 * 3.99e3);
  EXPECT_NEAR(cond2(to_dense(make_t1(spec_of(Family::T1Arrowhead, 1e-4)))), 3.51e5, 0.05 * 3.51e5);
  EXPECT_NEAR(cond2(to_dense(make_t1(spec_of(Family::T1Arrowhead, 2e-8)))), 1.30e9, 0.05 * 1.30e9);
}

TEST(T1, EncBetaBoundedInQ) {
  const double b10 = enc_beta(make_t1(spec_of(Family::T1Arrowhead, 1e-4, 10)));
  const double b1000 = enc_beta(make_t1(spec_of(Family::T1Arrowhead, 1e-4, 1000)));
  EXPECT_NEAR(b1000, b10, 1e-8 * b10);
}

TEST(T2, BlockStructure) {
  const auto b = to_dense(make_t2(spec_of(Family::T2Rows, 1.0, 1)));
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      double want = i == j ? 1.0 : 0.0;
      if (i == 9 || i == 10) want += 1.0;
      EXPECT_EQ(b(i, j), want);
    }
}

TEST(T2, ConditionNumbersMatchTables) {
  EXPECT_NEAR(cond2(to_dense(make_t2(spec_of(Family::T2Rows, 1e-2)))), 8.78e2, 0.05 * 8.78e2);
  // sigma = 8e-9 reproduces the tabulated 1.01e9.
  EXPECT_NEAR(cond2(to_dense(make_t2(spec_of(Family::T2Rows, 8e-9)))), 1.01e9, 0.05 * 1.01e9);
  EXPECT_NEAR(cond2(to_dense(make_t2(spec_of(Family::T2Rows, 6e-9)))), 1.353625e9, 1e-5 * 1.353625e9);
}

TEST(Dense, SingularValuesExact) {
  const auto x1 = make_dense(spec_of(Family::DenseSvd, 1.0, 1));
  for (double s : singular_values(x1)) EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_NEAR(cond2(make_dense(spec_of(Family::DenseSvd, 1e-4))), 1e4, 1e-6 * 1e4);
  const auto x4 = make_dense(spec_of(Family::DenseSvd, 0.1, 4));
  EXPECT_NEAR(two_norm(x4), 2.0, 1e-13);
}

TEST(Dense, OrthogonalFactors) {
  const auto q = random_orthogonal(20, 3);
  EXPECT_LE(oracle::fro(oracle::matmul(transpose(q), q) - DenseMatrix::identity(20)), 1e-14);
  EXPECT_EQ(q, random_orthogonal(20, 3));
  EXPECT_NE(q, random_orthogonal(20, 4));
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(make_t1(spec_of(Family::T1Arrowhead, 1e-3, 5)),
            make_t1(spec_of(Family::T1Arrowhead, 1e-3, 5)));
  auto s = spec_of(Family::DenseSvd, 1e-3, 5);
  s.seed = 9;
  EXPECT_EQ(make_dense(s), make_dense(s));
  auto t = s;
  t.seed = 10;
  EXPECT_NE(make_dense(s), make_dense(t));
  EXPECT_EQ(generate_dense(s), make_dense(s));
}

TEST(Generators, Classes) {
  EXPECT_EQ(profile_sparsity(make_t1(spec_of(Family::T1Arrowhead, 1e-4))).matrix_class, MatrixClass::T1);
  EXPECT_EQ(profile_sparsity(make_t2(spec_of(Family::T2Rows, 1e-4))).matrix_class, MatrixClass::T2);
  EXPECT_EQ(profile_sparsity(make_dense(spec_of(Family::DenseSvd, 1e-4, 2))).matrix_class, MatrixClass::Dense);
}
