#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "rcqr/matrix_market.hpp"
#include "rcqr/rng.hpp"
#include "rcqr/sparse.hpp"
#include "rcqr/testmatrices.hpp"

using namespace rcqr;

namespace {

SparseMatrix random_sparse(std::size_t m, std::size_t n, double density,
                           std::uint64_t seed) {
  std::vector<SparseMatrix::Triplet> t;
  const std::uint64_t key = rng::stream_key(seed, 77);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t c = i * n + j;
      if (rng::uniform_open(rng::bits(key, 2 * c)) < density)
        t.push_back({i, j, rng::normal(key, 2 * c + 1)});
    }
  return SparseMatrix::from_triplets(m, n, std::move(t));
}

}  // namespace

TEST(SparseMatrix, ValidatesCsr) {
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1}, {0}, {1.0}), DimensionError);
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1, 1}, {2}, {1.0}), ParamError);
  EXPECT_THROW(SparseMatrix(1, 3, {0, 2}, {1, 1}, {1.0, 2.0}), ParamError);
  EXPECT_THROW(SparseMatrix(2, 2, {0, 2, 1}, {0, 1}, {1.0, 1.0}), ParamError);
  EXPECT_NO_THROW(SparseMatrix(2, 2, {0, 1, 1}, {1}, {0.0}));
}

TEST(SparseMatrix, TripletsSumDuplicates) {
  const auto s = SparseMatrix::from_triplets(2, 2, {{1, 1, 2.0}, {0, 1, 1.0}, {1, 1, 3.0}});
  EXPECT_EQ(s.nnz(), 2u);
  EXPECT_EQ(to_dense(s), DenseMatrix::from_rows({{0, 1}, {0, 5}}));
}

TEST(Profile, ZeroMatrix) {
  const auto p = profile_sparsity(SparseMatrix(10, 3));
  EXPECT_EQ(p.v, 0u);
  EXPECT_EQ(p.t1, 0u);
  EXPECT_EQ(p.t2, 0u);
  EXPECT_EQ(p.c, 0.0);
  EXPECT_EQ(p.matrix_class, MatrixClass::T2);
}

TEST(Profile, ArrowheadAndRowsFamilies) {
  GeneratorSpec spec;
  spec.sigma = 1e-4;
  const auto p1 = profile_sparsity(make_t1(spec));
  EXPECT_EQ(p1.v, 1u);
  EXPECT_EQ(p1.t1, 20000u);
  EXPECT_EQ(p1.t2, 2000u);
  EXPECT_EQ(p1.dense_cols, std::vector<std::size_t>{0});
  EXPECT_EQ(p1.c, 10.0);
  EXPECT_EQ(p1.matrix_class, MatrixClass::T1);
  spec.family = Family::T2Rows;
  const auto p2 = profile_sparsity(make_t2(spec));
  EXPECT_EQ(p2.v, 0u);
  EXPECT_EQ(p2.t2, 3000u);
  EXPECT_EQ(p2.matrix_class, MatrixClass::T2);
}

TEST(Profile, DenseClassAndThresholdValidation) {
  const auto d = oracle::gaussian(10, 3, 1);
  EXPECT_EQ(profile_sparsity(d).matrix_class, MatrixClass::Dense);
  EXPECT_EQ(profile_sparsity(from_dense(d)).v, 3u);
  EXPECT_THROW(profile_sparsity(d, 0.0), ParamError);
  EXPECT_THROW(profile_sparsity(d, 1.5), ParamError);
  // Stored zeros do not count as nonzeros.
  const SparseMatrix z(4, 1, {0, 1, 2, 3, 4}, {0, 0, 0, 0}, {0, 0, 0, 1.0});
  EXPECT_EQ(profile_sparsity(z).v, 1u);
  EXPECT_EQ(profile_sparsity(z, 0.5).v, 0u);
}

TEST(Profile, RowPermutationAndScaleInvariant) {
  const auto s = random_sparse(40, 6, 0.3, 9);
  auto d = to_dense(s);
  DenseMatrix perm(40, 6);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 6; ++j) perm(i, j) = d((i * 7) % 40, j);
  const auto a = profile_sparsity(s);
  const auto b = profile_sparsity(perm);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.t1, b.t1);
  EXPECT_EQ(a.t2, b.t2);
  EXPECT_EQ(a.c, b.c);
  const auto c = profile_sparsity(-3.0 * d);
  EXPECT_EQ(c.matrix_class, a.matrix_class);
  EXPECT_EQ(c.c, 3.0 * a.c);
}

TEST(Spmm, Examples) {
  const auto d = oracle::gaussian(3, 2, 4);
  EXPECT_EQ(spmm(from_dense(DenseMatrix::identity(3)), d), d);
  const auto one = SparseMatrix::from_triplets(2, 2, {{0, 1, 2.0}});
  EXPECT_EQ(spmm(one, DenseMatrix::identity(2)),
            DenseMatrix::from_rows({{0, 2}, {0, 0}}));
  EXPECT_THROW(spmm(one, DenseMatrix(3, 1)), DimensionError);
  EXPECT_THROW(dense_times_sparse(DenseMatrix(1, 3), one), DimensionError);
}

TEST(Spmm, MatchesDensifiedProduct) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto s = random_sparse(20, 5, 0.3, seed);
    const auto d = oracle::gaussian(5, 3, seed);
    const auto exact = oracle::matmul(to_dense(s), d);
    const double scale = std::max(oracle::fro(exact), 1e-300);
    EXPECT_LE(oracle::fro(spmm(s, d) - exact), 1e-13 * scale);
    const auto e = oracle::gaussian(4, 20, seed + 1);
    const auto exact2 = oracle::matmul(e, to_dense(s));
    EXPECT_LE(oracle::fro(dense_times_sparse(e, s) - exact2),
              1e-13 * std::max(oracle::fro(exact2), 1e-300));
  }
}

TEST(Conversions, RoundTrip) {
  GeneratorSpec spec;
  spec.block_count = 3;
  const auto s = make_t1(spec);
  EXPECT_EQ(from_dense(to_dense(s)), s);
  const auto i = from_dense(DenseMatrix::identity(4));
  EXPECT_EQ(i.nnz(), 4u);
  EXPECT_EQ(to_dense(i), DenseMatrix::identity(4));
  EXPECT_EQ(from_dense(DenseMatrix::from_rows({{1e-9, 1}}), 1e-6).nnz(), 1u);
}

TEST(MaxAbsAndEnc, Examples) {
  EXPECT_EQ(max_abs(from_dense(DenseMatrix::from_rows({{1, 0, 0}, {0, -3, 0}, {0, 0, 2}}))), 3.0);
  const auto x = DenseMatrix::from_rows({{3}, {4}});
  EXPECT_NEAR(enc_beta(x), 1.28, 1e-15);
  EXPECT_NEAR(enc_beta(from_dense(x)), 1.28, 1e-15);
  EXPECT_NEAR(enc_beta(-7.5 * x), 1.28, 1e-15);
  EXPECT_THROW(enc_beta(SparseMatrix(3, 2)), Undefined);
}

TEST(MatrixMarket, ReadsHeaderExample) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 1\n1 1 3.5\n");
  const auto s = read_matrix_market(in);
  EXPECT_EQ(s.rows(), 2u);
  EXPECT_EQ(s.nnz(), 1u);
  EXPECT_EQ(to_dense(s)(0, 0), 3.5);
}

TEST(MatrixMarket, SumsDuplicates) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n2 2 2\n2 1 1.5\n2 1 2\n");
  EXPECT_EQ(to_dense(read_matrix_market(in))(1, 0), 3.5);
}

TEST(MatrixMarket, RoundTripExact) {
  const auto s = random_sparse(30, 4, 0.4, 3);
  std::stringstream buf;
  write_matrix_market(s, buf);
  EXPECT_EQ(read_matrix_market(buf), s);
}

TEST(MatrixMarket, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_matrix_market(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate pattern general\n1 1 0\n"), 1u);
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate complex general\n1 1 0\n"), 1u);
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"), 3u);
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 x 1\n"), 2u);
  EXPECT_NE(line_of("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n"), 0u);
  EXPECT_THROW(read_matrix_market(std::string("/nonexistent/x.mtx")), IoError);
}
