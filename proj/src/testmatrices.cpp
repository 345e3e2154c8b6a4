#include "rcqr/testmatrices.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include "rcqr/rng.hpp"

namespace rcqr {

namespace {

constexpr std::uint64_t kTagU = 11;
constexpr std::uint64_t kTagV = 12;

std::vector<double> diagonal(const GeneratorSpec& spec) {
  const std::size_t nb = spec.block_size;
  std::vector<double> d(nb);
  for (std::size_t i = 0; i < nb; ++i)
    d[i] = std::pow(spec.sigma,
                    static_cast<double>(i) / static_cast<double>(nb - 1));
  return d;
}

// Repeats the block's triplets q times down the rows.
SparseMatrix stack(const std::vector<std::size_t>& r,
                   const std::vector<std::size_t>& c,
                   const std::vector<double>& v, const GeneratorSpec& spec) {
  const std::size_t nb = spec.block_size;
  const std::size_t q = spec.block_count;
  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(r.size() * q);
  for (std::size_t b = 0; b < q; ++b)
    for (std::size_t k = 0; k < r.size(); ++k)
      entries.push_back({b * nb + r[k], c[k], v[k]});
  return SparseMatrix::from_triplets(q * nb, nb, std::move(entries));
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::T1Arrowhead: return "t1";
    case Family::T2Rows: return "t2";
    case Family::DenseSvd: return "dense";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (s == "t1") return Family::T1Arrowhead;
  if (s == "t2") return Family::T2Rows;
  if (s == "dense") return Family::DenseSvd;
  throw ParamError("unknown family '" + name + "'");
}

void GeneratorSpec::validate() const {
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw ParamError("sigma must lie in (0, 1]");
  if (block_size < 2) throw ParamError("block size must be at least 2");
  if (block_count < 1) throw ParamError("block count must be at least 1");
}

SparseMatrix make_t1(const GeneratorSpec& spec) {
  spec.validate();
  const std::size_t nb = spec.block_size;
  const std::vector<double> d = diagonal(spec);
  std::vector<std::size_t> r, c;
  std::vector<double> v;
  for (std::size_t i = 0; i < nb; ++i) {
    r.push_back(i);
    c.push_back(i);
    v.push_back(d[i]);
  }
  for (std::size_t j = 1; j < nb; ++j) {
    r.push_back(0);
    c.push_back(j);
    v.push_back(-5.0);
    r.push_back(j);
    c.push_back(0);
    v.push_back(-10.0);
  }
  return stack(r, c, v, spec);
}

SparseMatrix make_t2(const GeneratorSpec& spec) {
  spec.validate();
  const std::size_t nb = spec.block_size;
  if (nb < 11) throw ParamError("make_t2: block size must be at least 11");
  const std::vector<double> d = diagonal(spec);
  std::vector<std::size_t> r, c;
  std::vector<double> v;
  for (std::size_t i = 0; i < nb; ++i) {
    r.push_back(i);
    c.push_back(i);
    v.push_back(d[i]);
  }
  for (std::size_t row : {std::size_t{9}, std::size_t{10}})
    for (std::size_t j = 0; j < nb; ++j) {
      r.push_back(row);
      c.push_back(j);
      v.push_back(1.0);
    }
  return stack(r, c, v, spec);
}

DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  // Column-major working copy; Householder vectors overwrite it.
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[j][i] = rng::normal(seed, i * n + j);
  std::vector<std::vector<double>> vs;
  std::vector<double> diag_sign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    auto& col = a[k];
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    const double alpha = col[k] >= 0.0 ? -norm : norm;
    std::vector<double> v(n, 0.0);
    for (std::size_t i = k; i < n; ++i) v[i] = col[i];
    v[k] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k; i < n; ++i) vv += v[i] * v[i];
    if (vv > 0.0)
      for (std::size_t j = k; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i] * a[j][i];
        const double f = 2.0 * dot / vv;
        for (std::size_t i = k; i < n; ++i) a[j][i] -= f * v[i];
      }
    diag_sign[k] = a[k][k] < 0.0 ? -1.0 : 1.0;
    vs.push_back(std::move(v));
  }
  // Q = H_0 H_1 ... H_{n-1} applied to the identity, then columns flipped so
  // that R = Q^T A has a positive diagonal.
  DenseMatrix q = DenseMatrix::identity(n);
  for (std::size_t kk = n; kk-- > 0;) {
    const auto& v = vs[kk];
    double vv = 0.0;
    for (std::size_t i = kk; i < n; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = kk; i < n; ++i) dot += v[i] * q(i, j);
      const double f = 2.0 * dot / vv;
      for (std::size_t i = kk; i < n; ++i) q(i, j) -= f * v[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) *= diag_sign[j];
  return q;
}

DenseMatrix make_dense(const GeneratorSpec& spec) {
  spec.validate();
  const std::size_t nb = spec.block_size;
  const DenseMatrix u = random_orthogonal(nb, rng::stream_key(spec.seed, kTagU));
  const DenseMatrix v = random_orthogonal(nb, rng::stream_key(spec.seed, kTagV));
  const std::vector<double> d = diagonal(spec);
  DenseMatrix ud = u;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) ud(i, j) *= d[j];
  const DenseMatrix block = matmul(ud, transpose(v));
  DenseMatrix x(spec.block_count * nb, nb);
  for (std::size_t b = 0; b < spec.block_count; ++b)
    for (std::size_t i = 0; i < nb; ++i)
      std::copy(block.row(i).begin(), block.row(i).end(),
                x.row(b * nb + i).begin());
  return x;
}

std::variant<SparseMatrix, DenseMatrix> generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::T1Arrowhead: return make_t1(spec);
    case Family::T2Rows: return make_t2(spec);
    case Family::DenseSvd: return make_dense(spec);
  }
  throw ParamError("unknown family");
}

DenseMatrix generate_dense(const GeneratorSpec& spec) {
  auto g = generate(spec);
  if (auto* s = std::get_if<SparseMatrix>(&g)) return to_dense(*s);
  return std::get<DenseMatrix>(std::move(g));
}

}  // namespace rcqr
