#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "rcqr/dense.hpp"
#include "rcqr/sparse.hpp"

namespace rcqr {

enum class Family { T1Arrowhead, T2Rows, DenseSvd };

const char* to_string(Family f) noexcept;
/// "t1", "t2" or "dense". Throws ParamError.
Family parse_family(const std::string& name);

struct GeneratorSpec {
  Family family = Family::T1Arrowhead;
  std::size_t block_size = 20;    ///< nb
  std::size_t block_count = 1000; ///< q
  double sigma = 1.0;
  std::uint64_t seed = 0;         ///< DenseSvd only

  /// Throws ParamError unless 0 < sigma <= 1, nb >= 2, q >= 1.
  void validate() const;
};

/// q stacked copies of B = D - 5 e1 y^T - 10 y e1^T, with
/// d_i = sigma^((i-1)/(nb-1)), y_1 = 0 and y_i = 1 otherwise.
SparseMatrix make_t1(const GeneratorSpec& spec);

/// q stacked copies of K = e10 o^T + e11 o^T + D (o all ones).
/// Throws ParamError when nb < 11.
SparseMatrix make_t2(const GeneratorSpec& spec);

/// q stacked copies of U D V^T, U and V orthogonal factors of seeded
/// Gaussian nb x nb matrices (positive-diagonal R).
DenseMatrix make_dense(const GeneratorSpec& spec);

/// Runs the generator matching spec.family.
std::variant<SparseMatrix, DenseMatrix> generate(const GeneratorSpec& spec);

/// Dense view of a generated matrix.
DenseMatrix generate_dense(const GeneratorSpec& spec);

/// Orthogonal factor of a seeded standard-normal n x n matrix, computed with
/// Householder QR and normalised so that R has a positive diagonal.
DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed);

}  // namespace rcqr
