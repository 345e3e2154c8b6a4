#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "rcqr/sparse.hpp"

namespace rcqr {

// Matrix Market exchange format, "matrix coordinate real general" only.
// Indices are 1-based on disk; duplicate entries are summed on read.

SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::string& path);

// Values are written with 17 significant digits, so a write/read round trip
// reproduces every entry exactly.
void write_matrix_market(const SparseMatrix& s, std::ostream& out);
void write_matrix_market(const SparseMatrix& s, const std::string& path);

}  // namespace rcqr
