#include "rcqr/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace rcqr {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++lineno;
  {
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket")
      throw ParseError("missing %%MatrixMarket banner", lineno);
    if (lower(object) != "matrix")
      throw ParseError("unsupported object '" + object + "'", lineno);
    if (lower(format) != "coordinate")
      throw ParseError("unsupported format '" + format + "'", lineno);
    if (lower(field) != "real")
      throw ParseError("unsupported field '" + field + "'", lineno);
    if (lower(symmetry) != "general")
      throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
  }

  // Size line, after any comments.
  std::size_t rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ss(line);
    long long r = 0, c = 0, z = 0;
    std::string extra;
    if (!(ss >> r >> c >> z) || (ss >> extra))
      throw ParseError("malformed size line", lineno);
    if (r <= 0 || c <= 0 || z < 0)
      throw ParseError("invalid matrix size", lineno);
    rows = static_cast<std::size_t>(r);
    cols = static_cast<std::size_t>(c);
    nnz = static_cast<std::size_t>(z);
    break;
  }

  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(nnz);
  while (entries.size() < nnz) {
    if (!std::getline(in, line))
      throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                           std::to_string(entries.size()),
                       lineno + 1);
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream es(line);
    long long i = 0, j = 0;
    double v = 0.0;
    std::string extra;
    if (!(es >> i >> j >> v) || (es >> extra))
      throw ParseError("malformed entry", lineno);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > rows ||
        static_cast<std::size_t>(j) > cols)
      throw ParseError("index out of range", lineno);
    entries.push_back({static_cast<std::size_t>(i - 1),
                       static_cast<std::size_t>(j - 1), v});
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line) && line[0] != '%')
      throw ParseError("more entries than declared", lineno);
  }
  try {
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw ParseError(e.what(), lineno);
  }
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& s, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << s.rows() << ' ' << s.cols() << ' ' << s.nnz() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", s.values()[k]);
      out << (i + 1) << ' ' << (s.col_idx()[k] + 1) << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market(const SparseMatrix& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_matrix_market(s, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace rcqr
