#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace rcqr {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

class SingularTriangular : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

// Raised for eta/j/beta on a zero matrix.
class Undefined : public Error {
 public:
  using Error::Error;
};

class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Cholesky pivot at `index` was non-positive or non-finite. `stage` names the
// factorization step inside a QR algorithm ("first-cholesky", ...); it is
// empty when raised by the bare kernel.
class CholeskyBreakdown : public Error {
 public:
  CholeskyBreakdown(std::size_t index, double pivot, std::string stage = {})
      : Error(format(index, pivot, stage)),
        index_(index),
        pivot_(pivot),
        stage_(std::move(stage)) {}

  std::size_t index() const noexcept { return index_; }
  double pivot() const noexcept { return pivot_; }
  const std::string& stage() const noexcept { return stage_; }

  CholeskyBreakdown with_stage(std::string stage) const {
    return CholeskyBreakdown(index_, pivot_, std::move(stage));
  }

 private:
  static std::string format(std::size_t index, double pivot,
                            const std::string& stage) {
    std::string s = "CholeskyBreakdown";
    if (!stage.empty()) s += " [" + stage + "]";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", pivot);
    s += ": pivot " + std::to_string(index) + " = " + buf;
    return s;
  }

  std::size_t index_;
  double pivot_;
  std::string stage_;
};

}  // namespace rcqr
