#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace intdecomp {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotUnimodular : public Error {
 public:
  NotUnimodular() : Error("matrix is not unimodular") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class AmbientMismatch : public Error {
 public:
  AmbientMismatch() : Error("submodules live in different ambient modules") {}
};

class NotContained : public Error {
 public:
  NotContained() : Error("submodule is not contained in the enclosing submodule") {}
};

class NotFreeQuotient : public Error {
 public:
  NotFreeQuotient() : Error("quotient is not free; no complement exists") {}
};

class ImageEscapesTarget : public Error {
 public:
  ImageEscapesTarget() : Error("image of the source does not lie in the target") {}
};

class BadOrder : public Error {
 public:
  BadOrder() : Error("index pair is not ordered (a > b)") {}
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("zero vector has no (birth, death) label") {}
};

/// A complement required by the extension step does not exist.
class NotFreeCokernel : public Error {
 public:
  using Error::Error;
};

class InconsistentInput : public Error {
 public:
  using Error::Error;
};

class CaseGap : public Error {
 public:
  using Error::Error;
};

/// Raised by the split short exact sequence checks; unreachable for valid input.
class ExactnessViolation : public Error {
 public:
  using Error::Error;
};

class NegativeMultiplicity : public Error {
 public:
  using Error::Error;
};

/// The module has a structure map whose cokernel has torsion.
class NotDecomposable : public Error {
 public:
  NotDecomposable(std::int64_t a, std::int64_t b, std::vector<std::string> torsion)
      : Error(describe(a, b, torsion)), a_(a), b_(b), torsion_(std::move(torsion)) {}

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  const std::vector<std::string>& torsion() const noexcept { return torsion_; }

 private:
  static std::string describe(std::int64_t a, std::int64_t b, const std::vector<std::string>& torsion) {
    std::string s = "structure map " + std::to_string(a) + " -> " + std::to_string(b) + " has cokernel torsion [";
    for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? ", " : "") + torsion[i];
    return s + "]";
  }

  std::int64_t a_, b_;
  std::vector<std::string> torsion_;
};

/// Homology at some grade has torsion, so the integer module is not pointwise free.
class TorsionHomology : public Error {
 public:
  TorsionHomology(std::int64_t grade, std::size_t dim, std::vector<std::string> torsion)
      : Error("H_" + std::to_string(dim) + " at grade " + std::to_string(grade) + " has torsion"),
        grade_(grade), dim_(dim), torsion_(std::move(torsion)) {}

  std::int64_t grade() const noexcept { return grade_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& torsion() const noexcept { return torsion_; }

 private:
  std::int64_t grade_;
  std::size_t dim_;
  std::vector<std::string> torsion_;
};

/// Input file could not be parsed or failed validation.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace intdecomp
