#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace snbs {

// Thrown when a self-normalizer D is (numerically) zero, e.g. for a
// constant series or a constant block.
class DegenerateNormalizer : public std::runtime_error {
 public:
  explicit DegenerateNormalizer(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when every block of a series has a zero normalizer, so no
// block-statistic distribution can be formed.
class AllBlocksDegenerate : public std::runtime_error {
 public:
  explicit AllBlocksDegenerate(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when a Toeplitz autocovariance matrix is not positive definite
// within tolerance; usually signals an inconsistent truncated ACF.
class NonPositiveDefinite : public std::runtime_error {
 public:
  explicit NonPositiveDefinite(const std::string& what)
      : std::runtime_error(what) {}
};

// CSV/config input failure, carrying the 1-based line number.
class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace snbs
