#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace snbs {

// Empirical distribution function of a finite sample: a right-continuous
// non-decreasing step function with range {0, 1/m, ..., 1}.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values)
      : sorted_(std::move(values)) {
    if (sorted_.empty()) {
      throw std::invalid_argument("EmpiricalCdf: empty sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
  }

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_values() const { return sorted_; }

  // F(x) = #{v <= x} / m.
  double eval(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
  }

  // Inf-type quantile: the smallest sample value x with F(x) >= p, i.e.
  // the order statistic of rank ceil(p*m). p in (0, 1].
  double quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::domain_error("EmpiricalCdf::quantile: p must lie in (0,1]");
    }
    const double m = static_cast<double>(sorted_.size());
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * m));
    if (rank < 1) rank = 1;
    if (rank > sorted_.size()) rank = sorted_.size();
    return sorted_[rank - 1];
  }

 private:
  std::vector<double> sorted_;
};

inline EmpiricalCdf empirical_cdf(std::vector<double> values) {
  return EmpiricalCdf(std::move(values));
}

}  // namespace snbs
