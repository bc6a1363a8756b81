#pragma once

// Test-only reference implementations: straight transcriptions of the
// defining sums, with plain loops and no prefix-sum or sliding-window
// shortcuts. These stay deliberately independent of the library code
// paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

// Partial sum S_{j,k} by direct summation (1-based).
inline double segment_sum(const std::vector<double>& x, std::size_t j,
                          std::size_t k) {
  double s = 0.0;
  for (std::size_t i = j; i <= k; ++i) s += x[i - 1];
  return s;
}

inline double block_normalizer(const std::vector<double>& x, std::size_t i,
                               std::size_t b) {
  const std::size_t e = i + b - 1;
  const double s_ie = segment_sum(x, i, e);
  double acc = 0.0;
  for (std::size_t k = i; k <= e; ++k) {
    const double term = segment_sum(x, i, k) -
                        static_cast<double>(k - i + 1) /
                            static_cast<double>(b) * s_ie;
    acc += term * term;
  }
  return std::sqrt(acc / static_cast<double>(b));
}

struct BlockStats {
  std::vector<double> t;
  std::vector<double> d;
};

inline BlockStats block_statistics(const std::vector<double>& x,
                                   std::size_t b, bool population,
                                   double mu = 0.0) {
  const std::size_t n = x.size();
  double xbar = 0.0;
  for (double v : x) xbar += v;
  xbar /= static_cast<double>(n);
  const double c = population ? mu : xbar;
  BlockStats out;
  for (std::size_t i = 1; i + b - 1 <= n; ++i) {
    const double num = segment_sum(x, i, i + b - 1) -
                       static_cast<double>(b) * c;
    const double d = block_normalizer(x, i, b);
    out.d.push_back(d);
    out.t.push_back(d > 0.0 ? num / d
                            : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

inline double ecdf_eval(const std::vector<double>& values, double x) {
  std::size_t count = 0;
  for (double v : values) {
    if (v <= x) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(values.size());
}

inline double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(p * m));
  if (rank < 1) rank = 1;
  if (rank > values.size()) rank = values.size();
  return values[rank - 1];
}

// Lower and upper one-sided bounds at the given level, from scratch.
inline std::pair<double, double> one_sided_bounds(const std::vector<double>& x,
                                                  std::size_t b,
                                                  double level) {
  const std::size_t n = x.size();
  const BlockStats stats = block_statistics(x, b, false);
  std::vector<double> defined;
  for (std::size_t i = 0; i < stats.t.size(); ++i) {
    if (stats.d[i] > 0.0) defined.push_back(stats.t[i]);
  }
  double xbar = 0.0;
  for (double v : x) xbar += v;
  xbar /= static_cast<double>(n);
  const double dn = block_normalizer(x, 1, n);
  const double scale = dn / static_cast<double>(n);
  const double alpha = 1.0 - level;
  const double lower = xbar - quantile(defined, alpha) * scale;
  const double upper = xbar - quantile(defined, 1.0 - alpha) * scale;
  return {lower, upper};
}

// Direct convolution Z_i = sum_j a_j eps_{i-j} with the same innovation
// alignment as the library (innovations[0] = eps_{2-M}).
inline std::vector<double> convolve(const std::vector<double>& a,
                                    const std::vector<double>& eps,
                                    std::size_t n) {
  const std::size_t m = a.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += a[j] * eps[i + m - 1 - j];
    out[i] = s;
  }
  return out;
}

}  // namespace oracle
