#pragma once

#include <limits>
#include <stdexcept>

#include "snbs/block_stats.hpp"
#include "snbs/ecdf.hpp"
#include "snbs/series.hpp"

namespace snbs {

enum class IntervalSide { LowerOneSided, UpperOneSided, TwoSided };

struct ConfidenceInterval {
  IntervalSide side = IntervalSide::LowerOneSided;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double level = 0.0;
  // Quantiles of the block-statistic ECDF that produced the endpoints.
  // One-sided intervals use a single quantile (q_lo == q_hi).
  double q_lo = 0.0;
  double q_hi = 0.0;
};

// Confidence interval for the mean from the sample-centered block ECDF.
// With alpha = 1 - level and q_p the ECDF quantile:
//   lower one-sided: (-inf, Xbar - q_alpha     * D_n / n]
//   upper one-sided: [Xbar - q_{1-alpha} * D_n / n, +inf)
//   two-sided combines both one-sided bounds at alpha/2 each.
inline ConfidenceInterval confidence_interval(const TimeSeries& series,
                                              std::size_t b, double level,
                                              IntervalSide side) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence_interval: level must lie in (0,1)");
  }
  const std::size_t n = series.size();
  const BlockStatistics stats =
      block_statistics(series, b, Centering::sample_mean());
  std::vector<double> values = stats.defined();
  if (values.empty()) {
    throw AllBlocksDegenerate(
        "confidence_interval: every block normalizer is zero");
  }
  const EmpiricalCdf cdf(std::move(values));

  const PrefixSums ps = prefix_sums(series);
  const double dn = block_normalizer_sliding(ps, 1, n);
  if (dn == 0.0) {
    throw DegenerateNormalizer("confidence_interval: D_n = 0");
  }
  const double xbar = ps.mean();
  const double scale = dn / static_cast<double>(n);
  const double alpha = 1.0 - level;

  ConfidenceInterval ci;
  ci.side = side;
  ci.level = level;
  switch (side) {
    case IntervalSide::LowerOneSided: {
      const double q = cdf.quantile(alpha);
      ci.q_lo = ci.q_hi = q;
      ci.hi = xbar - q * scale;
      break;
    }
    case IntervalSide::UpperOneSided: {
      const double q = cdf.quantile(1.0 - alpha);
      ci.q_lo = ci.q_hi = q;
      ci.lo = xbar - q * scale;
      break;
    }
    case IntervalSide::TwoSided: {
      const double q_low = cdf.quantile(0.5 * alpha);
      const double q_high = cdf.quantile(1.0 - 0.5 * alpha);
      ci.q_lo = q_low;
      ci.q_hi = q_high;
      ci.lo = xbar - q_high * scale;
      ci.hi = xbar - q_low * scale;
      break;
    }
  }
  return ci;
}

}  // namespace snbs
