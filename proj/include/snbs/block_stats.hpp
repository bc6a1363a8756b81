#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "snbs/series.hpp"

namespace snbs {

// Centering used inside block statistics: either a known population mean,
// or the full-sample average (blocks are centered by b * Xbar_n of the
// whole sample, not by per-block means).
struct Centering {
  enum class Kind { Population, SampleMean };
  Kind kind = Kind::SampleMean;
  double mu = 0.0;

  static Centering population(double mu) {
    return Centering{Kind::Population, mu};
  }
  static Centering sample_mean() { return Centering{Kind::SampleMean, 0.0}; }
};

// All overlapping block statistics of one series at block size b:
// t[i] = (S_{i,i+b-1} - b*c) / D_{i,b} for i = 1..n-b+1 (stored 0-based).
// Blocks whose normalizer is zero carry no information; their t is NaN
// and they are counted in degenerate_count.
struct BlockStatistics {
  std::vector<double> t;
  std::vector<double> d;
  std::size_t b = 0;
  Centering centering;
  std::size_t degenerate_count = 0;

  std::size_t count() const { return t.size(); }

  // The defined statistics, in block order; feed these to the ECDF.
  std::vector<double> defined() const {
    std::vector<double> out;
    out.reserve(t.size() - degenerate_count);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (d[i] > 0.0) out.push_back(t[i]);
    }
    return out;
  }
};

inline BlockStatistics block_statistics(const TimeSeries& series,
                                        std::size_t b,
                                        const Centering& centering) {
  const std::size_t n = series.size();
  if (b < 2 || b > n) {
    throw std::invalid_argument("block_statistics: need 2 <= b <= n");
  }
  const PrefixSums ps = prefix_sums(series);
  const double c = centering.kind == Centering::Kind::Population
                       ? centering.mu
                       : ps.mean();
  const std::size_t m = n - b + 1;
  BlockStatistics out;
  out.t.resize(m);
  out.d.resize(m);
  out.b = b;
  out.centering = centering;
  // S_{i,i+b-1} - b*c == (pc[i+b-1] - pc[i-1]) - b*(c - anchor); with
  // sample-mean centering the correction term is exactly zero.
  const double correction = static_cast<double>(b) * (c - ps.anchor);
  for (std::size_t i = 1; i <= m; ++i) {
    const double di = block_normalizer_sliding(ps, i, b);
    out.d[i - 1] = di;
    if (di > 0.0) {
      out.t[i - 1] = (ps.pc[i + b - 1] - ps.pc[i - 1] - correction) / di;
    } else {
      out.t[i - 1] = std::numeric_limits<double>::quiet_NaN();
      ++out.degenerate_count;
    }
  }
  return out;
}

}  // namespace snbs
