#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "snbs/errors.hpp"
#include "snbs/math_util.hpp"

namespace snbs {

// An observed series X_1..X_n. Entries must be finite and n >= 2.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
      throw std::invalid_argument("TimeSeries: need at least 2 observations");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw std::invalid_argument("TimeSeries: non-finite value at index " +
                                    std::to_string(i + 1));
      }
    }
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  // 1-based access, matching the index convention used throughout.
  double at1(std::size_t i) const { return values_[i - 1]; }

 private:
  std::vector<double> values_;
};

// Cumulative scans of a series. All indices are 1-based with a zero
// sentinel at position 0, so the segment sum S_{j,k} = sum_{i=j}^{k} X_i
// is p[k] - p[j-1].
//
//   p[k] = X_1 + ... + X_k
//   q[k] = pc[1] + ... + pc[k]
//   r[k] = pc[1]^2 + ... + pc[k]^2
//   s[k] = 1*pc[1] + ... + k*pc[k]
//
// q, r, s feed the O(1) sliding-window block normalizer. They scan the
// anchored partial sums pc[k] = sum (X_i - anchor) with the anchor at the
// sample mean: the normalizer is exactly shift invariant, and anchoring
// keeps the expanded square free of the k*mean drift that would otherwise
// cancel catastrophically in long series. The scans are held as hi/lo
// pairs so window differences stay accurate relative to the window.
struct PrefixSums {
  std::vector<double> p, pc;
  CompensatedScan q, r, s;
  double anchor = 0.0;

  std::size_t n() const { return p.size() - 1; }
  // S_{j,k}, 1 <= j <= k <= n.
  double segment_sum(std::size_t j, std::size_t k) const {
    return p[k] - p[j - 1];
  }
  double mean() const { return p.back() / static_cast<double>(n()); }
};

inline PrefixSums prefix_sums(const TimeSeries& series) {
  const std::size_t n = series.size();
  PrefixSums ps;
  ps.p.resize(n + 1);
  ps.pc.resize(n + 1);
  ps.q.reserve(n + 1);
  ps.r.reserve(n + 1);
  ps.s.reserve(n + 1);
  ps.p[0] = ps.pc[0] = 0.0;
  CompensatedSum ap;
  for (std::size_t k = 1; k <= n; ++k) {
    ap.add(series.at1(k));
    ps.p[k] = ap.value();
  }
  ps.anchor = ps.p[n] / static_cast<double>(n);
  CompensatedSum ac, aq, ar, as;
  ps.q.push(aq);
  ps.r.push(ar);
  ps.s.push(as);
  for (std::size_t k = 1; k <= n; ++k) {
    ac.add(series.at1(k) - ps.anchor);
    const double pk = ac.value();
    ps.pc[k] = pk;
    aq.add(pk);
    ps.q.push(aq);
    ar.add(pk * pk);
    ps.r.push(ar);
    as.add(static_cast<double>(k) * pk);
    ps.s.push(as);
  }
  return ps;
}

namespace detail {

// A computed D^2 is declared zero when it is indistinguishable from the
// rounding floor of the terms that produced it.
constexpr double kDegenerateRelTol = 1e-13;

// Below this ratio of D^2 to the expanded terms' magnitude, the O(1)
// expansion has lost too many digits and the O(b) path takes over. The
// direct path subtracts the window offset before squaring, so it keeps
// ~1e-13 relative accuracy where the expansion is down to ~1e-10.
constexpr double kIllConditionedRelTol = 1e-3;

inline double settle_normalizer(double d2, double scale2) {
  if (!(d2 > kDegenerateRelTol * scale2)) return 0.0;
  return std::sqrt(d2);
}

}  // namespace detail

// Block normalizer D_{i,b} for the block X_i..X_{i+b-1} (i is 1-based):
//
//   D_{i,b}^2 = b^{-1} sum_{k=i}^{i+b-1} ( S_{i,k} - (k-i+1)/b * S_{i,i+b-1} )^2
//
// Direct O(b) evaluation. Returns 0 for a degenerate (constant) block.
inline double block_normalizer_direct(const PrefixSums& ps, std::size_t i,
                                      std::size_t b) {
  if (i < 1 || b < 2 || i + b - 1 > ps.n()) {
    throw std::out_of_range("block_normalizer: block [" + std::to_string(i) +
                            ", " + std::to_string(i + b - 1) +
                            "] outside series of length " +
                            std::to_string(ps.n()));
  }
  const std::size_t e = i + b - 1;
  // Work on the anchored partial sums: S_{i,k} - w S_{i,e} is invariant
  // under a constant shift of the series.
  const double a = ps.pc[i - 1];
  const double total = ps.pc[e] - a;
  CompensatedSum acc;
  double max_mag = 0.0;
  for (std::size_t k = i; k <= e; ++k) {
    const double w = static_cast<double>(k - i + 1) / static_cast<double>(b);
    const double seg = ps.pc[k] - a;
    const double resid = seg - w * total;
    acc.add(resid * resid);
    max_mag = std::max(max_mag, std::max(std::abs(seg), std::abs(w * total)));
  }
  const double d2 = acc.value() / static_cast<double>(b);
  return detail::settle_normalizer(d2, max_mag * max_mag);
}

// Same quantity in O(1) from the q, r, s scans. Expanding the square with
// A = p[i-1], B = S_{i,i+b-1} and w_k = (k-i+1)/b gives
//
//   b * D^2 = sum p_k^2 - 2A sum p_k - 2B sum w_k p_k
//             + b A^2 + 2AB sum w_k + B^2 sum w_k^2,
//
// where sum w_k = (b+1)/2 and sum w_k^2 = (b+1)(2b+1)/(6b).
inline double block_normalizer_sliding(const PrefixSums& ps, std::size_t i,
                                       std::size_t b) {
  if (i < 1 || b < 2 || i + b - 1 > ps.n()) {
    throw std::out_of_range("block_normalizer: block [" + std::to_string(i) +
                            ", " + std::to_string(i + b - 1) +
                            "] outside series of length " +
                            std::to_string(ps.n()));
  }
  const std::size_t e = i + b - 1;
  const double bd = static_cast<double>(b);
  const double a = ps.pc[i - 1];
  const double total = ps.pc[e] - a;

  const double sum_p = ps.q.diff(e, i - 1);
  const double sum_pp = ps.r.diff(e, i - 1);
  const double sum_kp = ps.s.diff(e, i - 1);
  const double sum_wp = (sum_kp - static_cast<double>(i - 1) * sum_p) / bd;
  const double sum_w = 0.5 * (bd + 1.0);
  const double sum_w2 = (bd + 1.0) * (2.0 * bd + 1.0) / (6.0 * bd);

  const double t1 = sum_pp;
  const double t2 = -2.0 * a * sum_p;
  const double t3 = -2.0 * total * sum_wp;
  const double t4 = bd * a * a;
  const double t5 = 2.0 * a * total * sum_w;
  const double t6 = total * total * sum_w2;
  const double d2 = (t1 + t2 + t3 + t4 + t5 + t6) / bd;
  const double scale2 =
      std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4),
                std::abs(t5), std::abs(t6)}) /
      bd;
  if (d2 > detail::kDegenerateRelTol * scale2 &&
      d2 < detail::kIllConditionedRelTol * scale2) {
    // A prefix far larger than the block's own scale (heavy-tailed
    // data) has eaten the expansion's precision; re-evaluate locally.
    return block_normalizer_direct(ps, i, b);
  }
  return detail::settle_normalizer(d2, scale2);
}

inline double block_normalizer(const PrefixSums& ps, std::size_t i,
                               std::size_t b) {
  return block_normalizer_sliding(ps, i, b);
}

// Full-sample self-normalized statistic T_n = (S_{1,n} - n*mu) / D_n.
// The numerator is assembled from the anchored sums: S_{1,n} - n*mu =
// pc[n] - n*(mu - anchor) exactly, which avoids the n*mu cancellation.
inline double full_statistic(const TimeSeries& series, double mu) {
  const PrefixSums ps = prefix_sums(series);
  const std::size_t n = series.size();
  const double dn = block_normalizer_sliding(ps, 1, n);
  if (dn == 0.0) {
    throw DegenerateNormalizer(
        "full_statistic: D_n = 0 (constant series has no scale)");
  }
  return (ps.pc[n] - static_cast<double>(n) * (mu - ps.anchor)) / dn;
}

}  // namespace snbs
