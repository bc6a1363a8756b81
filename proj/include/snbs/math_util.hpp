#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace snbs {

// Neumaier-compensated accumulator. Partial-sum scans feed sliding-window
// formulas that subtract large near-equal quantities, so the scans
// themselves are kept to ~1 ulp.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }
  double hi() const { return sum_; }
  double lo() const { return comp_; }
  void reset() { sum_ = comp_ = 0.0; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// A cumulative scan stored as (hi, lo) pairs. Differences of entries are
// taken with an exact two-sum, so their error is relative to the
// difference itself rather than to the prefix magnitude, which grows
// like n^2 for the k-weighted scan.
class CompensatedScan {
 public:
  void reserve(std::size_t n) {
    hi_.reserve(n);
    lo_.reserve(n);
  }
  void push(const CompensatedSum& acc) {
    hi_.push_back(acc.hi());
    lo_.push_back(acc.lo());
  }
  std::size_t size() const { return hi_.size(); }
  double value(std::size_t k) const { return hi_[k] + lo_[k]; }

  // value(a) - value(b), accurate to ~1 ulp of the result.
  double diff(std::size_t a, std::size_t b) const {
    const double s = hi_[a] - hi_[b];
    const double bv = s - hi_[a];
    const double err = (hi_[a] - (s - bv)) + ((-hi_[b]) - bv);
    return s + (err + (lo_[a] - lo_[b]));
  }

 private:
  std::vector<double> hi_, lo_;
};

// floor(x) guarded against values like 999.9999999999999 that are an
// exact integer in real arithmetic. Used for index formulas such as
// floor(c * n^0.5) and floor(n^1.5).
inline std::size_t floor_index(double x) {
  if (x < 0.0) return 0;
  return static_cast<std::size_t>(std::floor(x + 1e-9));
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace snbs
