#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "snbs/math_util.hpp"

namespace snbs {

// Convolution of a causal filter with an innovation stream:
//
//   Z_i = sum_{j=0}^{M-1} a_j eps_{i-j},  i = 1..n,
//
// where innovations[0] holds the earliest needed variate eps_{2-M} and
// innovations[n+M-2] holds eps_n. In 0-based terms the outputs are the
// "valid" part of the full linear convolution: Z[i] = conv[i + M - 1].

// Direct O(n*M) evaluation.
inline std::vector<double> convolve_direct(const std::vector<double>& coeffs,
                                           const std::vector<double>& innovations,
                                           std::size_t n) {
  const std::size_t m = coeffs.size();
  if (m == 0) throw std::invalid_argument("convolve_direct: empty filter");
  if (innovations.size() < n + m - 1) {
    throw std::invalid_argument(
        "convolve_direct: need at least n + M - 1 innovations");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < m; ++j) {
      acc.add(coeffs[j] * innovations[i + m - 1 - j]);
    }
    out[i] = acc.value();
  }
  return out;
}

// FFT path with the filter spectrum cached, for repeated application to
// fresh innovation streams of the same length. The transform size is the
// next power of two >= n + M - 1; outputs at positions >= M - 1 of the
// circular convolution are free of wrap-around, which is exactly the
// range taken.
class LinearFilter {
 public:
  LinearFilter(std::vector<double> coeffs, std::size_t n)
      : coeffs_(std::move(coeffs)), n_(n) {
    if (coeffs_.empty()) {
      throw std::invalid_argument("LinearFilter: empty filter");
    }
    if (n_ == 0) throw std::invalid_argument("LinearFilter: n must be >= 1");
    fft_size_ = next_pow2(n_ + coeffs_.size() - 1);
    std::vector<std::complex<double>> time(fft_size_);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) time[j] = coeffs_[j];
    fft_.fwd(spectrum_, time);
  }

  std::size_t order() const { return coeffs_.size(); }
  std::size_t output_length() const { return n_; }
  std::size_t input_length() const { return n_ + coeffs_.size() - 1; }
  std::size_t fft_size() const { return fft_size_; }

  std::vector<double> apply(const std::vector<double>& innovations) {
    const std::size_t m = coeffs_.size();
    if (innovations.size() < input_length()) {
      throw std::invalid_argument(
          "LinearFilter::apply: need at least n + M - 1 innovations");
    }
    std::vector<std::complex<double>> time(fft_size_);
    for (std::size_t i = 0; i < input_length(); ++i) time[i] = innovations[i];
    std::vector<std::complex<double>> freq;
    fft_.fwd(freq, time);
    for (std::size_t i = 0; i < fft_size_; ++i) freq[i] *= spectrum_[i];
    std::vector<std::complex<double>> conv;
    fft_.inv(conv, freq);
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = conv[i + m - 1].real();
    return out;
  }

 private:
  std::vector<double> coeffs_;
  std::size_t n_;
  std::size_t fft_size_;
  std::vector<std::complex<double>> spectrum_;
  Eigen::FFT<double> fft_;
};

}  // namespace snbs
