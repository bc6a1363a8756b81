#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "snbs/errors.hpp"
#include "snbs/generators.hpp"
#include "snbs/math_util.hpp"

namespace snbs {

// Autocovariances gamma(0..maxlag) of the underlying Gaussian process.
class AutocovarianceSequence {
 public:
  explicit AutocovarianceSequence(std::vector<double> gamma)
      : gamma_(std::move(gamma)) {
    if (gamma_.empty() || !(gamma_[0] > 0.0)) {
      throw std::invalid_argument(
          "AutocovarianceSequence: gamma(0) must be positive");
    }
    for (double g : gamma_) {
      if (!std::isfinite(g) || std::abs(g) > gamma_[0] * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "AutocovarianceSequence: |gamma(h)| <= gamma(0) violated");
      }
    }
  }

  std::size_t maxlag() const { return gamma_.size() - 1; }
  double operator[](std::size_t h) const { return gamma_[h]; }
  const std::vector<double>& values() const { return gamma_; }

 private:
  std::vector<double> gamma_;
};

// gamma(h) = sum_j a_j a_{j+h} for the truncated moving average; exactly
// zero for lags at or beyond the number of coefficients.
inline AutocovarianceSequence acf_from_coefficients(
    const CoefficientVector& coeffs, std::size_t maxlag) {
  const std::size_t m = coeffs.a.size();
  std::vector<double> gamma(maxlag + 1, 0.0);
  for (std::size_t h = 0; h <= maxlag && h < m; ++h) {
    CompensatedSum acc;
    for (std::size_t j = 0; j + h < m; ++j) acc.add(coeffs.a[j] * coeffs.a[j + h]);
    gamma[h] = acc.value();
  }
  return AutocovarianceSequence(std::move(gamma));
}

namespace detail {

// M_gamma(k) = sup_{h > k} |gamma(h)|, precomputed as a suffix maximum.
// Beyond the recorded lags the sup is extrapolated with a power-law
// envelope C h^{-beta} fitted by least squares on the last decade of
// lags; queries that needed it are flagged.
class MGammaTable {
 public:
  explicit MGammaTable(const AutocovarianceSequence& gamma) {
    const std::size_t L = gamma.maxlag();
    suffix_max_.assign(L + 2, 0.0);
    for (std::size_t h = L + 1; h-- > 1;) {
      suffix_max_[h] = std::max(std::abs(gamma[h]), suffix_max_[h + 1]);
    }
    fit_envelope(gamma);
  }

  struct Value {
    double value = 0.0;
    bool extrapolated = false;
  };

  Value at(std::size_t k) const {
    const std::size_t first = k + 1;  // smallest lag in the sup
    if (first < suffix_max_.size() - 1) {
      return {suffix_max_[first], false};
    }
    // The true M_gamma is non-increasing; keep the extrapolation below
    // the last observed suffix maximum so that stays true.
    const double cap = suffix_max_[suffix_max_.size() - 2];
    return {std::min(envelope(static_cast<double>(first)), cap), true};
  }

 private:
  void fit_envelope(const AutocovarianceSequence& gamma) {
    const std::size_t L = gamma.maxlag();
    const std::size_t lo = std::max<std::size_t>(1, L / 10);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t h = lo; h <= L; ++h) {
      const double g = std::abs(gamma[h]);
      if (g <= 0.0) continue;
      const double x = std::log(static_cast<double>(h));
      const double y = std::log(g);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    if (cnt < 2) {
      env_log_c_ = -std::numeric_limits<double>::infinity();
      env_beta_ = 0.0;
      return;
    }
    const double denom = cnt * sxx - sx * sx;
    if (denom <= 0.0) {
      // All points at one lag; fall back to a flat envelope.
      env_beta_ = 0.0;
      env_log_c_ = sy / cnt;
      return;
    }
    const double slope = (cnt * sxy - sx * sy) / denom;
    env_beta_ = std::max(-slope, 0.0);
    env_log_c_ = (sy + env_beta_ * sx) / cnt;
  }

  double envelope(double h) const {
    if (env_log_c_ == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(env_log_c_ - env_beta_ * std::log(h));
  }

  std::vector<double> suffix_max_;
  double env_log_c_ = 0.0;
  double env_beta_ = 0.0;
};

}  // namespace detail

inline double m_gamma(const AutocovarianceSequence& gamma, std::size_t k) {
  return detail::MGammaTable(gamma).at(k).value;
}

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (diag a, subdiag b)
// strictly below sigma, via the Sturm pivot recurrence.
inline int sturm_count_below(const Eigen::VectorXd& a,
                             const Eigen::VectorXd& b, double sigma) {
  const auto m = a.size();
  int count = 0;
  double d = a[0] - sigma;
  if (d < 0.0) ++count;
  for (Eigen::Index i = 1; i < m; ++i) {
    double denom = d;
    if (denom == 0.0) denom = -std::numeric_limits<double>::min();
    d = (a[i] - sigma) - b[i - 1] * b[i - 1] / denom;
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace detail

// Smallest eigenvalue of the m x m Toeplitz matrix Sigma_m built from the
// ACF, to 1e-8 relative or better. Full symmetric solve up to m = 512;
// above that, Householder tridiagonalization followed by Sturm-count
// bisection, which brackets the bottom eigenvalue even when the low end
// of the spectrum is clustered.
inline double min_eigenvalue(const AutocovarianceSequence& gamma,
                             std::size_t m) {
  if (m < 1) throw std::invalid_argument("min_eigenvalue: need m >= 1");
  if (gamma.maxlag() + 1 < m) {
    throw std::invalid_argument(
        "min_eigenvalue: ACF too short for an m x m Toeplitz matrix");
  }
  Eigen::MatrixXd sigma(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      sigma(i, j) = gamma[i > j ? i - j : j - i];
    }
  }

  double lam;
  if (m <= 512) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sigma, Eigen::EigenvaluesOnly);
    lam = solver.eigenvalues().minCoeff();
  } else {
    const Eigen::Tridiagonalization<Eigen::MatrixXd> tri(sigma);
    const Eigen::VectorXd a = tri.diagonal();
    const Eigen::VectorXd b = tri.subDiagonal();
    // Gershgorin lower bound and the variational upper bound min_i a_i.
    double lo = a[0] - std::abs(b[0]);
    double hi = a[0];
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      double radius = 0.0;
      if (i > 0) radius += std::abs(b[i - 1]);
      if (i + 1 < a.size()) radius += std::abs(b[i]);
      lo = std::min(lo, a[i] - radius);
      hi = std::min(hi, a[i]);
    }
    hi += 1e-12 * (std::abs(hi) + gamma[0]);
    while (detail::sturm_count_below(a, b, hi) < 1) {
      hi += std::max(1e-9 * gamma[0], std::abs(hi) * 1e-9);
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-10 * std::max(
                                                      {std::abs(lo),
                                                       std::abs(hi), 1e-30});
         ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (detail::sturm_count_below(a, b, mid) < 1) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    lam = 0.5 * (lo + hi);
  }
  if (!(lam > 1e-12 * gamma[0])) {
    throw NonPositiveDefinite(
        "min_eigenvalue: smallest eigenvalue is not positive within "
        "tolerance; the truncated ACF is inconsistent");
  }
  return lam;
}

// The scalar (J = 1) canonical-correlation bound between two blocks of
// span m separated by lag k: rho_{k,m} <= min{ m M_gamma(k-m) / lambda_m, 1 }.
// The bound only says something when k >= m; for overlapping separations
// it is capped at the trivial 1.
struct CanonicalBoundReport {
  std::size_t k = 0;
  std::size_t m = 0;
  double m_gamma = std::numeric_limits<double>::quiet_NaN();
  double lambda_m = 0.0;
  double bound = 1.0;
  bool lemma_applies = false;
  bool extrapolated = false;
};

inline CanonicalBoundReport rho_bound(const AutocovarianceSequence& gamma,
                                      std::size_t k, std::size_t m) {
  CanonicalBoundReport rep;
  rep.k = k;
  rep.m = m;
  rep.lambda_m = min_eigenvalue(gamma, m);
  if (k < m) {
    rep.bound = 1.0;
    return rep;
  }
  const auto mg = detail::MGammaTable(gamma).at(k - m);
  rep.lemma_applies = true;
  rep.m_gamma = mg.value;
  rep.extrapolated = mg.extrapolated;
  rep.bound =
      std::min(static_cast<double>(m) * mg.value / rep.lambda_m, 1.0);
  return rep;
}

// Finite-sample version of the block-size condition: the averaged sum of
// canonical-correlation bounds over lags 0..n, with the first b+l+1 terms
// (overlapping or adjacent blocks) capped at 1 and the remainder bounded
// through the lemma. Small values mean the o(n) condition is plausible at
// this scale.
inline double a3_diagnostic(const AutocovarianceSequence& gamma,
                            std::size_t n, std::size_t b, std::size_t l = 0) {
  if (b < 2) throw std::invalid_argument("a3_diagnostic: need b >= 2");
  if (b + l > n) throw std::invalid_argument("a3_diagnostic: need b + l <= n");
  const double lam = min_eigenvalue(gamma, b + l);
  const detail::MGammaTable table(gamma);
  CompensatedSum sum;
  sum.add(static_cast<double>(b + l + 1));
  const double bd = static_cast<double>(b);
  for (std::size_t k = b + l + 1; k <= n; ++k) {
    const double mg = table.at(k - (b + l) - 1).value;
    sum.add(std::min(bd * mg / lam, 1.0));
  }
  return sum.value() / static_cast<double>(n);
}

// Dependence regimes with their admissible block-size exponents.
struct SrdSummable {};
struct LrdPower {
  double hurst = 0.75;
};
struct AntiPersistent {};
struct ZeroSpectrum {
  double beta = 1.0;
  double nu = 1.0;
};
using BlockRegime =
    std::variant<SrdSummable, LrdPower, AntiPersistent, ZeroSpectrum>;

// Recommended block size floor(c * n^e), never below 2. Exponents follow
// the admissible rates per regime, with 0.05 shaved off theoretical
// little-o exponents as a finite-n safety margin.
inline std::size_t recommend_block(const BlockRegime& regime, std::size_t n,
                                   double c) {
  if (!(c > 0.0)) throw std::invalid_argument("recommend_block: need c > 0");
  if (n < 2) throw std::invalid_argument("recommend_block: need n >= 2");
  double e;
  if (std::holds_alternative<SrdSummable>(regime)) {
    e = 0.5;
  } else if (const auto* lrd = std::get_if<LrdPower>(&regime)) {
    if (!(lrd->hurst > 0.5 && lrd->hurst < 1.0)) {
      throw std::invalid_argument("recommend_block: need H in (1/2,1)");
    }
    e = std::min(0.5, 2.0 - 2.0 * lrd->hurst - 0.05);
  } else if (std::holds_alternative<AntiPersistent>(regime)) {
    e = 0.95;
  } else {
    const auto& z = std::get<ZeroSpectrum>(regime);
    if (!(z.beta > 0.0) || !(z.nu >= 0.0)) {
      throw std::invalid_argument(
          "recommend_block: need beta > 0 and nu >= 0");
    }
    e = std::min(0.5, z.beta / (1.0 + z.nu) - 0.05);
  }
  const std::size_t b =
      floor_index(c * std::pow(static_cast<double>(n), e));
  return std::max<std::size_t>(2, b);
}

}  // namespace snbs
