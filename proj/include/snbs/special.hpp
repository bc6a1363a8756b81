#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace snbs {

// Standard normal CDF.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// Standard normal quantile, Wichura's algorithm AS 241 (PPND16).
// Relative accuracy about 1e-15 over (0,1).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0,1)");
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) *
                    r +
                2.41780725177450611770e-1) *
                   r +
               1.27045825245236838258e0) *
                  r +
              3.64784832476320460504e0) *
                 r +
             5.76949722146069140550e0) *
                r +
            4.63033784615654529590e0) *
               r +
           1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) *
                    r +
                1.51986665636164571966e-2) *
                   r +
               1.48103976427480074590e-1) *
                  r +
              6.89767334985100004550e-1) *
                 r +
             1.67638483018380384940e0) *
                r +
            2.05319162663775882187e0) *
               r +
           1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) *
                    r +
                1.24266094738807843860e-3) *
                   r +
               2.65321895265761230930e-2) *
                  r +
              2.96560571828504891230e-1) *
                 r +
             1.78482653991729133580e0) *
                r +
            5.46378491116411436990e0) *
               r +
           6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                    r +
                1.84631831751005468180e-5) *
                   r +
               7.86869131145613259100e-4) *
                  r +
              1.48753612908506148525e-2) *
                 r +
             1.36929880922735805310e-1) *
                r +
            5.99832206555887937690e-1) *
               r +
           1.0);
  }
  return (q < 0.0) ? -val : val;
}

namespace detail {

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cont_frac(double a, double b, double x) {
  constexpr double kEps = 1e-14;
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::domain_error("incomplete_beta: a, b must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_cont_frac(b, a, 1.0 - x) / b;
}

// CDF of Student's t with df degrees of freedom (df need not be integer).
inline double student_t_cdf(double x, double df) {
  if (!(df > 0.0)) throw std::domain_error("student_t_cdf: df must be > 0");
  if (x == 0.0) return 0.5;
  const double z = df / (df + x * x);
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, z);
  return x > 0.0 ? 1.0 - tail : tail;
}

inline double student_t_pdf(double x, double df) {
  const double lg = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                    0.5 * std::log(df * M_PI);
  return std::exp(lg - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

// Quantile of Student's t: bracketed bisection on the CDF, then Newton
// polish using the density. Accurate to ~1e-12 in the CDF argument.
inline double student_t_quantile(double p, double df) {
  if (!(df > 0.0)) {
    throw std::domain_error("student_t_quantile: df must be > 0");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("student_t_quantile: p must lie in (0,1)");
  }
  if (p == 0.5) return 0.0;

  // Solve on the upper half for pu >= 0.5 and restore the sign at the end.
  const bool negate = p < 0.5;
  const double pu = negate ? 1.0 - p : p;

  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, df) < pu && hi < 1e300) {
    lo = hi;
    hi *= 2.0;
  }
  // Guarded Newton: keep cdf(lo) < pu <= cdf(hi); bisect whenever the
  // Newton step leaves the bracket.
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double f = student_t_cdf(x, df) - pu;
    if (f >= 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double fp = student_t_pdf(x, df);
    double xn = fp > 0.0 ? x - f / fp : x;
    if (!(xn > lo && xn < hi)) {
      xn = 0.5 * (lo + hi);
    }
    if (std::abs(xn - x) <= 1e-14 * (1.0 + std::abs(xn))) {
      x = xn;
      break;
    }
    x = xn;
  }
  return negate ? -x : x;
}

}  // namespace snbs
