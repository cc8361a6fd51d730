#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

// Special functions implemented from series/continued-fraction/recurrence
// primitives only; no dependence on platform libm beyond exp/log/sqrt.
// Target accuracy is ~1e-14 relative over the stated domains.

namespace risber {

namespace detail {

inline void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kInvSqrtPi = 0.5641895835477562869;

// erf on |x| < 2 via the confluent-series form
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_{k>=0} x^{2k+1} 2^k / (2k+1)!!,
// whose terms are all positive, avoiding the cancellation of the
// alternating Maclaurin series.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = x;  // k = 0 term before the e^{-x^2} factor
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= 2.0 * x2 / (2.0 * k + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 * kInvSqrtPi * std::exp(-x2) * sum;
}

// erfc on x >= 2 via the Legendre continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm.
inline double erfc_cf(double x) {
  const double tiny = 1e-300;
  // b_0 = x, a_n = n/2 for n >= 1.
  double f = x, c = x, d = 0.0;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    const double b = x;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  // f now approximates the continued fraction x + 1/2/(x + ...) as a whole,
  // i.e. the reciprocal of the bracketed factor.
  return std::exp(-x * x) * kInvSqrtPi / f;
}

// Dawson integral by three branches.
inline double dawson_series(double x) {
  // D(x) = sum_{k>=0} (-2x^2)^k x / (1*3*...*(2k+1)); |x| <= 1 keeps the
  // alternating terms decaying fast enough for full precision.
  const double x2 = x * x;
  double term = x;
  double sum = term;
  for (int k = 0; k < 60; ++k) {
    term *= -2.0 * x2 / (2.0 * k + 3.0);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum;
}

inline double dawson_sampling(double x) {
  // Rybicki's exponentially convergent sampling expansion
  //   D(x) ~ (1/sqrt(pi)) sum_{n odd} e^{-(x - n h)^2} / n
  // with step h and a window of +-w around x. h = 0.2, w = 6.5 gives
  // ~1e-15 truncation over the midrange.
  const double h = 0.2, w = 6.5;
  int n_lo = static_cast<int>(std::ceil((x - w) / h));
  if (n_lo % 2 == 0) ++n_lo;
  const int n_hi = static_cast<int>(std::floor((x + w) / h));
  double sum = 0.0;
  for (int n = n_lo; n <= n_hi; n += 2) {
    const double d = x - n * h;
    sum += std::exp(-d * d) / n;
  }
  return kInvSqrtPi * sum;
}

inline double dawson_asymptotic(double x) {
  // D(x) ~ (1/2x) sum_k (2k-1)!! / (2x^2)^k; truncate at the smallest term.
  const double ix2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = term;
  for (int k = 1; k < 20; ++k) {
    const double next = term * (2.0 * k - 1.0) * ix2;
    if (next >= term) break;  // divergent tail reached
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum / (2.0 * x);
}

}  // namespace detail

/// Error function; series for |x| < 2, continued fraction beyond.
inline double erf(double x) {
  detail::require_finite(x, "erf");
  const double ax = std::fabs(x);
  double r;
  if (ax < 2.0) {
    r = detail::erf_series(ax);
  } else {
    r = 1.0 - detail::erfc_cf(ax);
  }
  return x < 0.0 ? -r : r;
}

/// Complementary error function, accurate in relative terms for large x
/// (no 1 - erf cancellation beyond x = 2).
inline double erfc(double x) {
  detail::require_finite(x, "erfc");
  if (x >= 2.0) return detail::erfc_cf(x);
  if (x <= -2.0) return 2.0 - detail::erfc_cf(-x);
  return 1.0 - detail::erf_series(std::fabs(x)) * (x < 0.0 ? -1.0 : 1.0);
}

/// Dawson integral D(x) = e^{-x^2} int_0^x e^{t^2} dt.
inline double dawson(double x) {
  detail::require_finite(x, "dawson");
  const double ax = std::fabs(x);
  double r;
  if (ax <= 1.0) {
    r = detail::dawson_series(ax);
  } else if (ax <= 40.0) {
    r = detail::dawson_sampling(ax);
  } else {
    r = detail::dawson_asymptotic(ax);
  }
  return x < 0.0 ? -r : r;
}

/// Log-gamma for x > 0 via a Lanczos approximation (g = 7, 9 terms),
/// with the reflection formula covering 0 < x < 0.5.
inline double ln_gamma(double x) {
  detail::require_finite(x, "ln_gamma");
  if (x <= 0.0) throw std::domain_error("ln_gamma: requires x > 0");
  static const double kCoef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // ln Gamma(x) = ln(pi / sin(pi x)) - ln Gamma(1 - x)
    return std::log(M_PI / std::sin(M_PI * x)) - ln_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = kCoef[0];
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace risber
