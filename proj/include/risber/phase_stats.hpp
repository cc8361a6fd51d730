#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "risber/quadrature.hpp"
#include "risber/specfun.hpp"
#include "risber/types.hpp"

// Distributions of the per-element effective gain z = h g cos(theta_e) with
// an L-level quantized phase error, and its characteristic function.
//
// All psi-integral forms below are exact rewrites of the z-space
// definitions: integrating e^{jtz} against the psi-representation of the
// pdf termwise (the z-integral is elementary at fixed psi) gives
//
//   chf_z(t) = L/(2 - jt) - (2L/pi) * I(t),
//   I(t)     = int_0^{pi/2} sin(psi) / (2 sqrt(sin^2 psi + T^2) - jt sin psi) dpsi,
//
// with T = tan(pi/L). The integrand has a single simple pole (in the
// complexified sin psi variable) at s0 = -2jT/sqrt(4+t^2) with residue
// r = 2Tt/(4+t^2)^{3/2}; the apparent mirror pole at -s0 is removable.
// Subtracting r/(sin psi - s0) and adding back its closed-form integral
// leaves a smooth integrand, which is what makes the fixed-node Chebyshev
// rule spectrally accurate and the adaptive rule cheap at large |t|.

namespace risber {

namespace detail {

using cplx = std::complex<double>;

inline void check_levels(int L, const char* who) {
  if (L < 2 || L > 1024) throw std::domain_error(std::string(who) + ": L must be in [2, 1024]");
}

// Closed-form int_0^{pi/2} dpsi / (sin psi - s0) for s0 on the negative
// imaginary axis (the only family the pole subtraction produces), via the
// u = tan(psi/2) substitution. With p0 = 1/s0 = jv the branch points sit
// at +-j sqrt(v^2 + 1); writing w = v + sqrt(v^2 + 1) turns every log
// argument into a cancellation-free expression via (w - v)(w + v) = 1.
// The raw form needs sqrt(v^2 + 1) - v, which loses all digits once the
// gap falls below the spacing of v and finally divides by zero (t beyond
// ~1e8 in the inversion ladder).
inline cplx pole_integral(cplx s0) {
  const double v = -1.0 / s0.imag();
  const double root = std::hypot(v, 1.0);
  const double w = v + root;
  const cplx at1 = std::log((1.0 - cplx(0.0, w)) / (1.0 + cplx(0.0, 1.0 / w)));
  const cplx at0 = std::log(cplx(0.0, -w) / cplx(0.0, 1.0 / w));
  return -(v / root) * (at1 - at0);
}

// Regularized CHF integrand F(psi) for t >= 0.
inline cplx chf_integrand(double sinpsi, double T, double t) {
  const double root = std::sqrt(sinpsi * sinpsi + T * T);
  return sinpsi / cplx(2.0 * root, -t * sinpsi);
}

struct PoleData {
  cplx s0{};
  double residue = 0.0;
  cplx integral{};  // residue * int 1/(sin psi - s0)
};

inline PoleData chf_pole(double T, double t) {
  PoleData p;
  const double d = 4.0 + t * t;
  p.s0 = cplx(0.0, -2.0 * T / std::sqrt(d));
  p.residue = 2.0 * T * t / (d * std::sqrt(d));
  p.integral = (t == 0.0) ? cplx(0.0) : p.residue * pole_integral(p.s0);
  return p;
}

// chf for t >= 0, L > 2, via adaptive quadrature of the pole-subtracted
// integrand plus the analytic pole term.
inline cplx chf_z_adaptive_pos(double t, int L, Tolerance tol) {
  const double T = std::tan(M_PI / L);
  const PoleData p = chf_pole(T, t);
  auto f = [&](double psi) -> cplx {
    const double s = std::sin(psi);
    cplx v = chf_integrand(s, T, t);
    if (p.residue != 0.0) v -= p.residue / (s - p.s0);
    return v;
  };
  const auto q = integrate(f, 0.0, 0.5 * M_PI,
                           Tolerance{0.1 * tol.abs_tol, 0.1 * tol.rel_tol});
  const cplx I = q.value + p.integral;
  return cplx(static_cast<double>(L)) / cplx(2.0, -t) - (2.0 * L / M_PI) * I;
}

// Same integral by the n-node Chebyshev rule (Fejer first-rule weights on
// the nodes a_k = cos(pi(2k-1)/(2n)), mapped to psi = (pi/4)(a+1)).
inline cplx chf_z_gcq_pos(double t, int L, int n) {
  const double T = std::tan(M_PI / L);
  const PoleData p = chf_pole(T, t);
  const auto nodes = chebyshev_nodes(n);
  const auto wts = fejer1_weights(n);
  cplx acc(0.0);
  for (int k = 0; k < n; ++k) {
    const double psi = 0.25 * M_PI * (nodes[k] + 1.0);
    const double s = std::sin(psi);
    cplx v = chf_integrand(s, T, t);
    if (p.residue != 0.0) v -= p.residue / (s - p.s0);
    acc += wts[k] * v;
  }
  const cplx I = 0.25 * M_PI * acc + p.integral;
  return cplx(static_cast<double>(L)) / cplx(2.0, -t) - (2.0 * L / M_PI) * I;
}

inline cplx chf_z_two_level(double t) { return 2.0 / cplx(2.0, -t); }

/// Closed form of the same characteristic function: carrying out the psi
/// integral analytically (pole fraction in closed form, remainder reducing
/// to atanh) and simplifying, for t >= 0,
///   chf_z(t) = 4/d - (4 L T t / (pi S d)) ln((S + t)/(2 sqrt(1 + T^2)))
///              + j 2 L T t / (d S),
/// with T = tan(pi/L), d = 4 + t^2, S = sqrt(d + 4 T^2). The log form of
/// atanh(t/S) = ln((S + t)/(2 sqrt(1 + T^2))) stays accurate as t/S -> 1,
/// where atanh of the computed ratio would lose half the digits. Limits:
/// t = 0 gives 1; T -> infinity recovers 2/(2 - jt); large t gives
/// Re ~ -(4 L T/pi) ln(t)/t^2 and Im ~ 2 L T/t^2. Used as the kernel-side
/// CHF evaluator where eps-level accuracy matters; cross-validated against
/// the adaptive and fixed-node quadrature paths.
inline cplx chf_z_closed_pos(double t, int L) {
  const double T = std::tan(M_PI / L);
  const double d = 4.0 + t * t;
  const double S = std::sqrt(d + 4.0 * T * T);
  const double lg = std::log((S + t) / (2.0 * std::sqrt(1.0 + T * T)));
  const double re = 4.0 / d - (4.0 * L * T * t / (M_PI * S * d)) * lg;
  const double im = 2.0 * L * T * t / (d * S);
  return cplx(re, im);
}

inline cplx chf_z_closed(double t, int L) {
  check_levels(L, "chf_z_closed");
  if (L == 2) return chf_z_two_level(t);
  const cplx v = chf_z_closed_pos(std::fabs(t), L);
  return t < 0.0 ? std::conj(v) : v;
}

/// Integer power by binary exponentiation; exact operation count, no
/// exp/log round trip.
inline cplx cpow_int(cplx base, int n) {
  cplx r(1.0);
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace detail

/// pdf of v = cos(theta_e), theta_e uniform on [-pi/L, pi/L]:
/// L/(pi sqrt(1-v^2)) on [cos(pi/L), 1), zero outside, singular at v=1.
inline double pdf_v(double v, int L) {
  detail::check_levels(L, "pdf_v");
  if (!std::isfinite(v)) throw std::domain_error("pdf_v: non-finite argument");
  if (v == 1.0) throw std::domain_error("pdf_v: singular endpoint v = 1");
  if (v < std::cos(M_PI / L) || v > 1.0) return 0.0;
  return L / (M_PI * std::sqrt(1.0 - v * v));
}

/// pdf of the product g*v: (L/sqrt(pi)) e^{-u^2} erf(u tan(pi/L)), with the
/// erf factor saturating to 1 at L = 2.
inline double pdf_gv(double u, int L) {
  detail::check_levels(L, "pdf_gv");
  if (!(u >= 0.0)) throw std::domain_error("pdf_gv: requires u >= 0");
  if (L == 2) return (2.0 / detail::kSqrtPi) * std::exp(-u * u);
  return (L / detail::kSqrtPi) * std::exp(-u * u) * erf(u * std::tan(M_PI / L));
}

/// pdf of z = h g cos(theta_e), evaluated as
///   (2L/pi) int_0^{pi/2} (e^{-2z} - e^{-2 z beta(psi)}) dpsi,
/// beta = sqrt(sin^2 psi + T^2)/sin psi; the difference form keeps the
/// large-beta endpoint finite and the z -> 0 cancellation exact.
inline double pdf_z(double z, int L, Tolerance tol = {1e-13, 1e-11}) {
  detail::check_levels(L, "pdf_z");
  if (!(z >= 0.0)) throw std::domain_error("pdf_z: requires z >= 0");
  if (L == 2) return 2.0 * std::exp(-2.0 * z);
  if (z == 0.0) return 0.0;
  const double T = std::tan(M_PI / L);
  auto f = [&](double psi) {
    const double s = std::sin(psi);
    const double beta_m1 = T * T / (s * (std::sqrt(s * s + T * T) + s));
    return -std::expm1(-2.0 * z * beta_m1);
  };
  const auto q = integrate(f, 0.0, 0.5 * M_PI, tol);
  return (2.0 * L / M_PI) * std::exp(-2.0 * z) * q.value;
}

/// Leading small-z behavior of pdf_z for L > 2:
/// (4L/pi) tan(pi/L) z ln(1/(z tan(pi/L))).
inline double pdf_z_small(double z, int L) {
  detail::check_levels(L, "pdf_z_small");
  if (L == 2) throw std::domain_error("pdf_z_small: L = 2 has an exact exponential pdf");
  if (!(z > 0.0)) throw std::domain_error("pdf_z_small: requires z > 0");
  const double T = std::tan(M_PI / L);
  return (4.0 * L / M_PI) * T * z * std::log(1.0 / (z * T));
}

/// Characteristic function E[e^{jtz}] by adaptive quadrature.
/// Hermitian (chf_z(-t) = conj), with chf_z(0) = 1 and |chf_z| <= 1.
inline std::complex<double> chf_z(double t, int L, Tolerance tol = {}) {
  detail::check_levels(L, "chf_z");
  if (!std::isfinite(t)) throw std::domain_error("chf_z: non-finite argument");
  if (L == 2) return detail::chf_z_two_level(t);
  if (t < 0.0) return std::conj(detail::chf_z_adaptive_pos(-t, L, tol));
  return detail::chf_z_adaptive_pos(t, L, tol);
}

/// Characteristic function by the fixed n-node Chebyshev rule; matches
/// chf_z to ~1e-9 relative at n = 20 over |t| <= 100. L = 2 dispatches to
/// the exact closed form (the rule's tan(pi/L) factor degenerates there).
inline std::complex<double> chf_z_gcq(double t, int L, GcqSpec spec = {}) {
  detail::check_levels(L, "chf_z_gcq");
  if (!std::isfinite(t)) throw std::domain_error("chf_z_gcq: non-finite argument");
  if (spec.n_nodes < 1) throw std::domain_error("chf_z_gcq: n_nodes >= 1 required");
  if (L == 2) return detail::chf_z_two_level(t);
  if (t < 0.0) return std::conj(detail::chf_z_gcq_pos(-t, L, spec.n_nodes));
  return detail::chf_z_gcq_pos(t, L, spec.n_nodes);
}

/// CHF of the combined amplitude x = sum z_i: chf_z(sqrt(rho) t)^N.
inline std::complex<double> chf_x(double t, double rho, const RisConfig& config,
                                  Tolerance tol = {}) {
  config.validate();
  if (!(rho > 0.0)) throw std::domain_error("chf_x: requires rho > 0");
  return detail::cpow_int(chf_z(std::sqrt(rho) * t, config.levels, tol),
                          config.n_elements);
}

/// CHF of x with the fixed-node backend for chf_z.
inline std::complex<double> chf_x(double t, double rho, const RisConfig& config,
                                  GcqSpec spec) {
  config.validate();
  if (!(rho > 0.0)) throw std::domain_error("chf_x: requires rho > 0");
  return detail::cpow_int(chf_z_gcq(std::sqrt(rho) * t, config.levels, spec),
                          config.n_elements);
}

}  // namespace risber
