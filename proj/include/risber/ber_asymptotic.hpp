#pragma once

#include <cmath>
#include <stdexcept>

#include "risber/specfun.hpp"
#include "risber/types.hpp"

// High-SNR closed forms: power-law asymptotes of the exact error
// probability, the small-argument densities they rest on, and the induced
// diversity / coding-gain / quantization-penalty summaries.
//
// Multilevel law (L > 2): the per-element amplitude density behaves like
// (4 L T / pi) z ln(1/(T z)) near z = 0 with T = tan(pi/L); the N-fold
// convolution is (4 L T / pi)^N x^{2N-1} ln^N(1/(T x)) / Gamma(2N) up to
// slowly varying factors, and averaging the conditional error
// (1/2) erfc(sqrt(rho) x) with the moment
// int_0^inf u^{2N-1} erfc(u) du = Gamma(N + 1/2) / (2 N sqrt(pi)) gives
//
//   P_e ~ (2 L T / pi)^N ln(rho)^N Gamma(N + 1/2)
//         / (4 N sqrt(pi) Gamma(2N)) * rho^{-N}.
//
// Two-level law (L = 2): z is exactly Exp(2), so x is Gamma(N, 2) and the
// same average of the leading x^{N-1} behavior gives
//
//   P_e ~ 2^{N-1} Gamma(N/2 + 1/2) / (sqrt(pi) Gamma(N + 1)) * rho^{-N/2},
//
// half the diversity order. Everything is assembled in log space so the
// gamma factors stay finite up to N = 64.

namespace risber {

namespace detail {

inline void check_elements(int n, const char* who) {
  if (n < 1 || n > 64)
    throw std::domain_error(std::string(who) + ": n_elements must be in [1, 64]");
}

// ln of the rho-independent multilevel prefactor
// (2 L T / pi)^N Gamma(N + 1/2) / (4 N sqrt(pi) Gamma(2N)).
inline double ln_prefactor_multilevel(int n, int levels) {
  const double dn = n;
  const double T = std::tan(M_PI / levels);
  return dn * std::log(2.0 * levels * T / M_PI) + ln_gamma(dn + 0.5) -
         std::log(4.0 * dn) - 0.5 * std::log(M_PI) - ln_gamma(2.0 * dn);
}

// ln of the two-level prefactor 2^{N-1} Gamma(N/2 + 1/2) / (sqrt(pi) Gamma(N+1)).
inline double ln_prefactor_twolevel(int n) {
  const double dn = n;
  return (dn - 1.0) * std::log(2.0) + ln_gamma(0.5 * dn + 0.5) -
         0.5 * std::log(M_PI) - ln_gamma(dn + 1.0);
}

}  // namespace detail

/// Asymptotic BER for L > 2: prefactor * ln(rho)^N * rho^{-N}. Local
/// log-log slope is N (1 - 1/ln rho), approaching the full diversity order
/// N from below. Monotone decreasing for rho > e.
inline double ber_asym_multilevel(double rho, const RisConfig& config) {
  config.validate();
  if (config.levels == 2)
    throw std::domain_error(
        "ber_asym_multilevel: L = 2 follows the rho^{-N/2} law; use "
        "ber_asym_twolevel");
  if (!(rho > 1.0) || !std::isfinite(rho))
    throw std::domain_error("ber_asym_multilevel: requires finite rho > 1");
  const double dn = config.n_elements;
  const double lnp = detail::ln_prefactor_multilevel(config.n_elements, config.levels) +
                     dn * std::log(std::log(rho)) - dn * std::log(rho);
  return std::exp(lnp);
}

/// Asymptotic BER for L = 2: prefactor * rho^{-N/2}, an exact power law
/// (log10 drops by N/2 per 10 dB).
inline double ber_asym_twolevel(double rho, int n_elements) {
  detail::check_elements(n_elements, "ber_asym_twolevel");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::domain_error("ber_asym_twolevel: requires finite rho > 0");
  const double dn = n_elements;
  return std::exp(detail::ln_prefactor_twolevel(n_elements) -
                  0.5 * dn * std::log(rho));
}

/// Density of the normalized combined SNR gamma/rho = x^2 at L = 2. The
/// amplitude x is Gamma(N, 2), so the change of variables gives exactly
///   2^{N-1} gamma^{N/2-1} e^{-2 sqrt(gamma)} / Gamma(N),
/// a proper density (substituting u = sqrt(gamma) shows it integrates to 1).
inline double pdf_gamma_norm_twolevel(double gamma, int n_elements) {
  detail::check_elements(n_elements, "pdf_gamma_norm_twolevel");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("pdf_gamma_norm_twolevel: requires gamma > 0");
  const double dn = n_elements;
  return std::exp((dn - 1.0) * std::log(2.0) +
                  (0.5 * dn - 1.0) * std::log(gamma) - ln_gamma(dn) -
                  2.0 * std::sqrt(gamma));
}

/// Leading small-x density of the combined amplitude in the rho-scaled form
/// the high-SNR derivation integrates:
///   (2 L T / (rho pi))^N x^{2N-1} ln(rho x)^N / Gamma(2N).
/// Only meaningful where the log factor is positive, so the domain is
/// restricted to rho x > 1. A derivation device, not a BER path.
inline double pdf_x_small(double x, double rho, const RisConfig& config) {
  config.validate();
  if (config.levels == 2)
    throw std::domain_error(
        "pdf_x_small: L = 2 has the exact Gamma(N, 2) amplitude law");
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("pdf_x_small: requires x > 0");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::domain_error("pdf_x_small: requires finite rho > 0");
  if (!(rho * x > 1.0))
    throw std::domain_error("pdf_x_small: requires rho * x > 1");
  const double dn = config.n_elements;
  const double T = std::tan(M_PI / config.levels);
  const double lnf = dn * std::log(2.0 * config.levels * T / (rho * M_PI)) +
                     (2.0 * dn - 1.0) * std::log(x) +
                     dn * std::log(std::log(rho * x)) - ln_gamma(2.0 * dn);
  return std::exp(lnf);
}

/// High-SNR scaling summary, ber ~ (coding_gain * rho)^(-diversity_order).
/// The two-level gain is rho-independent; for L > 2 the ln(rho) factor is
/// folded into the gain, so the report is anchored at the supplied rho.
inline DiversityReport diversity_report(const RisConfig& config, double rho) {
  config.validate();
  DiversityReport rep;
  const double dn = config.n_elements;
  if (config.levels == 2) {
    rep.regime = AsymRegime::two_level;
    rep.diversity_order = 0.5 * dn;
    rep.coding_gain =
        std::exp(-(2.0 / dn) * detail::ln_prefactor_twolevel(config.n_elements));
    return rep;
  }
  if (!(rho > 1.0) || !std::isfinite(rho))
    throw std::domain_error("diversity_report: requires rho > 1 for L > 2");
  rep.regime = AsymRegime::multi_level;
  rep.diversity_order = dn;
  rep.coding_gain =
      std::exp(-detail::ln_prefactor_multilevel(config.n_elements, config.levels) / dn) /
      std::log(rho);
  return rep;
}

/// Extra SNR (dB) the L-level quantizer costs against the continuous-phase
/// asymptote. For L > 2 only the prefactor changes:
/// 10 log10(L tan(pi/L)/pi), independent of rho and N, strictly decreasing
/// in L and vanishing as L -> infinity. For L = 2 the slope itself halves,
/// so the gap grows with rho:
///   10 log10(2^{2N} Gamma(N/2 + 1/2)/sqrt(pi) * rho^{N/2} / ln(rho)^N),
/// which is exactly the ratio of the two asymptotes above in the
/// L -> infinity limit of the multilevel prefactor.
inline double quantization_penalty(double rho, int L, int n_elements) {
  if (L < 2 || L > 1024)
    throw std::domain_error("quantization_penalty: L must be in [2, 1024]");
  detail::check_elements(n_elements, "quantization_penalty");
  if (!(rho > 1.0) || !std::isfinite(rho))
    throw std::domain_error("quantization_penalty: requires finite rho > 1");
  if (L > 2) return 10.0 * std::log10(L * std::tan(M_PI / L) / M_PI);
  const double dn = n_elements;
  const double lnpen = 2.0 * dn * std::log(2.0) + ln_gamma(0.5 * dn + 0.5) -
                       0.5 * std::log(M_PI) + 0.5 * dn * std::log(rho) -
                       dn * std::log(std::log(rho));
  return 10.0 * lnpen / std::log(10.0);
}

}  // namespace risber
