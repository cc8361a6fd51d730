#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace risber {

/// System geometry: N reflecting elements, L-level phase quantizer.
struct RisConfig {
  int n_elements = 1;
  int levels = 2;

  void validate() const {
    if (n_elements < 1 || n_elements > 64)
      throw std::domain_error("RisConfig: n_elements must be in [1, 64]");
    if (levels < 2 || levels > 1024)
      throw std::domain_error("RisConfig: levels must be in [2, 1024]");
  }
};

/// Average SNR expressed both in linear and dB form. rho = 10^(rho_db/10).
struct SnrPoint {
  double rho = 1.0;
  double rho_db = 0.0;

  static SnrPoint from_db(double db) {
    if (!std::isfinite(db)) throw std::domain_error("SnrPoint: non-finite dB value");
    return SnrPoint{std::pow(10.0, db / 10.0), db};
  }
  static SnrPoint from_linear(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::domain_error("SnrPoint: rho must be finite and positive");
    return SnrPoint{r, 10.0 * std::log10(r)};
  }
};

/// Absolute/relative tolerance pair used by the adaptive integrators.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
};

/// Node count for the fixed-node characteristic-function rule.
struct GcqSpec {
  int n_nodes = 20;
};

/// Controls for the semi-infinite inversion integral. t_max = 0 selects an
/// automatic cap; max_subdivisions bounds the panel-doubling ladder.
struct QuadratureSpec {
  Tolerance tol{};
  double t_max = 0.0;
  int max_subdivisions = 40;
  GcqSpec gcq{};
};

enum class Method {
  exact_chf,
  exact_chf_gcq,
  asym,
  mc_semi,
  mc_bit,
};

inline std::string method_name(Method m) {
  switch (m) {
    case Method::exact_chf: return "exact_chf";
    case Method::exact_chf_gcq: return "exact_chf_gcq";
    case Method::asym: return "asym";
    case Method::mc_semi: return "mc_semi";
    case Method::mc_bit: return "mc_bit";
  }
  throw std::logic_error("method_name: unknown method");
}

inline Method parse_method(const std::string& s) {
  if (s == "exact_chf") return Method::exact_chf;
  if (s == "exact_chf_gcq") return Method::exact_chf_gcq;
  if (s == "asym") return Method::asym;
  if (s == "mc_semi") return Method::mc_semi;
  if (s == "mc_bit") return Method::mc_bit;
  throw std::invalid_argument("unknown method: " + s);
}

/// One BER result row. std_error is populated only by the Monte Carlo
/// methods; n_samples is 0 for analytic rows. A failed evaluation is carried
/// as ber = NaN so a sweep can report partial results.
struct BerPoint {
  double rho_db = 0.0;
  double ber = 0.0;
  std::optional<double> std_error{};
  Method method = Method::exact_chf;
  int n_elements = 1;
  int levels = 2;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// High-SNR scaling regime: the binary quantizer halves the diversity
/// order; every finer quantizer keeps full order N with a ln(rho) penalty
/// folded into the coding gain.
enum class AsymRegime { two_level, multi_level };

/// High-SNR scaling summary: ber ~ (coding_gain * rho)^(-diversity_order).
struct DiversityReport {
  double diversity_order = 0.0;
  double coding_gain = 0.0;
  AsymRegime regime = AsymRegime::two_level;
};

}  // namespace risber
