#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "risber/ber_asymptotic.hpp"
#include "risber/ber_exact.hpp"
#include "risber/channel.hpp"
#include "risber/montecarlo.hpp"
#include "risber/phase_stats.hpp"
#include "risber/quadrature.hpp"
#include "risber/specfun.hpp"
#include "risber/sweep.hpp"
#include "risber/types.hpp"

// Self-check suite behind the `validate` subcommand: every module's key
// invariants, each reduced to one record of measured-vs-allowed deviation.
// quick keeps sample counts small enough for a < 60 s run on one core; full
// raises the Monte Carlo checks to the 10^7-sample oracle agreements.
// All seeds are fixed, so the outcome is deterministic.

namespace risber {

enum class ValidateLevel { quick, full };

struct CheckRecord {
  std::string name;
  double measured = 0.0;
  double allowed = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<CheckRecord> records;
  bool all_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
};

/// One CSV record per check: name, measured deviation, allowed bound,
/// pass/fail.
inline void emit_report_csv(const ValidationReport& report, std::ostream& os) {
  os << "check,measured,allowed,status\n";
  for (const auto& r : report.records) {
    os << r.name << ',' << detail::format_double(r.measured) << ','
       << detail::format_double(r.allowed) << ','
       << (r.pass ? "pass" : "FAIL") << '\n';
  }
}

namespace detail {

inline void push_check(ValidationReport& rep, const std::string& name,
                       double measured, double allowed) {
  CheckRecord r;
  r.name = name;
  r.measured = measured;
  r.allowed = allowed;
  r.pass = std::isfinite(measured) && measured <= allowed;
  rep.records.push_back(r);
}

// Max |erf + erfc - 1| over a sign-symmetric grid.
inline double erf_identity_dev() {
  double worst = 0.0;
  for (int i = -60; i <= 60; ++i) {
    const double x = 0.1 * i;
    worst = std::max(worst, std::fabs(erf(x) + erfc(x) - 1.0));
  }
  return worst;
}

// Residual of the defining ODE F' = 1 - 2 x F via a 4th-order central
// difference; the difference scheme itself contributes ~1e-10.
inline double dawson_ode_dev() {
  double worst = 0.0;
  const double h = 1e-3;
  for (int i = -40; i <= 40; ++i) {
    const double x = 0.15 * i;
    const double d = (8.0 * (dawson(x + h) - dawson(x - h)) -
                      (dawson(x + 2 * h) - dawson(x - 2 * h))) /
                     (12.0 * h);
    worst = std::max(worst, std::fabs(d - (1.0 - 2.0 * x * dawson(x))));
  }
  return worst;
}

// The per-element amplitude density has bounded support in practice: the
// underlying Rayleigh product tail is e^{-2 sqrt(...)}-suppressed and drops
// below 1e-40 before z = 50, so [0, 50] captures both moments.
inline double pdf_z_moment_dev(int L, int power) {
  const auto q = integrate(
      [L, power](double z) {
        const double p = pdf_z(z, L);
        return power == 0 ? p : z * p;
      },
      0.0, 50.0, Tolerance{1e-12, 1e-12}, 30);
  const double target =
      power == 0 ? 1.0 : (L / 4.0) * std::sin(M_PI / L);
  return std::fabs(q.value - target);
}

inline double chf_unit_modulus_dev(int L) {
  double worst = std::abs(chf_z(0.0, L) - 1.0);
  for (double t : {0.3, 1.0, 4.0, 20.0, 200.0})
    worst = std::max(worst, std::max(0.0, std::abs(chf_z(t, L)) - 1.0));
  return worst;
}

inline double chf_two_level_dev() {
  double worst = 0.0;
  for (double t : {-50.0, -3.0, -0.5, 0.0, 0.5, 3.0, 50.0}) {
    const std::complex<double> ref = 2.0 / std::complex<double>(2.0, -t);
    worst = std::max(worst, std::abs(chf_z(t, 2) - ref));
  }
  return worst;
}

inline double gcq_vs_adaptive_dev(int points_per_decade) {
  double worst = 0.0;
  for (int L : {3, 4, 8}) {
    const int steps = 4 * points_per_decade;
    for (int i = 0; i <= steps; ++i) {
      const double t = std::pow(10.0, -2.0 + 4.0 * i / steps);
      const std::complex<double> ref = chf_z(t, L, Tolerance{1e-15, 1e-13});
      worst = std::max(worst, std::abs(chf_z_gcq(t, L) - ref) / std::abs(ref));
    }
  }
  return worst;
}

inline double channel_mean_dev_se(std::uint64_t draws) {
  const RisConfig cfg{4, 4};
  const double target =
      cfg.n_elements * (cfg.levels / 4.0) * std::sin(M_PI / cfg.levels);
  RunningMoments m;
  for (std::uint64_t b = 0; b * kMcBatch < draws; ++b) {
    BatchEngines eng{make_engine(2024, kStreamAmplitude, b),
                     make_engine(2024, kStreamPhase, b),
                     make_engine(2024, kStreamNoise, b),
                     make_engine(2024, kStreamSymbol, b)};
    const std::uint64_t n_b = std::min(kMcBatch, draws - b * kMcBatch);
    for (std::uint64_t i = 0; i < n_b; ++i)
      m.add(draw_amplitude(eng, cfg));
  }
  const double se = std::sqrt(m.m2 / (double(m.count) - 1.0) / double(m.count));
  return std::fabs(m.mean - target) / se;
}

// Closed-form vs fixed-node inversion backends; the relative gate applies
// where the probability is large enough for the fixed rule's absolute error
// floor not to dominate.
inline double dual_path_rel_dev() {
  double worst = 0.0;
  const struct { int n, l; double db; } pts[] = {
      {1, 3, 0.0}, {1, 4, 10.0}, {2, 3, 10.0}, {3, 4, 10.0}, {5, 4, 10.0}};
  for (const auto& p : pts) {
    const double rho = SnrPoint::from_db(p.db).rho;
    const RisConfig cfg{p.n, p.l};
    const double a = ber_chf(rho, cfg);
    const double b = ber_chf_gcq(rho, cfg);
    if (a >= 1e-7) worst = std::max(worst, std::fabs(a - b) / a);
  }
  return worst;
}

inline double ber_monotone_violations() {
  double violations = 0.0;
  for (int L : {2, 3, 4}) {
    const RisConfig cfg{3, L};
    double prev = 1.0;
    for (int db = 0; db <= 30; db += 3) {
      const double p = ber_chf(SnrPoint::from_db(double(db)).rho, cfg);
      if (!(p < prev) || !(p > 0.0) || !(p < 0.5)) violations += 1.0;
      prev = p;
    }
  }
  return violations;
}

inline double penalty_identity_dev() {
  double worst = 0.0;
  for (int L : {3, 4, 8}) {
    for (int n = 1; n <= 3; ++n) {
      for (double db : {20.0, 30.0, 40.0}) {
        const double rho = SnrPoint::from_db(db).rho;
        const RisConfig cfg{n, L};
        const double lhs = quantization_penalty(rho, 2, n);
        const double rhs =
            10.0 * std::log10(ber_asym_twolevel(rho, n) /
                              ber_asym_multilevel(rho, cfg)) +
            n * quantization_penalty(rho, L, n);
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
    }
  }
  return worst;
}

// Exact-to-asymptotic ratio folded to max(r, 1/r), so one number checks a
// multiplicative band.
inline double asym_band_dev(int L) {
  const double rho = SnrPoint::from_db(40.0).rho;
  double worst = 1.0;
  for (int n = 1; n <= 3; ++n) {
    const RisConfig cfg{n, L};
    const double exact = ber_chf(rho, cfg);
    const double asym = L == 2 ? ber_asym_twolevel(rho, n)
                               : ber_asym_multilevel(rho, cfg);
    const double r = exact / asym;
    worst = std::max(worst, std::max(r, 1.0 / r));
  }
  return worst;
}

inline double mc_semi_vs_exact_dev(std::uint64_t n_samples) {
  double worst = 0.0;
  const struct { int n, l; double db; } pts[] = {
      {1, 2, 0.0}, {2, 4, 10.0}, {3, 3, 10.0}};
  for (const auto& p : pts) {
    const double rho = SnrPoint::from_db(p.db).rho;
    const RisConfig cfg{p.n, p.l};
    const McEstimate est = ber_semi_analytic(rho, cfg, n_samples, 314159);
    worst = std::max(worst,
                     std::fabs(est.mean - ber_chf(rho, cfg)) / est.std_error);
  }
  return worst;
}

inline double mc_bit_vs_semi_dev(std::uint64_t n_samples, bool full_grid) {
  double worst = 0.0;
  const std::vector<int> ns = full_grid ? std::vector<int>{1, 3, 5}
                                        : std::vector<int>{1, 3};
  const std::vector<int> ls = full_grid ? std::vector<int>{2, 3, 4}
                                        : std::vector<int>{2, 4};
  const std::vector<double> dbs = full_grid ? std::vector<double>{0, 10, 20}
                                            : std::vector<double>{0, 10};
  for (int n : ns) {
    for (int l : ls) {
      for (double db : dbs) {
        const double rho = SnrPoint::from_db(db).rho;
        const RisConfig cfg{n, l};
        const McEstimate a = ber_semi_analytic(rho, cfg, n_samples, 271828);
        const McEstimate b = ber_bit_sim(rho, cfg, n_samples, 271828);
        const double se = std::sqrt(a.std_error * a.std_error +
                                    b.std_error * b.std_error);
        worst = std::max(worst, std::fabs(a.mean - b.mean) / se);
      }
    }
  }
  return worst;
}

inline double mc_determinism_mismatches() {
  const RisConfig cfg{2, 3};
  const McEstimate a = ber_bit_sim(10.0, cfg, 100000, 99);
  const McEstimate b = ber_bit_sim(10.0, cfg, 100000, 99);
  return (a.mean == b.mean && a.std_error == b.std_error &&
          a.n_samples == b.n_samples && a.seed == b.seed)
             ? 0.0
             : 1.0;
}

inline double csv_roundtrip_mismatches() {
  SweepRequest req;
  req.config = RisConfig{2, 4};
  req.rho_db_start = 0.0;
  req.rho_db_stop = 20.0;
  req.rho_db_step = 10.0;
  req.methods = {Method::exact_chf, Method::asym, Method::mc_semi};
  req.n_samples = 10000;
  req.seed = 7;
  const std::vector<BerPoint> pts = run_sweep(req);
  std::ostringstream os;
  emit_csv(pts, os);
  std::istringstream is(os.str());
  const std::vector<BerPoint> back = parse_csv(is);
  if (back.size() != pts.size()) return 1.0;
  double mism = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const BerPoint& p = pts[i];
    const BerPoint& q = back[i];
    const bool ber_same =
        p.ber == q.ber || (std::isnan(p.ber) && std::isnan(q.ber));
    const bool se_same =
        p.std_error.has_value() == q.std_error.has_value() &&
        (!p.std_error || *p.std_error == *q.std_error);
    if (!(p.rho_db == q.rho_db && ber_same && se_same &&
          p.method == q.method && p.n_elements == q.n_elements &&
          p.levels == q.levels && p.n_samples == q.n_samples &&
          p.seed == q.seed))
      mism += 1.0;
  }
  return mism;
}

inline double sweep_determinism_mismatches() {
  SweepRequest req;
  req.config = RisConfig{3, 3};
  req.rho_db_stop = 10.0;
  req.rho_db_step = 5.0;
  req.methods = {Method::exact_chf, Method::mc_semi};
  req.n_samples = 50000;
  req.seed = 12345;
  std::ostringstream a, b;
  emit_csv(run_sweep(req), a);
  emit_csv(run_sweep(req), b);
  return a.str() == b.str() ? 0.0 : 1.0;
}

}  // namespace detail

inline ValidationReport run_validate(ValidateLevel level) {
  using detail::push_check;
  const bool full = level == ValidateLevel::full;
  ValidationReport rep;

  push_check(rep, "specfun.erf_erfc_identity", detail::erf_identity_dev(),
             1e-14);
  push_check(rep, "specfun.dawson_ode_residual", detail::dawson_ode_dev(),
             1e-7);

  for (int L : full ? std::vector<int>{2, 3, 4, 8, 16}
                    : std::vector<int>{2, 4}) {
    push_check(rep, "phase_stats.pdf_z_norm_L" + std::to_string(L),
               detail::pdf_z_moment_dev(L, 0), 1e-8);
    push_check(rep, "phase_stats.pdf_z_mean_L" + std::to_string(L),
               detail::pdf_z_moment_dev(L, 1), 1e-6);
  }
  for (int L : {3, 4})
    push_check(rep, "phase_stats.chf_unit_modulus_L" + std::to_string(L),
               detail::chf_unit_modulus_dev(L), 1e-10);
  push_check(rep, "phase_stats.chf_two_level_closed",
             detail::chf_two_level_dev(), 1e-12);
  push_check(rep, "phase_stats.gcq20_vs_adaptive",
             detail::gcq_vs_adaptive_dev(full ? 12 : 4), 1e-8);

  push_check(rep, "channel.mean_amplitude_dev_se",
             detail::channel_mean_dev_se(full ? 4000000 : 400000), 4.0);

  push_check(rep, "ber_exact.dual_path_rel", detail::dual_path_rel_dev(),
             1e-6);
  push_check(rep, "ber_exact.monotone_range_violations",
             detail::ber_monotone_violations(), 0.0);

  push_check(rep, "ber_asym.penalty_identity", detail::penalty_identity_dev(),
             1e-9);
  push_check(rep, "ber_asym.band_two_level", detail::asym_band_dev(2), 1.25);
  push_check(rep, "ber_asym.band_multi_level", detail::asym_band_dev(4), 2.0);

  push_check(rep, "montecarlo.semi_vs_exact_se",
             detail::mc_semi_vs_exact_dev(full ? 10000000 : 200000), 4.0);
  push_check(rep, "montecarlo.bit_vs_semi_se",
             detail::mc_bit_vs_semi_dev(full ? 1000000 : 100000, full), 4.0);
  push_check(rep, "montecarlo.determinism",
             detail::mc_determinism_mismatches(), 0.0);

  push_check(rep, "sweep.csv_roundtrip", detail::csv_roundtrip_mismatches(),
             0.0);
  push_check(rep, "sweep.byte_determinism",
             detail::sweep_determinism_mismatches(), 0.0);

  return rep;
}

}  // namespace risber
