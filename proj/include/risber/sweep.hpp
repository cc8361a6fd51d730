#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "risber/ber_asymptotic.hpp"
#include "risber/ber_exact.hpp"
#include "risber/montecarlo.hpp"
#include "risber/types.hpp"

// Parameter sweeps over SNR and the CSV contract for their results. A sweep
// is pure plumbing: one row per (method, SNR point), rows sorted by
// (method, rho_db), per-point failures recorded as NaN rows rather than
// aborting the run, and byte-identical output for identical requests.

namespace risber {

/// One SNR sweep over a fixed (N, L) configuration.
struct SweepRequest {
  RisConfig config{};
  double rho_db_start = 0.0;
  double rho_db_stop = 30.0;
  double rho_db_step = 1.0;
  std::vector<Method> methods{Method::exact_chf};
  std::uint64_t n_samples = 1000000;  // Monte Carlo methods only
  std::uint64_t seed = 1;
  QuadratureSpec quad{};

  void validate() const {
    config.validate();
    if (!(rho_db_step > 0.0))
      throw std::domain_error("SweepRequest: rho_db_step must be > 0");
    if (!(rho_db_start <= rho_db_stop))
      throw std::domain_error("SweepRequest: rho_db_start must be <= stop");
    if (!std::isfinite(rho_db_start) || !std::isfinite(rho_db_stop))
      throw std::domain_error("SweepRequest: SNR bounds must be finite");
  }
};

namespace detail {

inline std::vector<double> snr_grid(const SweepRequest& req) {
  // Half-step slack keeps the endpoint in the grid despite accumulated
  // rounding in start + i * step.
  const std::uint64_t count = static_cast<std::uint64_t>(
      std::floor((req.rho_db_stop - req.rho_db_start) / req.rho_db_step +
                 0.5)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    double v = req.rho_db_start + static_cast<double>(i) * req.rho_db_step;
    if (v > req.rho_db_stop) v = req.rho_db_stop;
    grid.push_back(v);
  }
  return grid;
}

inline BerPoint eval_point(const SweepRequest& req, Method method,
                           double rho_db) {
  BerPoint pt;
  pt.rho_db = rho_db;
  pt.method = method;
  pt.n_elements = req.config.n_elements;
  pt.levels = req.config.levels;
  pt.seed = req.seed;
  const double rho = SnrPoint::from_db(rho_db).rho;
  try {
    switch (method) {
      case Method::exact_chf:
        pt.ber = ber_chf(rho, req.config, req.quad);
        break;
      case Method::exact_chf_gcq:
        pt.ber = ber_chf_gcq(rho, req.config, req.quad);
        break;
      case Method::asym:
        pt.ber = req.config.levels == 2
                     ? ber_asym_twolevel(rho, req.config.n_elements)
                     : ber_asym_multilevel(rho, req.config);
        break;
      case Method::mc_semi: {
        const McEstimate est =
            ber_semi_analytic(rho, req.config, req.n_samples, req.seed);
        pt.ber = est.mean;
        pt.std_error = est.std_error;
        pt.n_samples = est.n_samples;
        break;
      }
      case Method::mc_bit: {
        const McEstimate est =
            ber_bit_sim(rho, req.config, req.n_samples, req.seed);
        pt.ber = est.mean;
        pt.std_error = est.std_error;
        pt.n_samples = est.n_samples;
        break;
      }
    }
  } catch (const std::exception&) {
    // A point outside a method's domain (or an uncertified inversion) is a
    // failed point, not a failed sweep.
    pt.ber = std::numeric_limits<double>::quiet_NaN();
    pt.std_error.reset();
  }
  return pt;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Runs the sweep: one BerPoint per (method, SNR point), sorted by
/// (method, rho_db). Failed points carry ber = NaN. Deterministic for a
/// given request.
inline std::vector<BerPoint> run_sweep(const SweepRequest& req) {
  req.validate();
  std::vector<Method> methods = req.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  const std::vector<double> grid = detail::snr_grid(req);
  std::vector<BerPoint> out;
  out.reserve(methods.size() * grid.size());
  for (Method m : methods)
    for (double rho_db : grid) out.push_back(detail::eval_point(req, m, rho_db));
  return out;
}

inline constexpr const char* kCsvHeader =
    "rho_db,ber,std_error,method,n_elements,levels,n_samples,seed";

/// Writes points as CSV (header + one row per point). Doubles are printed
/// with 17 significant digits so parse(emit(x)) reproduces x exactly; a
/// missing std_error becomes an empty field.
inline void emit_csv(const std::vector<BerPoint>& points, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const BerPoint& p : points) {
    os << detail::format_double(p.rho_db) << ',' << detail::format_double(p.ber)
       << ',' << (p.std_error ? detail::format_double(*p.std_error) : "")
       << ',' << method_name(p.method) << ',' << p.n_elements << ','
       << p.levels << ',' << p.n_samples << ',' << p.seed << '\n';
  }
}

/// Parses CSV produced by emit_csv (header row required).
inline std::vector<BerPoint> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw std::runtime_error("parse_csv: missing or unexpected header row");
  std::vector<BerPoint> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 8)
      throw std::runtime_error("parse_csv: expected 8 fields, got " +
                               std::to_string(fields.size()));
    BerPoint p;
    p.rho_db = std::strtod(fields[0].c_str(), nullptr);
    p.ber = std::strtod(fields[1].c_str(), nullptr);
    if (!fields[2].empty())
      p.std_error = std::strtod(fields[2].c_str(), nullptr);
    p.method = parse_method(fields[3]);
    p.n_elements = std::stoi(fields[4]);
    p.levels = std::stoi(fields[5]);
    p.n_samples = std::stoull(fields[6]);
    p.seed = std::stoull(fields[7]);
    out.push_back(p);
  }
  return out;
}

}  // namespace risber
