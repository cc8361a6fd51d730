// Command-line front end: SNR sweeps, single-point queries, reference-figure
// reproduction, and the self-check suite, all emitting the same CSV schema.
// Exit codes: 0 success, 1 validation failure, 2 argument error, 3 every
// requested point failed to converge.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "risber/sweep.hpp"
#include "risber/validate.hpp"

namespace {

struct SnrRange {
  double start = 0.0;
  double stop = 30.0;
  double step = 1.0;
};

// "start:stop:step" or a single "value".
SnrRange parse_snr(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = s.find(':', pos);
    parts.push_back(s.substr(pos, colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  auto to_d = [&](const std::string& f) {
    std::size_t used = 0;
    const double v = std::stod(f, &used);
    if (used != f.size()) throw std::invalid_argument("bad SNR field: " + f);
    return v;
  };
  SnrRange r;
  if (parts.size() == 1) {
    r.start = r.stop = to_d(parts[0]);
    r.step = 1.0;
  } else if (parts.size() == 3) {
    r.start = to_d(parts[0]);
    r.stop = to_d(parts[1]);
    r.step = to_d(parts[2]);
  } else {
    throw std::invalid_argument("--snr-db wants VALUE or START:STOP:STEP, got " + s);
  }
  return r;
}

int write_text(const std::string& out, const std::string& text) {
  if (out == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "cannot open output file: %s\n", out.c_str());
    return 2;
  }
  f << text;
  return f ? 0 : 2;
}

// Shared flags filled by several subcommands.
struct CommonOpts {
  int elements = 1;
  int levels = 2;
  std::string snr = "0:30:1";
  std::vector<std::string> methods;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  int gcq_nodes = 20;
  double tol = 0.0;
  std::string out = "-";
};

void add_mc_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--samples", o.samples,
                  "Monte Carlo sample count (mc_semi, mc_bit)");
  cmd->add_option("--seed", o.seed, "Root seed for all random streams");
  cmd->add_option("--gcq-nodes", o.gcq_nodes,
                  "Node count of the fixed Chebyshev rule (exact_chf_gcq)");
  cmd->add_option("--tol", o.tol,
                  "Relative tolerance target of the exact inversion");
  cmd->add_option("--out", o.out, "Output CSV path, '-' for stdout");
}

risber::SweepRequest build_request(const CommonOpts& o,
                                   const std::vector<std::string>& methods) {
  risber::SweepRequest req;
  req.config = risber::RisConfig{o.elements, o.levels};
  const SnrRange r = parse_snr(o.snr);
  req.rho_db_start = r.start;
  req.rho_db_stop = r.stop;
  req.rho_db_step = r.step;
  req.methods.clear();
  for (const std::string& m : methods)
    req.methods.push_back(risber::parse_method(m));
  req.n_samples = o.samples;
  req.seed = o.seed;
  if (o.gcq_nodes > 0) req.quad.gcq.n_nodes = o.gcq_nodes;
  if (o.tol > 0.0) req.quad.tol = risber::Tolerance{0.0, o.tol};
  return req;
}

// Runs one request per config, concatenates the rows, writes one CSV.
// Exit 3 only when every evaluated point failed.
int run_and_emit(const risber::SweepRequest& base,
                 const std::vector<risber::RisConfig>& configs,
                 const std::string& out) {
  std::vector<risber::BerPoint> all;
  for (const risber::RisConfig& cfg : configs) {
    risber::SweepRequest req = base;
    req.config = cfg;
    const std::vector<risber::BerPoint> pts = risber::run_sweep(req);
    all.insert(all.end(), pts.begin(), pts.end());
  }
  std::ostringstream os;
  risber::emit_csv(all, os);
  const int werr = write_text(out, os.str());
  if (werr != 0) return werr;
  bool any_ok = all.empty();
  for (const risber::BerPoint& p : all)
    if (std::isfinite(p.ber)) any_ok = true;
  return any_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "BER of RIS-assisted BPSK over Rayleigh fading with L-level quantized "
      "phase errors: exact CHF inversion, high-SNR asymptotics, and Monte "
      "Carlo, cross-validated"};
  app.require_subcommand(1);

  CommonOpts sweep_o, point_o, fig_o;
  bool validate_full = false;
  std::string validate_out = "-";

  CLI::App* sweep = app.add_subcommand("sweep", "BER over an SNR range");
  sweep->add_option("-N,--elements", sweep_o.elements, "Number of elements");
  sweep->add_option("-L,--levels", sweep_o.levels, "Phase quantization levels");
  sweep->add_option("--snr-db", sweep_o.snr, "SNR grid START:STOP:STEP in dB");
  sweep->add_option("--method", sweep_o.methods,
                    "exact_chf | exact_chf_gcq | asym | mc_semi | mc_bit "
                    "(repeatable)");
  add_mc_flags(sweep, sweep_o);

  CLI::App* point = app.add_subcommand("point", "BER at a single SNR");
  point->add_option("-N,--elements", point_o.elements, "Number of elements");
  point->add_option("-L,--levels", point_o.levels, "Phase quantization levels");
  point->add_option("--snr-db", point_o.snr, "SNR in dB")->required();
  point->add_option("--method", point_o.methods,
                    "exact_chf | exact_chf_gcq | asym | mc_semi | mc_bit "
                    "(repeatable)");
  add_mc_flags(point, point_o);

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "Reference curves: N = 5, L in {2,3,4}, 0-30 dB, exact + "
              "asymptotic + semi-analytic");
  CLI::App* fig2 = app.add_subcommand(
      "fig2", "High-SNR slope curves: (N, L) pairs over 10-40 dB, exact + "
              "asymptotic");
  add_mc_flags(fig1, fig_o);
  add_mc_flags(fig2, fig_o);

  CLI::App* validate = app.add_subcommand("validate", "Run the self-check suite");
  validate->add_flag("--full", validate_full,
                     "Full sample counts (10^7 oracle agreements)");
  validate->add_option("--out", validate_out,
                       "Report CSV path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) {
      if (sweep_o.methods.empty()) sweep_o.methods = {"exact_chf"};
      const risber::SweepRequest req = build_request(sweep_o, sweep_o.methods);
      return run_and_emit(req, {req.config}, sweep_o.out);
    }
    if (point->parsed()) {
      if (point_o.methods.empty()) point_o.methods = {"exact_chf"};
      const risber::SweepRequest req = build_request(point_o, point_o.methods);
      return run_and_emit(req, {req.config}, point_o.out);
    }
    if (fig1->parsed()) {
      CommonOpts o = fig_o;
      o.elements = 5;
      o.snr = "0:30:1";
      const risber::SweepRequest req =
          build_request(o, {"exact_chf", "asym", "mc_semi"});
      const std::vector<risber::RisConfig> cfgs{{5, 2}, {5, 3}, {5, 4}};
      return run_and_emit(req, cfgs, o.out);
    }
    if (fig2->parsed()) {
      CommonOpts o = fig_o;
      o.snr = "10:40:2";
      const risber::SweepRequest req = build_request(o, {"exact_chf", "asym"});
      const std::vector<risber::RisConfig> cfgs{{2, 2}, {4, 2}, {2, 4}, {4, 4}};
      return run_and_emit(req, cfgs, o.out);
    }
    if (validate->parsed()) {
      const risber::ValidationReport rep = risber::run_validate(
          validate_full ? risber::ValidateLevel::full
                        : risber::ValidateLevel::quick);
      std::ostringstream os;
      risber::emit_report_csv(rep, os);
      const int werr = write_text(validate_out, os.str());
      if (werr != 0) return werr;
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "argument error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "argument error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
