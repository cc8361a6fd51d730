#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "risber/sweep.hpp"
#include "risber/validate.hpp"

using Catch::Matchers::WithinAbs;
using namespace risber;

namespace {

bool points_equal(const BerPoint& a, const BerPoint& b) {
  const bool ber_eq = (std::isnan(a.ber) && std::isnan(b.ber)) || a.ber == b.ber;
  const bool se_eq = a.std_error.has_value() == b.std_error.has_value() &&
                     (!a.std_error || *a.std_error == *b.std_error);
  return a.rho_db == b.rho_db && ber_eq && se_eq && a.method == b.method &&
         a.n_elements == b.n_elements && a.levels == b.levels &&
         a.n_samples == b.n_samples && a.seed == b.seed;
}

}  // namespace

TEST_CASE("SNR grid covers the range and clamps the endpoint") {
  SweepRequest req;
  req.rho_db_start = 0.0;
  req.rho_db_stop = 30.0;
  req.rho_db_step = 5.0;
  auto grid = detail::snr_grid(req);
  REQUIRE(grid.size() == 7);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 30.0);

  // A step that does not divide the range stops at the last point inside.
  req.rho_db_stop = 1.0;
  req.rho_db_step = 0.3;
  grid = detail::snr_grid(req);
  REQUIRE(grid.size() == 4);
  CHECK_THAT(grid.back(), WithinAbs(0.9, 1e-12));

  // Single point.
  req.rho_db_stop = req.rho_db_start;
  req.rho_db_step = 1.0;
  CHECK(detail::snr_grid(req).size() == 1);
}

TEST_CASE("sweep orders by method then SNR and deduplicates methods") {
  SweepRequest req;
  req.config = RisConfig{1, 4};
  req.rho_db_start = 0.0;
  req.rho_db_stop = 10.0;
  req.rho_db_step = 5.0;
  req.n_samples = 2000;
  req.methods = {Method::mc_semi, Method::exact_chf, Method::exact_chf,
                 Method::asym};

  const auto pts = run_sweep(req);
  REQUIRE(pts.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    const Method want = i < 3   ? Method::exact_chf
                        : i < 6 ? Method::asym
                                : Method::mc_semi;
    CHECK(pts[i].method == want);
    CHECK(pts[i].rho_db == 5.0 * double(i % 3));
    CHECK(pts[i].n_elements == 1);
    CHECK(pts[i].levels == 4);
    CHECK(pts[i].seed == req.seed);
  }

  // Analytic rows carry no sample count or standard error; Monte Carlo
  // rows carry both.
  CHECK(pts[0].n_samples == 0);
  CHECK_FALSE(pts[0].std_error.has_value());
  CHECK(pts[6].n_samples == 2000);
  CHECK(pts[6].std_error.has_value());

  CHECK(run_sweep(SweepRequest{}).size() == 31);
  SweepRequest empty = req;
  empty.methods.clear();
  CHECK(run_sweep(empty).empty());
}

TEST_CASE("points outside a method's domain become NaN rows") {
  // The multilevel asymptote needs rho > 1, so 0 dB fails while 10 dB
  // succeeds; the sweep itself must not throw.
  SweepRequest req;
  req.config = RisConfig{2, 4};
  req.rho_db_start = 0.0;
  req.rho_db_stop = 10.0;
  req.rho_db_step = 10.0;
  req.methods = {Method::asym};
  const auto pts = run_sweep(req);
  REQUIRE(pts.size() == 2);
  CHECK(std::isnan(pts[0].ber));
  CHECK_FALSE(pts[0].std_error.has_value());
  CHECK(std::isfinite(pts[1].ber));
}

TEST_CASE("sweeps are deterministic") {
  SweepRequest req;
  req.config = RisConfig{2, 4};
  req.rho_db_stop = 10.0;
  req.rho_db_step = 5.0;
  req.methods = {Method::exact_chf, Method::mc_semi, Method::mc_bit};
  req.n_samples = 20000;
  req.seed = 123;

  std::ostringstream a, b;
  emit_csv(run_sweep(req), a);
  emit_csv(run_sweep(req), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("CSV round-trip is exact") {
  std::vector<BerPoint> pts;
  BerPoint p;
  p.rho_db = 12.5;
  p.ber = 1.2345678901234567e-8;
  p.std_error = 3.3e-10;
  p.method = Method::mc_semi;
  p.n_elements = 4;
  p.levels = 8;
  p.n_samples = 1000000;
  p.seed = 42;
  pts.push_back(p);

  // A failed analytic point: NaN value, no standard error.
  BerPoint q;
  q.rho_db = 0.0;
  q.ber = std::numeric_limits<double>::quiet_NaN();
  q.method = Method::asym;
  q.n_elements = 2;
  q.levels = 4;
  pts.push_back(q);

  std::ostringstream os;
  emit_csv(pts, os);

  // Header plus one line per point, 8 fields each, empty std_error for the
  // analytic row.
  std::istringstream count(os.str());
  std::string line;
  std::getline(count, line);
  CHECK(line == std::string(kCsvHeader));

  std::istringstream is(os.str());
  const auto back = parse_csv(is);
  REQUIRE(back.size() == 2);
  CHECK(points_equal(back[0], pts[0]));
  CHECK(points_equal(back[1], pts[1]));
}

TEST_CASE("CSV parser rejects malformed input") {
  std::istringstream bad_header("rho,ber\n1,2\n");
  CHECK_THROWS_AS(parse_csv(bad_header), std::runtime_error);

  std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(parse_csv(short_row), std::runtime_error);

  std::istringstream bad_method(std::string(kCsvHeader) +
                                "\n10,1e-3,,laplace,1,2,0,1\n");
  CHECK_THROWS(parse_csv(bad_method));

  std::istringstream empty("");
  CHECK_THROWS_AS(parse_csv(empty), std::runtime_error);
}

TEST_CASE("quick validation passes and reports every check") {
  const auto report = run_validate(ValidateLevel::quick);
  CHECK(report.all_pass());
  CHECK(report.records.size() >= 20);

  std::ostringstream os;
  emit_report_csv(report, os);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "check,measured,allowed,status");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
    CHECK(line.substr(line.rfind(',') + 1) == "pass");
  }
  CHECK(rows == report.records.size());
}
