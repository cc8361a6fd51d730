// Measured high-SNR slopes of the exact BER curves against the predicted
// diversity orders: N/2 for the binary quantizer, N (up to a ln(rho) drag)
// for everything finer.

#include <cmath>
#include <cstdio>

#include "risber/ber_asymptotic.hpp"
#include "risber/ber_exact.hpp"

int main() {
  using namespace risber;
  std::printf("%4s %4s  %10s  %10s  %12s\n", "N", "L", "slope", "predicted",
              "Gc [lin]");
  for (int levels : {2, 4}) {
    for (int n : {2, 4}) {
      const RisConfig cfg{n, levels};
      const double lo = SnrPoint::from_db(35.0).rho;
      const double hi = SnrPoint::from_db(40.0).rho;
      const double slope = -(std::log10(ber_chf(hi, cfg)) -
                             std::log10(ber_chf(lo, cfg))) /
                           0.5;
      const double mid = SnrPoint::from_db(37.5).rho;
      const double predicted =
          levels == 2 ? 0.5 * n : n * (1.0 - 1.0 / std::log(mid));
      const DiversityReport rep = diversity_report(cfg, mid);
      std::printf("%4d %4d  %10.4f  %10.4f  %12.4e\n", n, levels, slope,
                  predicted, rep.coding_gain);
    }
  }
  return 0;
}
