// Cross-validation at a single operating point: the exact inversion (both
// kernel backends), the high-SNR asymptote, and the two Monte Carlo
// estimators should all tell the same story.

#include <cstdio>

#include "risber/ber_asymptotic.hpp"
#include "risber/ber_exact.hpp"
#include "risber/montecarlo.hpp"

int main() {
  using namespace risber;
  const RisConfig cfg{3, 4};
  const double rho_db = 15.0;
  const double rho = SnrPoint::from_db(rho_db).rho;

  const double exact = ber_chf(rho, cfg);
  const double gcq = ber_chf_gcq(rho, cfg);
  const double asym = ber_asym_multilevel(rho, cfg);
  const McEstimate semi = ber_semi_analytic(rho, cfg, 2000000, 1);
  const McEstimate bit = ber_bit_sim(rho, cfg, 2000000, 1);

  std::printf("N = %d elements, L = %d levels, %.0f dB\n\n", cfg.n_elements,
              cfg.levels, rho_db);
  std::printf("  exact inversion        %.8e\n", exact);
  std::printf("  fixed-node inversion   %.8e   (rel diff %.1e)\n", gcq,
              std::fabs(gcq - exact) / exact);
  std::printf("  high-SNR asymptote     %.8e   (ratio %.3f)\n", asym,
              exact / asym);
  std::printf("  semi-analytic MC       %.8e   +- %.1e  (%.1f se off exact)\n",
              semi.mean, semi.std_error,
              std::fabs(semi.mean - exact) / semi.std_error);
  std::printf("  bit-level MC           %.8e   +- %.1e  (%.1f se off exact)\n",
              bit.mean, bit.std_error,
              std::fabs(bit.mean - exact) / bit.std_error);
  return 0;
}
