// BER versus SNR for N = 5 elements at 2, 3, and 4 quantization levels,
// plus the dB penalty each quantizer pays at high SNR. The L = 2 column
// falls at half the slope of the others: the binary quantizer halves the
// diversity order.

#include <cstdio>

#include "risber/ber_asymptotic.hpp"
#include "risber/ber_exact.hpp"

int main() {
  using namespace risber;
  const int n = 5;

  std::printf("exact BER, N = %d\n\n", n);
  std::printf("%8s  %14s  %14s  %14s\n", "SNR[dB]", "L=2", "L=3", "L=4");
  for (int db = 0; db <= 30; db += 3) {
    const double rho = SnrPoint::from_db(double(db)).rho;
    std::printf("%8d", db);
    for (int levels : {2, 3, 4})
      std::printf("  %14.6e", ber_chf(rho, RisConfig{n, levels}));
    std::printf("\n");
  }

  std::printf("\nquantization penalty at 30 dB [dB]\n");
  const double rho30 = SnrPoint::from_db(30.0).rho;
  for (int levels : {2, 3, 4, 8, 1024})
    std::printf("  L=%-5d %8.4f\n", levels,
                quantization_penalty(rho30, levels, n));
  return 0;
}
