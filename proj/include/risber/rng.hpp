#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seed derivation and sample-space primitives. All distribution transforms
// are written out explicitly (std::*_distribution is implementation-defined
// and would break cross-platform reproducibility). One underlying stream
// per physical source keeps draws independent of loop restructuring.

namespace risber {

inline constexpr std::uint64_t kStreamAmplitude = 0;
inline constexpr std::uint64_t kStreamPhase = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamSymbol = 3;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Stable seed for (root, stream, block): three splitmix64 steps fold the
/// identifiers into one well-mixed 64-bit value.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                 std::uint64_t block) {
  std::uint64_t s = root;
  std::uint64_t z = detail::splitmix64(s);
  s = z ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  z = detail::splitmix64(s);
  s = z ^ (block * 0xda942042e4dd58b5ULL + 0x9e6c63d0a161e0dbULL);
  return detail::splitmix64(s);
}

/// mt19937_64 seeded through derive_seed; the sole engine type used anywhere.
inline std::mt19937_64 make_engine(std::uint64_t root, std::uint64_t stream,
                                   std::uint64_t block = 0) {
  return std::mt19937_64(derive_seed(root, stream, block));
}

/// Uniform on (0, 1]: 53-bit mantissa, never exactly zero (safe under log).
inline double uniform_pos(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53;
}

/// Rayleigh amplitude with pdf 2 x e^{-x^2} (second moment 1, mean
/// sqrt(pi)/2): inverse-CDF transform x = sqrt(-ln U).
inline double rayleigh_unit(std::mt19937_64& eng) {
  return std::sqrt(-std::log(uniform_pos(eng)));
}

/// Phase error uniform on [-pi/L, pi/L].
inline double phase_error(std::mt19937_64& eng, int levels) {
  const double u = uniform_pos(eng);  // (0, 1]
  return (M_PI / levels) * (2.0 * u - 1.0);
}

/// Standard normal via Box-Muller, cosine branch only. Consuming exactly
/// two uniforms per draw (and discarding the sine partner) keeps every
/// sample's position in the stream independent of batching.
inline double gaussian(std::mt19937_64& eng) {
  const double u1 = uniform_pos(eng);
  const double u2 = uniform_pos(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Equiprobable +-1 symbol.
inline int symbol_bit(std::mt19937_64& eng) { return (eng() >> 63) ? 1 : -1; }

}  // namespace risber
