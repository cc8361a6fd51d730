#pragma once

#include <cstdint>
#include <vector>

#include "risber/rng.hpp"
#include "risber/types.hpp"

namespace risber {

/// One realization of the cascaded fading coefficients and residual phase
/// errors for all N elements.
struct ChannelDraw {
  std::vector<double> h;          // source-to-surface Rayleigh amplitudes
  std::vector<double> g;          // surface-to-destination Rayleigh amplitudes
  std::vector<double> phase_err;  // residual phase errors in [-pi/L, pi/L]
};

/// Draw one channel realization. Amplitudes and phases come from separate
/// streams; within the amplitude stream the order is h[0..N) then g[0..N).
/// The same (config, seed) pair always produces the identical draw.
inline ChannelDraw sample_channel(const RisConfig& config, std::uint64_t seed) {
  config.validate();
  const int n = config.n_elements;
  ChannelDraw d;
  d.h.resize(n);
  d.g.resize(n);
  d.phase_err.resize(n);
  auto amp = make_engine(seed, kStreamAmplitude);
  auto ph = make_engine(seed, kStreamPhase);
  for (int i = 0; i < n; ++i) d.h[i] = rayleigh_unit(amp);
  for (int i = 0; i < n; ++i) d.g[i] = rayleigh_unit(amp);
  for (int i = 0; i < n; ++i) d.phase_err[i] = phase_error(ph, config.levels);
  return d;
}

/// Coherent combined amplitude x = sum_i h_i g_i cos(phase_err_i).
/// Every term is nonnegative because |phase_err| <= pi/L <= pi/2.
inline double combined_amplitude(const ChannelDraw& d) {
  double x = 0.0;
  for (std::size_t i = 0; i < d.h.size(); ++i)
    x += d.h[i] * d.g[i] * std::cos(d.phase_err[i]);
  return x;
}

/// Instantaneous SNR gamma = rho * x^2.
inline double instantaneous_snr(double x, const SnrPoint& snr) {
  return snr.rho * x * x;
}

}  // namespace risber
