#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "risber/channel.hpp"
#include "risber/rng.hpp"
#include "risber/specfun.hpp"
#include "risber/types.hpp"

// Two independent simulation oracles. The semi-analytic estimator averages
// the conditional error probability (1/2) erfc(sqrt(rho) x) over channel
// draws, so the only sampling variance is the channel's. The bit-level
// simulator also draws noise and symbols and counts sign errors, which
// validates the noise calibration itself: Var(Re n) = 1/(2 rho) is the
// unique choice making the conditional error rate equal
// (1/2) erfc(sqrt(instantaneous SNR)).
//
// Reproducibility contract: samples are processed in fixed 2^16-sample
// batches; batch b draws from engines seeded by derive_seed(seed, stream, b)
// and per-batch moments are merged in batch order afterwards, so a given
// seed yields a bit-identical estimate regardless of how many workers the
// batches were spread over.

namespace risber {

namespace detail {

inline constexpr std::uint64_t kMcBatch = std::uint64_t(1) << 16;

// One-pass mean/variance accumulator with the standard pairwise merge; both
// steps are exact-order deterministic.
struct RunningMoments {
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t count = 0;

  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double d = o.mean - mean;
    mean += d * nb / (na + nb);
    m2 += o.m2 + d * d * na * nb / (na + nb);
    count += o.count;
  }
};

struct BatchEngines {
  std::mt19937_64 amp;
  std::mt19937_64 ph;
  std::mt19937_64 noise;
  std::mt19937_64 sym;
};

inline int worker_count() {
  if (const char* env = std::getenv("RISBER_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 256)
      return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Combined amplitude of one draw, in the same per-sample stream order as
// sample_channel: h[0..N) then g[0..N) from the amplitude stream, phase
// errors from the phase stream.
inline double draw_amplitude(BatchEngines& eng, const RisConfig& config) {
  double hg[64];
  const int n = config.n_elements;
  for (int i = 0; i < n; ++i) hg[i] = rayleigh_unit(eng.amp);
  for (int i = 0; i < n; ++i) hg[i] *= rayleigh_unit(eng.amp);
  double x = 0.0;
  for (int i = 0; i < n; ++i)
    x += hg[i] * std::cos(phase_error(eng.ph, config.levels));
  return x;
}

template <typename PerSample>
inline McEstimate mc_run(const char* who, double rho, const RisConfig& config,
                         std::uint64_t n_samples, std::uint64_t seed,
                         PerSample per_sample) {
  config.validate();
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::domain_error(std::string(who) + ": requires finite rho > 0");
  if (n_samples < 1000)
    throw std::domain_error(std::string(who) + ": requires n_samples >= 1000");
  const std::uint64_t batches = (n_samples + kMcBatch - 1) / kMcBatch;
  std::vector<RunningMoments> per_batch(batches);
  auto run_strided = [&per_batch, batches, n_samples, seed, &config,
                      &per_sample](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t b = first; b < batches; b += stride) {
      BatchEngines eng{make_engine(seed, kStreamAmplitude, b),
                      make_engine(seed, kStreamPhase, b),
                      make_engine(seed, kStreamNoise, b),
                      make_engine(seed, kStreamSymbol, b)};
      const std::uint64_t n_b = std::min(kMcBatch, n_samples - b * kMcBatch);
      RunningMoments m;
      for (std::uint64_t i = 0; i < n_b; ++i) m.add(per_sample(eng, config));
      per_batch[b] = m;
    }
  };
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count()), batches);
  if (workers <= 1) {
    run_strided(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::uint64_t w = 1; w < workers; ++w)
      pool.emplace_back(run_strided, w, workers);
    run_strided(0, workers);
    for (auto& t : pool) t.join();
  }
  RunningMoments total;
  for (const auto& m : per_batch) total.merge(m);
  McEstimate est;
  est.mean = total.mean;
  est.n_samples = n_samples;
  est.seed = seed;
  est.std_error =
      total.count > 1
          ? std::sqrt(total.m2 / (static_cast<double>(total.count) - 1.0) /
                      static_cast<double>(total.count))
          : 0.0;
  return est;
}

}  // namespace detail

/// Matched-filter decision for one bit: r = x * alpha + w with the
/// unit-variance noise draw scaled to Var(w) = 1/(2 rho); a tie (r = 0)
/// decides +1. Returns true when the decision differs from alpha.
inline bool bit_error(double x, int alpha, double noise_unit, double rho) {
  const double r = x * alpha + std::sqrt(0.5 / rho) * noise_unit;
  return (r >= 0.0 ? 1 : -1) != alpha;
}

/// Semi-analytic BER estimate: the average of (1/2) erfc(sqrt(rho) x) over
/// channel draws, with its standard error. Deterministic for a given seed.
inline McEstimate ber_semi_analytic(double rho, const RisConfig& config,
                                    std::uint64_t n_samples,
                                    std::uint64_t seed) {
  const double sr = std::sqrt(rho);
  return detail::mc_run(
      "ber_semi_analytic", rho, config, n_samples, seed,
      [sr](detail::BatchEngines& eng, const RisConfig& cfg) {
        return 0.5 * erfc(sr * detail::draw_amplitude(eng, cfg));
      });
}

/// Bit-level BER estimate: per sample, draw the channel, an equiprobable
/// symbol, and Gaussian noise of variance 1/(2 rho); count sign errors.
/// Deterministic for a given seed.
inline McEstimate ber_bit_sim(double rho, const RisConfig& config,
                              std::uint64_t n_samples, std::uint64_t seed) {
  return detail::mc_run(
      "ber_bit_sim", rho, config, n_samples, seed,
      [rho](detail::BatchEngines& eng, const RisConfig& cfg) {
        const double x = detail::draw_amplitude(eng, cfg);
        const int alpha = symbol_bit(eng.sym);
        return bit_error(x, alpha, gaussian(eng.noise), rho) ? 1.0 : 0.0;
      });
}

}  // namespace risber
