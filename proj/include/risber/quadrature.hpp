#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "risber/types.hpp"

// Deterministic quadrature building blocks: a 7/15 Gauss-Kronrod pair with
// recursive bisection (fixed left-to-right accumulation order, so results do
// not depend on scheduling), Chebyshev nodes, and Fejer first-rule weights.

namespace risber {

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights ride
// on the odd-index abscissae.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
struct PanelResult {
  T integral{};
  double error = 0.0;
  double resabs = 0.0;
};

// One Gauss-Kronrod 7/15 application on [a, b]. T is double or
// complex<double>; the error estimate uses the standard (200|K-G|)^{3/2}
// sharpening.
template <typename F, typename T = decltype(std::declval<F>()(0.0))>
PanelResult<T> gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fv[15];
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[j] = f(c - dx);      // left of center, outermost first
    fv[14 - j] = f(c + dx);
  }
  T kron = kWgk[7] * fv[7];
  T gauss = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    kron += kWgk[j] * (fv[j] + fv[14 - j]);
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv[j] + fv[14 - j]);
  }
  const T mean = kron * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  kron *= h;
  gauss *= h;
  resabs *= std::fabs(h);
  resasc *= std::fabs(h);
  double err = std::abs(kron - gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (floor > 0.0) err = std::max(err, floor);
  return {kron, err, resabs};
}

template <typename T, typename F>
void adapt_rec(F& f, double a, double b, double tol_here, int depth, int max_depth,
               T& acc, double& err_acc, long& evals, bool& ok) {
  const auto r = gk15(f, a, b);
  evals += 15;
  // A non-finite panel cannot be cured by splitting (the defect infects
  // every descendant); record it as a failed leaf instead of recursing.
  if (!std::isfinite(r.error)) {
    ok = false;
    acc += r.integral;
    err_acc += std::numeric_limits<double>::infinity();
    return;
  }
  // A leaf whose estimate sits at its own round-off floor cannot improve by
  // splitting: bisection halves the floor and the budget together, so the
  // shortfall would persist to max_depth at exponential cost. Such a leaf
  // is converged to working precision; accept it without failing the run.
  const bool at_floor =
      r.error <= 50.0 * std::numeric_limits<double>::epsilon() * r.resabs;
  if (r.error <= tol_here || at_floor || depth >= max_depth) {
    if (r.error > tol_here && !at_floor) ok = false;
    acc += r.integral;
    err_acc += r.error;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt_rec(f, a, m, 0.5 * tol_here, depth + 1, max_depth, acc, err_acc, evals, ok);
  adapt_rec(f, m, b, 0.5 * tol_here, depth + 1, max_depth, acc, err_acc, evals, ok);
}

}  // namespace detail

template <typename T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evals = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b]. The target is
/// max(abs_tol, rel_tol * |first whole-interval estimate|), clamped below by
/// the round-off floor 100 eps * resabs: bisection halves the budget and the
/// per-leaf floor together, so a target under the floor would recurse to
/// max_depth without gaining anything. Bisection recurses to max_depth with
/// the budget halved per split.
template <typename F, typename T = decltype(std::declval<F>()(0.0))>
QuadResult<T> integrate(F&& f, double a, double b, Tolerance tol = {},
                        int max_depth = 24) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::domain_error("integrate: endpoints must be finite");
  QuadResult<T> out{};
  if (a == b) return out;
  const auto first = detail::gk15(f, a, b);
  out.evals = 15;
  // Same stance as the recursive leaves: a non-finite whole-interval
  // estimate cannot be cured by splitting, so fail it here rather than
  // recurse into children that may happen to miss the defect.
  if (!std::isfinite(first.error)) {
    out.value = first.integral;
    out.error = std::numeric_limits<double>::infinity();
    out.converged = false;
    return out;
  }
  const double target = std::max(
      {tol.abs_tol, tol.rel_tol * std::abs(first.integral),
       100.0 * std::numeric_limits<double>::epsilon() * first.resabs});
  if (first.error <= target) {
    out.value = first.integral;
    out.error = first.error;
    return out;
  }
  T acc{};
  double err = 0.0;
  bool ok = true;
  const double m = 0.5 * (a + b);
  detail::adapt_rec(f, a, m, 0.5 * target, 1, max_depth, acc, err, out.evals, ok);
  detail::adapt_rec(f, m, b, 0.5 * target, 1, max_depth, acc, err, out.evals, ok);
  out.value = acc;
  out.error = err;
  out.converged = ok || err <= 4.0 * target;
  return out;
}

/// Chebyshev (open) nodes a_k = cos(pi (2k-1) / (2n)), k = 1..n, on [-1, 1].
inline std::vector<double> chebyshev_nodes(int n) {
  if (n < 1) throw std::domain_error("chebyshev_nodes: n >= 1 required");
  std::vector<double> x(n);
  for (int k = 1; k <= n; ++k) x[k - 1] = std::cos(M_PI * (2.0 * k - 1.0) / (2.0 * n));
  return x;
}

/// Fejer first-rule weights for the Chebyshev nodes above:
///   w_k = (2/n) [1 - 2 sum_{m=1}^{floor(n/2)} cos(2 m theta_k) / (4m^2 - 1)].
/// The rule integrates over [-1, 1] and is exact for polynomials of degree
/// n - 1, converging spectrally for analytic integrands.
inline std::vector<double> fejer1_weights(int n) {
  if (n < 1) throw std::domain_error("fejer1_weights: n >= 1 required");
  std::vector<double> w(n);
  for (int k = 1; k <= n; ++k) {
    const double theta = M_PI * (2.0 * k - 1.0) / (2.0 * n);
    double s = 0.0;
    for (int m = 1; m <= n / 2; ++m)
      s += std::cos(2.0 * m * theta) / (4.0 * m * m - 1.0);
    w[k - 1] = (2.0 / n) * (1.0 - 2.0 * s);
  }
  return w;
}

}  // namespace risber
