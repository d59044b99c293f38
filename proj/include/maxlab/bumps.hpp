#pragma once

// Smooth dyadic partition of unity: beta in C_c^inf((1/2,2)) with
// sum_j beta(2^j t) = 1 for t > 0, built from a smooth step psi.

#include <cmath>

namespace maxlab {

namespace detail {
inline double smooth_g(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
}  // namespace detail

// psi = 1 on [0,1], 0 on [2,inf), smooth monotone in between.
inline double psi_cutoff(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  double a = detail::smooth_g(2.0 - t);
  double b = detail::smooth_g(t - 1.0);
  return a / (a + b);
}

// beta(t) = psi(t) - psi(2t): supported in (1/2, 2), telescoping partition.
inline double bump_beta(double t) { return psi_cutoff(t) - psi_cutoff(2.0 * t); }

// phi_0(xi) = sum_{j <= 0} beta(2^{-j} |xi|) = psi(|xi|) by telescoping.
inline double phi_0(double r) { return psi_cutoff(r); }

// phi_j(xi) = beta(2^{-j} |xi|), j >= 1.
inline double phi_j(int j, double r) { return bump_beta(std::ldexp(r, -j)); }

}  // namespace maxlab
