#pragma once

// Bessel functions J_nu for real order nu >= 0, x >= 0, double precision.
// Power series for small x; Hankel asymptotics at the fractional order plus
// upward recurrence for x beyond the series range; Miller's downward
// recurrence when the order exceeds the argument.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace maxlab {

namespace detail {

// Series: J_nu(x) = (x/2)^nu sum_k (-1)^k (x^2/4)^k / (k! Gamma(nu+k+1)).
// Accumulated in long double: the alternating sum cancels ~5 digits near the
// x = 12 switchover.
inline double bessel_j_series(double nu, double x) {
  long double q = static_cast<long double>(x) * x / 4.0L;
  long double term =
      std::exp(nu * std::log(static_cast<long double>(x) / 2.0L) - std::lgamma(nu + 1.0L));
  if (x == 0.0) term = (nu == 0.0) ? 1.0L : 0.0L;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (k * (nu + static_cast<long double>(k)));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) + 1e-300L) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion, valid for x substantially larger than nu^2.
// J_nu(x) ~ sqrt(2/(pi x)) [P cos(w) - Q sin(w)], w = x - nu pi/2 - pi/4.
inline double bessel_j_hankel(double nu, double x) {
  const double mu4 = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0;
  double prev = 1e300;
  for (int k = 1; k <= 30; ++k) {
    double num = mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= num / (8.0 * x * k);
    double mag = std::abs(term);
    if (mag > prev) break;  // divergent tail of the asymptotic series
    prev = mag;
    if (k % 2 == 1)
      q += (k % 4 == 1 ? term : -term);
    else
      p += (k % 4 == 2 ? -term : term);
    if (mag < 1e-18) break;
  }
  double w = x - nu * 1.57079632679489661923 - 0.78539816339744830962;
  return std::sqrt(2.0 / (3.14159265358979323846 * x)) *
         (p * std::cos(w) - q * std::sin(w));
}

// Miller's algorithm: downward recurrence from a start order well above nu,
// normalized by J_mu + 2 sum J_{mu+2k} = x^{-mu}... For integer offsets we
// normalize against J_m0(x) computed by the asymptotic branch (m0 <= x).
inline double bessel_j_miller(double nu, double x) {
  // nu > x >= 12 here. Recurse down to the fractional order mu in [0,1),
  // then renormalize against the two lowest values from the stable branch.
  double mu = nu - std::floor(nu);
  int n = static_cast<int>(std::floor(nu));
  int start = n + 15 + static_cast<int>(std::sqrt(40.0 * n));
  double jp = 0.0, jc = 1e-300, target = 0.0;
  for (int m = start; m >= 0; --m) {
    double jm = 2.0 * (mu + m + 1.0) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (m == n) target = jc;
    if (std::abs(jc) > 1e250) {  // rescale to avoid overflow
      jc *= 1e-250;
      jp *= 1e-250;
      target *= 1e-250;
    }
  }
  // jc ~ C * J_mu(x), jp ~ C * J_{mu+1}(x); fix C from the stable branch.
  double j0 = bessel_j_hankel(mu, x);
  double j1 = bessel_j_hankel(mu + 1.0, x);
  double c = (std::abs(jc) > std::abs(jp)) ? j0 / jc : j1 / jp;
  return target * c;
}

}  // namespace detail

inline double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0) throw std::domain_error("bessel_j: nu, x must be >= 0");
  // closed-form half-integer orders (hot path for the radial symbols)
  if (nu == 0.5 && x > 1e-4) return std::sqrt(2.0 / (M_PI * x)) * std::sin(x);
  if (nu == 1.5 && x > 1e-2)
    return std::sqrt(2.0 / (M_PI * x)) * (std::sin(x) / x - std::cos(x));
  if (x <= 12.0) return detail::bessel_j_series(nu, x);
  if (nu <= x) {
    // Asymptotics at the fractional order, then recurse upward (stable for
    // increasing order while order < argument).
    double mu = nu - std::floor(nu);
    int n = static_cast<int>(std::llround(nu - mu));
    double jm = detail::bessel_j_hankel(mu, x);
    if (n == 0) return jm;
    double jc = detail::bessel_j_hankel(mu + 1.0, x);
    for (int m = 1; m < n; ++m) {
      double jn = 2.0 * (mu + m) / x * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  return detail::bessel_j_miller(nu, x);
}

// d/dx J_nu(x) = J_{nu-1}(x) - (nu/x) J_nu(x); at nu = 0 use -J_1.
inline double bessel_j_prime(double nu, double x) {
  if (nu == 0.0) return -bessel_j(1.0, x);
  if (x == 0.0) return (nu == 1.0) ? 0.5 : 0.0;
  return bessel_j(nu - 1.0, x) - nu / x * bessel_j(nu, x);
}

}  // namespace maxlab
