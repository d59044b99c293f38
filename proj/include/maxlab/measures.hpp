#pragma once

// Model measures: normalized sphere surface measure, the mu_alpha family,
// Cantor measures, and discretized grid densities. Closed-form Fourier
// transforms, ball-mass queries, and decay/Frostman exponent estimation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxlab/bessel.hpp"
#include "maxlab/fit.hpp"
#include "maxlab/grid.hpp"
#include "maxlab/rational.hpp"

namespace maxlab {

struct MeasureSpec {
  enum class Kind { Sphere, MuAlpha, Cantor, Discretized } kind = Kind::Sphere;
  int d = 2;              // ambient dimension (Sphere, MuAlpha)
  Rat alpha{1, 2};        // MuAlpha, in (0,1)
  Rat ratio{1, 3};        // Cantor, in (0,1/2)
  int depth = 12;         // Cantor
  // double images of alpha/ratio, cached by the factories: rational-to-double
  // conversion is far too slow for the per-lattice-point symbol loops
  double alpha_d = 0.5;
  double ratio_d = 1.0 / 3.0;
  std::shared_ptr<const GridField> field;  // Discretized

  static MeasureSpec sphere(int d) {
    MeasureSpec s;
    s.kind = Kind::Sphere;
    s.d = d;
    if (d < 2) throw std::invalid_argument("sphere: d >= 2");
    return s;
  }
  static MeasureSpec mu_alpha(int d, const Rat& a) {
    MeasureSpec s;
    s.kind = Kind::MuAlpha;
    s.d = d;
    s.alpha = a;
    s.alpha_d = rat_double(a);
    if (d < 1 || a <= 0 || a >= 1) throw std::invalid_argument("mu_alpha: d >= 1, 0 < alpha < 1");
    return s;
  }
  static MeasureSpec cantor(const Rat& ratio, int depth) {
    MeasureSpec s;
    s.kind = Kind::Cantor;
    s.d = 1;
    s.ratio = ratio;
    s.ratio_d = rat_double(ratio);
    s.depth = depth;
    if (ratio <= 0 || ratio >= Rat(1, 2) || depth < 1)
      throw std::invalid_argument("cantor: 0 < ratio < 1/2, depth >= 1");
    return s;
  }
  static MeasureSpec discretized(GridField f) {
    MeasureSpec s;
    s.kind = Kind::Discretized;
    s.d = f.d;
    s.field = std::make_shared<GridField>(std::move(f));
    return s;
  }
};

// -------- closed-form Fourier transforms (convention e^{-2 pi i x.xi}) -----

inline double mu_alpha_mass(int d, double alpha) {
  return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + alpha);
}

inline double fourier_mu_alpha(int d, double alpha, double r) {
  if (!(alpha > 0.0 && alpha < 1.0) || d < 1)
    throw std::invalid_argument("fourier_mu_alpha: d >= 1, 0 < alpha < 1");
  if (r == 0.0) return mu_alpha_mass(d, alpha);
  // d = 2, alpha = 1/2: pi^{1/2} r^{-1/2} J_{1/2}(2 pi r) = sin(2 pi r)/(sqrt(pi) r)
  if (d == 2 && alpha == 0.5 && r > 1e-4)
    return std::sin(2.0 * M_PI * r) / (std::sqrt(M_PI) * r);
  return std::pow(M_PI, 1.0 - alpha) * std::pow(r, 1.0 - d / 2.0 - alpha) *
         bessel_j(d / 2.0 + alpha - 1.0, 2.0 * M_PI * r);
}

// d/dr of the above, via d/dx [x^{-nu} J_nu(x)] = -x^{-nu} J_{nu+1}(x).
inline double fourier_mu_alpha_prime(int d, double alpha, double r) {
  if (r == 0.0) return 0.0;
  return -2.0 * M_PI * std::pow(M_PI, 1.0 - alpha) * std::pow(r, 1.0 - d / 2.0 - alpha) *
         bessel_j(d / 2.0 + alpha, 2.0 * M_PI * r);
}

inline double fourier_sphere(int d, double r) {
  if (d < 2) throw std::invalid_argument("fourier_sphere: d >= 2");
  if (r == 0.0) return 1.0;
  double nu = d / 2.0 - 1.0;
  return std::pow(2.0, nu) * std::tgamma(d / 2.0) * std::pow(2.0 * M_PI * r, -nu) *
         bessel_j(nu, 2.0 * M_PI * r);
}

inline double fourier_sphere_prime(int d, double r) {
  if (r == 0.0) return 0.0;
  double nu = d / 2.0 - 1.0;
  return -2.0 * M_PI * std::pow(2.0, nu) * std::tgamma(d / 2.0) *
         std::pow(2.0 * M_PI * r, -nu) * bessel_j(nu + 1.0, 2.0 * M_PI * r);
}

// Centered self-similar Cantor measure: support in [-1/2, 1/2], real even
// transform prod_k cos(pi (1-ratio) ratio^{k-1} xi).
inline double fourier_cantor(double ratio, int depth, double xi) {
  double p = 1.0;
  double scale = 1.0 - ratio;
  for (int k = 0; k < depth; ++k) {
    p *= std::cos(M_PI * scale * xi);
    scale *= ratio;
  }
  return p;
}

// Atom midpoints of the depth-level construction, sorted ascending.
inline std::vector<double> cantor_atoms(double ratio, int depth) {
  std::vector<double> xs{0.0};
  double half = (1.0 - ratio) / 2.0;
  for (int k = 0; k < depth; ++k) {
    std::vector<double> next;
    next.reserve(xs.size() * 2);
    for (double x : xs) {
      next.push_back(x - half);
      next.push_back(x + half);
    }
    xs.swap(next);
    half *= ratio;
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

// -------- unified symbol ---------------------------------------------------

inline double total_mass(const MeasureSpec& s) {
  switch (s.kind) {
    case MeasureSpec::Kind::Sphere:
      return 1.0;
    case MeasureSpec::Kind::MuAlpha:
      return mu_alpha_mass(s.d, rat_double(s.alpha));
    case MeasureSpec::Kind::Cantor:
      return 1.0;
    case MeasureSpec::Kind::Discretized: {
      double m = 0.0;
      for (const auto& v : s.field->values) m += v.real();
      return m * s.field->cell_volume();
    }
  }
  throw std::logic_error("total_mass: bad kind");
}

// mu_hat at radius r (all kinds radial/even; Discretized is evaluated along
// the first axis).
inline double measure_symbol(const MeasureSpec& s, double r) {
  switch (s.kind) {
    case MeasureSpec::Kind::Sphere:
      return fourier_sphere(s.d, r);
    case MeasureSpec::Kind::MuAlpha:
      return fourier_mu_alpha(s.d, s.alpha_d, r);
    case MeasureSpec::Kind::Cantor:
      return fourier_cantor(s.ratio_d, s.depth, r);
    case MeasureSpec::Kind::Discretized: {
      const GridField& f = *s.field;
      if (f.d != 1)
        throw std::invalid_argument("measure_symbol: radial evaluation needs d = 1 field");
      double re = 0.0, im = 0.0;
      for (int i = 0; i < f.n; ++i) {
        double v = f.values[i].real();
        if (v == 0.0) continue;
        double ph = -2.0 * M_PI * f.coord(i) * r;
        re += v * std::cos(ph);
        im += v * std::sin(ph);
      }
      double vol = f.cell_volume();
      return std::hypot(re * vol, im * vol);
    }
  }
  throw std::logic_error("measure_symbol: bad kind");
}

// d/dr mu_hat(r); finite differences where no closed form exists.
inline double measure_symbol_prime(const MeasureSpec& s, double r) {
  switch (s.kind) {
    case MeasureSpec::Kind::Sphere:
      return fourier_sphere_prime(s.d, r);
    case MeasureSpec::Kind::MuAlpha:
      return fourier_mu_alpha_prime(s.d, s.alpha_d, r);
    default: {
      double h = 1e-6 * std::max(1.0, r);
      return (measure_symbol(s, r + h) - measure_symbol(s, std::max(0.0, r - h))) / (2.0 * h);
    }
  }
}

// f * mu_t via exact symbol evaluation at lattice frequencies:
// (f * mu_t)^(xi) = f^(xi) mu^(t xi).
inline GridField convolve_dilated(const GridField& f, const MeasureSpec& s, double t) {
  if (!(t > 0.0 && t <= 2.0)) throw std::invalid_argument("convolve_dilated: t in (0, 2]");
  return apply_radial_multiplier(f, [&s, t](double r) { return cplx(measure_symbol(s, t * r), 0.0); });
}

// -------- ball mass --------------------------------------------------------

namespace detail {

// Fraction of the unit sphere S^{d-1} with angle <= theta0 from a pole,
// where cos(theta0) = c0 (clamped).
inline double cap_fraction(int d, double c0) {
  if (c0 >= 1.0) return 0.0;
  if (c0 <= -1.0) return 1.0;
  double th = std::acos(c0);
  if (d == 2) return th / M_PI;
  if (d == 3) return (1.0 - c0) / 2.0;
  // generic: int_0^th sin^{d-2} / int_0^pi sin^{d-2}, composite Simpson
  auto seg = [d](double a, double b) {
    const int m = 512;
    double h = (b - a) / m, s = 0.0;
    for (int i = 0; i < m; ++i) {
      double x0 = a + i * h, x1 = x0 + h, xm = x0 + h / 2;
      auto g = [d](double t) { return std::pow(std::sin(t), d - 2); };
      s += h / 6.0 * (g(x0) + 4 * g(xm) + g(x1));
    }
    return s;
  };
  return seg(0.0, th) / seg(0.0, M_PI);
}

// Fraction of the sphere of radius rho (center origin) lying in B(x, r),
// |x| = c.
inline double shell_fraction(int d, double rho, double c, double r) {
  if (d == 1) {
    double f = 0.0;
    if (std::abs(rho - c) <= r) f += 0.5;
    if (rho + c <= r) f += 0.5;
    return f;
  }
  if (rho == 0.0) return c <= r ? 1.0 : 0.0;
  if (c == 0.0) return rho <= r ? 1.0 : 0.0;
  return cap_fraction(d, (rho * rho + c * c - r * r) / (2.0 * rho * c));
}

}  // namespace detail

inline double ball_mass(const MeasureSpec& s, double center_norm, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball_mass: r > 0");
  double c = center_norm;
  switch (s.kind) {
    case MeasureSpec::Kind::Sphere:
      if (r >= 1.0 + c) return 1.0;
      return detail::shell_fraction(s.d, 1.0, c, r);
    case MeasureSpec::Kind::MuAlpha: {
      if (r >= 1.0 + c) return mu_alpha_mass(s.d, rat_double(s.alpha));
      double alpha = rat_double(s.alpha);
      // substitute 1 - rho = t^{1/alpha}: integrand becomes smooth in t
      const int m = 4096;
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        double t = (i + 0.5) / m;
        double rho = 1.0 - std::pow(t, 1.0 / alpha);
        if (rho <= 0.0) continue;
        acc += (1.0 / alpha) * std::pow(rho, s.d - 1) * std::pow(1.0 + rho, alpha - 1.0) *
               detail::shell_fraction(s.d, rho, c, r);
      }
      acc /= m;
      double surf = 2.0 * std::pow(M_PI, s.d / 2.0) / std::tgamma(s.d / 2.0);
      return surf / std::tgamma(alpha) * acc;
    }
    case MeasureSpec::Kind::Cantor: {
      auto atoms = cantor_atoms(rat_double(s.ratio), s.depth);
      auto lo = std::lower_bound(atoms.begin(), atoms.end(), c - r);
      auto hi = std::upper_bound(atoms.begin(), atoms.end(), c + r);
      return static_cast<double>(hi - lo) / atoms.size();
    }
    case MeasureSpec::Kind::Discretized: {
      const GridField& f = *s.field;
      double m = 0.0;
      std::array<double, 3> x{0, 0, 0};
      for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        std::size_t rem = idx;
        for (int k = f.d - 1; k >= 0; --k) {
          x[k] = f.coord(static_cast<int>(rem % f.n));
          rem /= f.n;
        }
        double dist = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        // ball centered on the first axis at distance c
        double dx0 = x[0] - c;
        double d2 = dx0 * dx0 + x[1] * x[1] + x[2] * x[2];
        (void)dist;
        if (d2 <= r * r) m += f.values[idx].real();
      }
      return m * f.cell_volume();
    }
  }
  throw std::logic_error("ball_mass: bad kind");
}

// -------- exponent estimators ----------------------------------------------

// deterministic low-discrepancy directions on S^{d-1}
inline std::vector<std::array<double, 3>> sphere_directions(int d, int count) {
  std::vector<std::array<double, 3>> dirs;
  dirs.reserve(count);
  if (d == 1) {
    dirs.push_back({1, 0, 0});
    dirs.push_back({-1, 0, 0});
    return dirs;
  }
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      double th = 2.0 * M_PI * (k + 0.5) / count;
      dirs.push_back({std::cos(th), std::sin(th), 0});
    }
    return dirs;
  }
  const double ga = M_PI * (3.0 - std::sqrt(5.0));  // golden angle
  for (int k = 0; k < count; ++k) {
    double z = 1.0 - 2.0 * (k + 0.5) / count;
    double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
    double th = ga * k;
    dirs.push_back({rr * std::cos(th), rr * std::sin(th), z});
  }
  return dirs;
}

inline bool is_radial_symbol(const MeasureSpec& s) {
  return s.kind != MeasureSpec::Kind::Discretized;
}

// a-hat from sup_{|xi| ~ 2^j} |mu_hat| over dyadic shells.
inline SlopeFit fit_decay_exponent(const MeasureSpec& s, int j_lo, int j_hi) {
  if (j_hi - j_lo + 1 < 3) throw std::invalid_argument("fit_decay_exponent: need >= 3 shells");
  std::vector<double> js, sups;
  auto dirs = sphere_directions(s.d, 64);
  for (int j = j_lo; j <= j_hi; ++j) {
    double base = std::ldexp(1.0, j);
    // shell [2^j/sqrt2, 2^j sqrt2]; enough radial samples to resolve the
    // unit-scale oscillation of Bessel factors
    int n_rad = std::max(4096, static_cast<int>(16.0 * base));
    double sup = 0.0;
    if (is_radial_symbol(s)) {
      for (int i = 0; i < n_rad; ++i) {
        double r = base * std::pow(2.0, -0.5 + (i + 0.5) / n_rad);
        sup = std::max(sup, std::abs(measure_symbol(s, r)));
      }
    } else {
      int n_per_dir = std::max(64, n_rad / static_cast<int>(dirs.size()));
      for (std::size_t kd = 0; kd < dirs.size(); ++kd)
        for (int i = 0; i < n_per_dir; ++i) {
          double r = base * std::pow(2.0, -0.5 + (i + 0.5) / n_per_dir);
          sup = std::max(sup, std::abs(measure_symbol(s, r)));
        }
    }
    js.push_back(j);
    sups.push_back(sup);
  }
  SlopeFit f = fit_loglog(js, sups, false);
  f.slope = -f.slope;  // report a-hat = -slope
  return f;
}

// b-hat from max_x mu(B(x, r)) over dyadic radii; centers sampled on the
// support deterministically.
inline SlopeFit fit_frostman_exponent(const MeasureSpec& s, int k_lo, int k_hi) {
  if (k_hi - k_lo + 1 < 4) throw std::invalid_argument("fit_frostman_exponent: need >= 4 radii");
  std::vector<double> centers;
  switch (s.kind) {
    case MeasureSpec::Kind::Sphere:
      centers = {1.0};  // radial symmetry: one support point suffices
      break;
    case MeasureSpec::Kind::MuAlpha:
      for (int i = 0; i <= 16; ++i) centers.push_back(i / 16.0);
      break;
    case MeasureSpec::Kind::Cantor: {
      auto atoms = cantor_atoms(rat_double(s.ratio), s.depth);
      for (std::size_t i = 0; i < atoms.size() && centers.size() < 64; i += 64)
        centers.push_back(atoms[i]);
      break;
    }
    case MeasureSpec::Kind::Discretized:
      for (int i = 0; i <= 16; ++i) centers.push_back(-1.0 + i / 8.0);
      break;
  }
  std::vector<double> ks, ms;
  for (int k = k_lo; k <= k_hi; ++k) {
    double r = std::ldexp(1.0, -k);
    double best = 0.0;
    for (double c : centers) best = std::max(best, ball_mass(s, c, r));
    ks.push_back(-k);  // log2 r
    ms.push_back(best);
  }
  return fit_loglog(ks, ms, false);
}

// -------- JSON descriptor ---------------------------------------------------

inline nlohmann::json measure_to_json(const MeasureSpec& s) {
  switch (s.kind) {
    case MeasureSpec::Kind::Sphere:
      return {{"kind", "sphere"}, {"d", s.d}};
    case MeasureSpec::Kind::MuAlpha:
      return {{"kind", "mu_alpha"}, {"d", s.d}, {"alpha", rat_str(s.alpha)}};
    case MeasureSpec::Kind::Cantor:
      return {{"kind", "cantor"}, {"ratio", rat_str(s.ratio)}, {"depth", s.depth}};
    case MeasureSpec::Kind::Discretized:
      return {{"kind", "discretized"}, {"d", s.d}};
  }
  throw std::logic_error("measure_to_json: bad kind");
}

inline MeasureSpec measure_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sphere") return MeasureSpec::sphere(j.at("d").get<int>());
  if (kind == "mu_alpha")
    return MeasureSpec::mu_alpha(j.at("d").get<int>(), parse_rat(j.at("alpha").get<std::string>()));
  if (kind == "cantor")
    return MeasureSpec::cantor(parse_rat(j.at("ratio").get<std::string>()),
                               j.at("depth").get<int>());
  throw std::invalid_argument("measure_from_json: unknown kind " + kind);
}

}  // namespace maxlab
