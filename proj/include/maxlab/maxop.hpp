#pragma once

// Maximal-operator engines: local/global/frequency-localized maximal
// functions, H^1 atoms, dispersive kernels, Strichartz ratios, and the
// envelope-mollifier bound. All t-sweeps run on a worker pool with
// fixed-order reductions so reports are identical across thread counts.

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "maxlab/fit.hpp"
#include "maxlab/measures.hpp"

namespace maxlab {

inline int& worker_threads() {
  static int n = 1;
  return n;
}

// Run fn(i) for i in [0, count) on the worker pool. Tasks must be pure with
// respect to shared state except their own output slot.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  int nt = std::max(1, worker_threads());
  if (nt == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

struct TGrid {
  double t_min = 1.0;
  double t_max = 2.0;
  double step = 0.125;
  std::vector<double> samples;
};

inline TGrid make_tgrid(double t_min, double t_max, double step) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !(step > 0.0))
    throw std::invalid_argument("make_tgrid: need 0 < t_min <= t_max, step > 0");
  TGrid g;
  g.t_min = t_min;
  g.t_max = t_max;
  g.step = step;
  for (double t = t_min; t <= t_max + 1e-12 * step; t += step) g.samples.push_back(t);
  return g;
}

namespace detail {

// sup over t of |IFFT(f_hat . sym(t, |xi|))|. f_hat computed once; each t is
// an independent task writing its own field; the pointwise max is merged
// afterwards (max of nonneg doubles is order-independent).
inline GridField sup_radial_multiplier(const GridField& f,
                                       const std::function<double(double, double)>& sym,
                                       const std::vector<double>& ts) {
  if (ts.empty()) throw std::invalid_argument("sup_radial_multiplier: empty t grid");
  GridField fhat = f;
  fft_inplace(fhat, FFTW_FORWARD);
  GridField out = f;
  for (auto& v : out.values) v = 0.0;

  // the frequency-radius lattice is shared by every t; precompute it in d = 2
  // where the per-cell hypot otherwise dominates the multiplier loop
  std::vector<double> rad2;
  if (f.d == 2) {
    int n = f.n;
    rad2.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      double xi0 = f.freq(i);
      for (int k = 0; k < n; ++k)
        rad2[static_cast<std::size_t>(i) * n + k] = std::hypot(xi0, f.freq(k));
    }
  }

  // batches bound peak memory to ~batch fields
  std::size_t batch = std::max<std::size_t>(1, worker_threads());
  std::vector<GridField> work(std::min(batch, ts.size()));
  for (std::size_t start = 0; start < ts.size(); start += batch) {
    std::size_t cnt = std::min(batch, ts.size() - start);
    parallel_for(cnt, [&](std::size_t w) {
      double t = ts[start + w];
      GridField& g = work[w];
      g = fhat;
      std::array<double, 3> xi{0, 0, 0};
      int n = g.n;
      auto mul = [&](std::size_t idx, double r) { g.values[idx] *= sym(t, r); };
      if (g.d == 1) {
        for (int i = 0; i < n; ++i) mul(i, std::abs(g.freq(i)));
      } else if (g.d == 2) {
        for (std::size_t idx = 0; idx < rad2.size(); ++idx) mul(idx, rad2[idx]);
      } else {
        for (int i = 0; i < n; ++i) {
          xi[0] = g.freq(i);
          for (int k = 0; k < n; ++k) {
            xi[1] = g.freq(k);
            double r2 = xi[0] * xi[0] + xi[1] * xi[1];
            std::size_t base = (static_cast<std::size_t>(i) * n + k) * n;
            for (int m = 0; m < n; ++m) {
              xi[2] = g.freq(m);
              mul(base + m, std::sqrt(r2 + xi[2] * xi[2]));
            }
          }
        }
      }
      fft_inplace(g, FFTW_BACKWARD);
    });
    for (std::size_t w = 0; w < cnt; ++w)
      for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = cplx(std::max(out.values[i].real(), std::abs(work[w].values[i])), 0.0);
  }
  return out;
}

}  // namespace detail

// M^loc: sup over sampled t in I = [1,2] of |f * mu_t|.
inline GridField local_maximal(const GridField& f, const MeasureSpec& s, const TGrid& tg) {
  if (tg.samples.empty() || tg.t_min < 1.0 - 1e-12 || tg.t_max > 2.0 + 1e-12)
    throw std::invalid_argument("local_maximal: tgrid must lie in [1,2]");
  return detail::sup_radial_multiplier(
      f, [&s](double t, double r) { return measure_symbol(s, t * r); }, tg.samples);
}

// One dyadic block: sup over t in 2^{-k} [1,2).
inline GridField block_maximal(const GridField& f, const MeasureSpec& s, int k, const TGrid& tg) {
  double sc = std::ldexp(1.0, -k);
  if (1.0 + 2.0 * sc > f.L)
    throw std::invalid_argument("block_maximal: dilation 2^{1-k} spills out of the box");
  std::vector<double> ts;
  for (double t : tg.samples) ts.push_back(sc * t);
  return detail::sup_radial_multiplier(
      f, [&s](double t, double r) { return measure_symbol(s, t * r); }, ts);
}

inline GridField global_maximal(const GridField& f, const MeasureSpec& s,
                                const std::vector<int>& k_range, const TGrid& tg) {
  if (k_range.empty()) throw std::invalid_argument("global_maximal: empty k_range");
  GridField out = f;
  for (auto& v : out.values) v = 0.0;
  for (int k : k_range) {
    GridField b = block_maximal(f, s, k, tg);
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = cplx(std::max(out.values[i].real(), b.values[i].real()), 0.0);
  }
  return out;
}

// T_j^*: sup over t of the multiplier mu_hat(t xi) phi_j(t |xi|).
inline GridField tj_star(const GridField& f, const MeasureSpec& s, int j, const TGrid& tg) {
  // The shell must be representable at the largest dilation; for smaller t the
  // lattice truncates the part of the shell beyond the Nyquist frequency.
  double ximax = f.n / (4.0 * f.L);
  if (std::ldexp(1.0, j + 1) / tg.t_max > ximax)
    throw std::invalid_argument("tj_star: shell 2^{j+1}/t_max exceeds Nyquist " +
                                std::to_string(ximax));
  return detail::sup_radial_multiplier(
      f,
      [&s, j](double t, double r) {
        double cut = phi_j(j, t * r);
        return cut == 0.0 ? 0.0 : measure_symbol(s, t * r) * cut;
      },
      tg.samples);
}

// M_j^loc = local maximal function of the Littlewood-Paley piece.
inline GridField mj_local(const GridField& f, const MeasureSpec& s, int j, const TGrid& tg) {
  return local_maximal(lp_project(f, j), s, tg);
}

// -------- atoms --------------------------------------------------------------

struct Atom {
  GridField field;
  double r = 0.0;
  std::array<double, 3> center{0, 0, 0};
};

enum class AtomProfile { TwoBump, RadialDerivative };

namespace detail {
inline double bump_phi(double u) {  // C_c^inf, support |u| < 1
  double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}
}  // namespace detail

inline double ball_volume(int d, double r) {
  if (d == 1) return 2.0 * r;
  if (d == 2) return M_PI * r * r;
  return 4.0 * M_PI / 3.0 * r * r * r;
}

// H^1 atom on B(0, r): (A1) support, (A2) sup bound |B|^{-1}, (A3) zero mean.
inline Atom make_atom(int d, int n, double L, double r, AtomProfile profile) {
  if (!(r > 0.0) || r > 0.25) throw std::invalid_argument("make_atom: 0 < r <= 1/4");
  if (2.0 * L / n > r / 8.0)
    throw std::invalid_argument("make_atom: need >= 8 cells across r");
  auto raw = [&](const std::array<double, 3>& x) -> double {
    double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (profile == AtomProfile::RadialDerivative)
      return std::ldexp(1.0, d) * detail::bump_phi(2.0 * rho / r) - detail::bump_phi(rho / r);
    // two-bump: opposite-sign bumps at +-(r/2) e1, width r/4
    std::array<double, 3> p{x[0] - r / 2, x[1], x[2]};
    std::array<double, 3> q{x[0] + r / 2, x[1], x[2]};
    double dp = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    double dq = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    return detail::bump_phi(4.0 * dp / r) - detail::bump_phi(4.0 * dq / r);
  };
  Atom a;
  a.r = r;
  a.field = make_field(d, n, L, raw);
  // exact discrete mean-zero (A3), then sup normalization (A2)
  double mean = 0.0;
  for (auto& v : a.field.values) mean += v.real();
  mean /= static_cast<double>(a.field.size());
  double sup = 0.0;
  std::size_t inside = 0;
  for (auto& v : a.field.values)
    if (v.real() != 0.0) ++inside;
  for (auto& v : a.field.values) {
    if (v.real() != 0.0) v -= mean * static_cast<double>(a.field.size()) / inside;
    sup = std::max(sup, std::abs(v.real()));
  }
  double target = 1.0 / ball_volume(d, r);
  for (auto& v : a.field.values) v *= target / sup;
  return a;
}

struct AtomExperiment {
  double i_near = 0.0;
  double i_far = 0.0;
  double total = 0.0;
};

// L^1 mass of T_j^* a, split at |x| = 4r.
inline AtomExperiment atom_experiment(const MeasureSpec& s, const Atom& a, int j,
                                      const TGrid& tg) {
  GridField m = tj_star(a.field, s, j, tg);
  AtomExperiment e;
  const double vol = m.cell_volume();
  std::array<double, 3> x{0, 0, 0};
  int n = m.n;
  for (std::size_t idx = 0; idx < m.values.size(); ++idx) {
    std::size_t rem = idx;
    for (int k = m.d - 1; k >= 0; --k) {
      x[k] = m.coord(static_cast<int>(rem % n));
      rem /= n;
    }
    double v = m.values[idx].real() * vol;
    double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (rho <= 4.0 * a.r)
      e.i_near += v;
    else
      e.i_far += v;
  }
  e.total = e.i_near + e.i_far;
  return e;
}

// -------- certificates and mixed norms ---------------------------------------

// Right side of Eq. (3.8): 2^{j/r} ||F||_{L^r(x,t)} + 2^{j(1/r-1)} ||dF/dt||.
// F_t = P_j f * mu_t; the t-derivative symbol is |xi| mu_hat'(t|xi|) phi_j.
inline double ftc_sup_bound(const GridField& f, const MeasureSpec& s, int j, double r,
                            const TGrid& tg) {
  if (!(r >= 1.0)) throw std::invalid_argument("ftc_sup_bound: r >= 1");
  GridField pj = lp_project(f, j);
  std::size_t nt = tg.samples.size();
  std::vector<double> fr(nt), dfr(nt);
  parallel_for(nt, [&](std::size_t i) {
    double t = tg.samples[i];
    GridField F = apply_radial_multiplier(
        pj, [&](double rho) { return cplx(measure_symbol(s, t * rho), 0.0); });
    GridField dF = apply_radial_multiplier(
        pj, [&](double rho) { return cplx(rho * measure_symbol_prime(s, t * rho), 0.0); });
    fr[i] = std::pow(lp_norm(F, r), r);
    dfr[i] = std::pow(lp_norm(dF, r), r);
  });
  // trapezoid in t, fixed order
  double a1 = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    double dt = tg.samples[i + 1] - tg.samples[i];
    a1 += 0.5 * dt * (fr[i] + fr[i + 1]);
    a2 += 0.5 * dt * (dfr[i] + dfr[i + 1]);
  }
  if (nt == 1) {
    a1 = fr[0];
    a2 = dfr[0];
  }
  return std::pow(a1, 1.0 / r) * std::pow(2.0, static_cast<double>(j) / r) +
         std::pow(a2, 1.0 / r) * std::pow(2.0, j * (1.0 / r - 1.0));
}

// || P_j(mu_t * conj(mu_s)) ||_inf: the field whose spectrum is
// mu_hat(t xi) mu_hat(s xi) phi_j(|xi|)  (our symbols are real).
inline double dispersive_norm(const MeasureSpec& s, int d, int n, double L, int j, double t,
                              double tt) {
  GridField g = field_from_spectrum(d, n, L, [&](const std::array<double, 3>& xi) {
    double rho = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    double cut = phi_j(j, rho);
    if (cut == 0.0) return cplx(0.0, 0.0);
    return cplx(measure_symbol(s, t * rho) * measure_symbol(s, tt * rho) * cut, 0.0);
  });
  double sup = 0.0;
  for (auto& v : g.values) sup = std::max(sup, std::abs(v));
  return sup;
}

// || P_j f * mu_t ||_{L^q_{x,t}(R^d x I)} / ||f||_2, joint q-integral via
// trapezoid in t.
inline double strichartz_ratio(const GridField& f, const MeasureSpec& s, int j, double q,
                               const TGrid& tg) {
  if (!(q >= 1.0) || std::isinf(q)) throw std::invalid_argument("strichartz_ratio: finite q >= 1");
  GridField pj = lp_project(f, j);
  std::size_t nt = tg.samples.size();
  std::vector<double> qs(nt);
  parallel_for(nt, [&](std::size_t i) {
    double t = tg.samples[i];
    GridField F = apply_radial_multiplier(
        pj, [&](double rho) { return cplx(measure_symbol(s, t * rho), 0.0); });
    qs[i] = std::pow(lp_norm(F, q), q);
  });
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < nt; ++i)
    acc += 0.5 * (tg.samples[i + 1] - tg.samples[i]) * (qs[i] + qs[i + 1]);
  if (nt == 1) acc = qs[0];
  return std::pow(acc, 1.0 / q) / lp_norm(f, 2.0);
}

// -------- Lemma 3.1 engine (quadrature, no grid) ------------------------------

namespace detail {

// (E^N_{1/R} * mu_t)(x) for |x| = s, d = 2 measures, by nested quadrature.
inline double phi_conv_at(const MeasureSpec& spec, int N, double R, double t, double s) {
  double rho_inv = 1.0 / R;
  auto along_circle = [&](double radius) {
    // average of E over the circle of given radius against the center at s
    int m = std::max<int>(2048, static_cast<int>(64.0 * R));
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      double th = M_PI * (i + 0.5) / m;  // symmetry: half circle, weight 2
      double dist = std::sqrt(std::max(0.0, s * s + radius * radius -
                                                 2.0 * s * radius * std::cos(th)));
      acc += envelope(N, rho_inv, 2, dist);
    }
    return acc / m;  // (1/2pi) int_0^{2pi} = (1/pi) int_0^pi
  };
  switch (spec.kind) {
    case MeasureSpec::Kind::Sphere:
      return along_circle(t);
    case MeasureSpec::Kind::MuAlpha: {
      double alpha = rat_double(spec.alpha);
      const int m = 256;
      double acc = 0.0;
      // w = (1 - rho^2)^alpha substitution, mass element 2 pi rho drho ...
      for (int i = 0; i < m; ++i) {
        double w = (i + 0.5) / m;
        double rho = std::sqrt(1.0 - std::pow(w, 1.0 / alpha));
        acc += along_circle(t * rho);
      }
      // Gamma(alpha)^{-1} * pi / alpha * ... : total weight reproduces the mass
      return acc / m * M_PI / alpha / std::tgamma(alpha);
    }
    default:
      throw std::invalid_argument("phi_convolution_bound: d=2 Sphere/MuAlpha only");
  }
}

}  // namespace detail

// sup_x |E^N_{1/R} * mu_t| over an adaptive radial scan.
inline double phi_convolution_bound(const MeasureSpec& spec, int N, double R, double t) {
  if (!(R >= 1.0) || !(t >= 1.0 && t <= 2.0))
    throw std::invalid_argument("phi_convolution_bound: R >= 1, t in I");
  std::vector<double> scan;
  for (int i = 0; i <= 64; ++i) scan.push_back((t + 1.5) * i / 64.0);
  for (int i = -32; i <= 32; ++i) scan.push_back(t + 4.0 * i / (32.0 * R));
  double sup = 0.0;
  std::vector<double> vals(scan.size());
  parallel_for(scan.size(), [&](std::size_t i) {
    vals[i] = scan[i] >= 0.0 ? detail::phi_conv_at(spec, N, R, t, scan[i]) : 0.0;
  });
  for (double v : vals) sup = std::max(sup, v);
  return sup;
}

}  // namespace maxlab
