#pragma once

// Periodic-lattice fields on [-L, L)^d, DFT-based multiplier application,
// Littlewood-Paley projections, and Lebesgue/Lorentz norms.

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxlab/bumps.hpp"

namespace maxlab {

using cplx = std::complex<double>;

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct GridField {
  int d = 1;
  int n = 0;          // points per axis, power of two
  double L = 4.0;     // box half-width
  std::vector<cplx> values;  // size n^d, row-major

  std::size_t size() const {
    std::size_t s = 1;
    for (int k = 0; k < d; ++k) s *= static_cast<std::size_t>(n);
    return s;
  }
  double cell_width() const { return 2.0 * L / n; }
  double cell_volume() const { return std::pow(cell_width(), d); }
  // frequency index m in [-n/2, n/2) for array index i
  int freq_index(int i) const { return i < n / 2 ? i : i - n; }
  double freq(int i) const { return freq_index(i) / (2.0 * L); }
  double coord(int i) const { return -L + (i + 0.5) * cell_width(); }
  // largest j with 2^{j+1} <= max |xi| = n/(4L)
  int max_lp_j() const {
    double ximax = n / (4.0 * L);
    int j = -1;
    while (std::ldexp(1.0, j + 2) <= ximax) ++j;
    return j;
  }
  void check_valid() const {
    if (d < 1 || d > 3) throw std::invalid_argument("GridField: d must be 1..3");
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("GridField: n must be a power of two");
    if (!(L > 0.0)) throw std::invalid_argument("GridField: L must be positive");
  }
};

inline GridField make_field(int d, int n, double L,
                            const std::function<double(const std::array<double, 3>&)>& sampler) {
  GridField f;
  f.d = d;
  f.n = n;
  f.L = L;
  f.check_valid();
  f.values.resize(f.size());
  std::array<double, 3> x{0, 0, 0};
  if (d == 1) {
    for (int i = 0; i < n; ++i) {
      x[0] = f.coord(i);
      f.values[i] = sampler(x);
    }
  } else if (d == 2) {
    for (int i = 0; i < n; ++i) {
      x[0] = f.coord(i);
      for (int k = 0; k < n; ++k) {
        x[1] = f.coord(k);
        f.values[static_cast<std::size_t>(i) * n + k] = sampler(x);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      x[0] = f.coord(i);
      for (int k = 0; k < n; ++k) {
        x[1] = f.coord(k);
        std::size_t base = (static_cast<std::size_t>(i) * n + k) * n;
        for (int m = 0; m < n; ++m) {
          x[2] = f.coord(m);
          f.values[base + m] = sampler(x);
        }
      }
    }
  }
  return f;
}

// In-place DFT, sign = FFTW_FORWARD or FFTW_BACKWARD. Backward is scaled by
// 1/n^d so forward+backward is the identity.
inline void fft_inplace(GridField& f, int sign) {
  f.check_valid();
  int dims[3] = {f.n, f.n, f.n};
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    plan = fftw_plan_dft(f.d, dims, reinterpret_cast<fftw_complex*>(f.values.data()),
                         reinterpret_cast<fftw_complex*>(f.values.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (sign == FFTW_BACKWARD) {
    double inv = 1.0 / static_cast<double>(f.size());
    for (auto& v : f.values) v *= inv;
  }
}

// Apply a frequency multiplier m(xi) given as a callable on the frequency
// vector; returns the multiplied field in space.
inline GridField apply_multiplier(const GridField& f,
                                  const std::function<cplx(const std::array<double, 3>&)>& sym) {
  GridField g = f;
  fft_inplace(g, FFTW_FORWARD);
  std::array<double, 3> xi{0, 0, 0};
  int n = g.n;
  if (g.d == 1) {
    for (int i = 0; i < n; ++i) {
      xi[0] = g.freq(i);
      g.values[i] *= sym(xi);
    }
  } else if (g.d == 2) {
    for (int i = 0; i < n; ++i) {
      xi[0] = g.freq(i);
      for (int k = 0; k < n; ++k) {
        xi[1] = g.freq(k);
        g.values[static_cast<std::size_t>(i) * n + k] *= sym(xi);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      xi[0] = g.freq(i);
      for (int k = 0; k < n; ++k) {
        xi[1] = g.freq(k);
        std::size_t base = (static_cast<std::size_t>(i) * n + k) * n;
        for (int m = 0; m < n; ++m) {
          xi[2] = g.freq(m);
          g.values[base + m] *= sym(xi);
        }
      }
    }
  }
  fft_inplace(g, FFTW_BACKWARD);
  return g;
}

// Radial multiplier variant: m = sym(|xi|).
inline GridField apply_radial_multiplier(const GridField& f,
                                         const std::function<cplx(double)>& sym) {
  return apply_multiplier(f, [&sym](const std::array<double, 3>& xi) {
    return sym(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]));
  });
}

// Build the field whose continuum Fourier transform is sym on the lattice:
// g(x_i) = sum_m sym(xi_m) e^{2 pi i x_i . xi_m} / (2L)^d. The cell-center
// offset enters as a per-axis phase e^{i pi f_m (1/n - 1)}.
inline GridField field_from_spectrum(int d, int n, double L,
                                     const std::function<cplx(const std::array<double, 3>&)>& sym) {
  GridField g;
  g.d = d;
  g.n = n;
  g.L = L;
  g.check_valid();
  g.values.resize(g.size());
  double scale = std::pow(2.0 * L, -d) * static_cast<double>(g.size());
  std::array<double, 3> xi{0, 0, 0};
  auto axis_phase = [n](int fm) {
    return std::polar(1.0, M_PI * fm * (1.0 / n - 1.0));
  };
  if (d == 1) {
    for (int i = 0; i < n; ++i) {
      xi[0] = g.freq(i);
      g.values[i] = sym(xi) * axis_phase(g.freq_index(i)) * scale;
    }
  } else if (d == 2) {
    for (int i = 0; i < n; ++i) {
      xi[0] = g.freq(i);
      cplx pi0 = axis_phase(g.freq_index(i));
      for (int k = 0; k < n; ++k) {
        xi[1] = g.freq(k);
        g.values[static_cast<std::size_t>(i) * n + k] =
            sym(xi) * pi0 * axis_phase(g.freq_index(k)) * scale;
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      xi[0] = g.freq(i);
      cplx pi0 = axis_phase(g.freq_index(i));
      for (int k = 0; k < n; ++k) {
        xi[1] = g.freq(k);
        cplx pik = pi0 * axis_phase(g.freq_index(k));
        std::size_t base = (static_cast<std::size_t>(i) * n + k) * n;
        for (int m = 0; m < n; ++m) {
          xi[2] = g.freq(m);
          g.values[base + m] = sym(xi) * pik * axis_phase(g.freq_index(m)) * scale;
        }
      }
    }
  }
  fft_inplace(g, FFTW_BACKWARD);
  return g;
}

// Littlewood-Paley projection P_j (phi_0 low-pass at j = 0).
inline GridField lp_project(const GridField& f, int j) {
  if (j < 0) throw std::invalid_argument("lp_project: j must be >= 0");
  int jmax = f.max_lp_j();
  if (j > jmax)
    throw std::invalid_argument("lp_project: shell 2^" + std::to_string(j) +
                                " exceeds Nyquist; max admissible j = " + std::to_string(jmax));
  if (j == 0) return apply_radial_multiplier(f, [](double r) { return cplx(phi_0(r), 0.0); });
  return apply_radial_multiplier(f, [j](double r) { return cplx(phi_j(j, r), 0.0); });
}

inline double lp_norm(const GridField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (const auto& v : f.values) {
    double a = std::abs(v);
    if (!std::isfinite(a)) throw std::invalid_argument("lp_norm: non-finite value");
    s += std::pow(a, p);
  }
  return std::pow(s * f.cell_volume(), 1.0 / p);
}

// Lorentz quasi-norm (int_0^inf (s^{1/p} f*(s))^r ds/s)^{1/r}, computed
// exactly on the step function given by the cell-atom rearrangement.
inline double lorentz_norm(const GridField& f, double p, double r) {
  if (!(p > 0.0) || !(r > 0.0)) throw std::invalid_argument("lorentz_norm: p, r must be > 0");
  std::vector<double> a(f.values.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::abs(f.values[i]);
    if (!std::isfinite(a[i])) throw std::invalid_argument("lorentz_norm: non-finite value");
  }
  std::sort(a.begin(), a.end(), std::greater<double>());
  const double V = f.cell_volume();
  if (std::isinf(r)) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) break;
      m = std::max(m, std::pow((i + 1) * V, 1.0 / p) * a[i]);
    }
    return m;
  }
  // int over ((i-1)V, iV]: v_i^r * (p/r) * ((iV)^{r/p} - ((i-1)V)^{r/p})
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) break;
    double cur = std::pow((i + 1) * V, r / p);
    total += std::pow(a[i], r) * (p / r) * (cur - prev);
    prev = cur;
  }
  return std::pow(total, 1.0 / r);
}

// E^N_rho(x) = rho^{-d} (1 + |x|/rho)^{-N}
inline double envelope(int N, double rho, int d, double xnorm) {
  if (N <= d || !(rho > 0.0)) throw std::invalid_argument("envelope: need N > d, rho > 0");
  return std::pow(rho, -d) * std::pow(1.0 + xnorm / rho, -N);
}

// Locally-constant property: sup over |h| <= rho of E(y - h) within 2^N of
// E(y), sampled on a fine 1-d h-lattice along the radial direction.
inline bool envelope_locally_constant_check(int N, double rho, int d,
                                            const std::vector<double>& sample_norms) {
  for (double y : sample_norms) {
    double sup = 0.0;
    for (int i = -64; i <= 64; ++i) {
      double h = rho * i / 64.0;
      sup = std::max(sup, envelope(N, rho, d, std::abs(y - h)));
    }
    double center = envelope(N, rho, d, y);
    double factor = std::ldexp(1.0, N);
    if (!(sup <= factor * center && sup >= center / factor)) return false;
  }
  return true;
}

// Flat binary export: int64 d, int64 n, float64 L, then n^d complex values
// as little-endian float64 pairs (re, im). Import inverts it.
inline void write_field(const GridField& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_field: cannot open " + path);
  std::int64_t d = f.d, n = f.n;
  std::fwrite(&d, sizeof d, 1, fp);
  std::fwrite(&n, sizeof n, 1, fp);
  std::fwrite(&f.L, sizeof f.L, 1, fp);
  std::fwrite(f.values.data(), sizeof(cplx), f.values.size(), fp);
  std::fclose(fp);
}

inline GridField read_field(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("read_field: cannot open " + path);
  std::int64_t d = 0, n = 0;
  GridField f;
  if (std::fread(&d, sizeof d, 1, fp) != 1 || std::fread(&n, sizeof n, 1, fp) != 1 ||
      std::fread(&f.L, sizeof f.L, 1, fp) != 1) {
    std::fclose(fp);
    throw std::runtime_error("read_field: truncated header");
  }
  f.d = static_cast<int>(d);
  f.n = static_cast<int>(n);
  f.check_valid();
  f.values.resize(f.size());
  std::size_t got = std::fread(f.values.data(), sizeof(cplx), f.values.size(), fp);
  std::fclose(fp);
  if (got != f.values.size()) throw std::runtime_error("read_field: truncated payload");
  return f;
}

}  // namespace maxlab
