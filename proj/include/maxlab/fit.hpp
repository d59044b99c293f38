#pragma once

// Least-squares slope fitting on log2-log2 data.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace maxlab {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int n_points = 0;
};

inline SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fit_line: need >= 3 matching points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.stderr_slope = (n > 2) ? std::sqrt(ss / ((n - 2) * sxx)) : 0.0;
  f.window_lo = x.front();
  f.window_hi = x.back();
  f.n_points = static_cast<int>(n);
  return f;
}

// Fit of log2(values) against abscissae, dropping the two extreme sweep
// points when enough remain (boundary effects: Nyquist ceiling, mollifier
// floor).
inline SlopeFit fit_loglog(const std::vector<double>& abscissae,
                           const std::vector<double>& values,
                           bool exclude_extremes = true) {
  if (abscissae.size() != values.size() || abscissae.size() < 3)
    throw std::invalid_argument("fit_loglog: need >= 3 matching points");
  std::size_t lo = 0, hi = abscissae.size();
  if (exclude_extremes && hi - lo >= 5) {
    ++lo;
    --hi;
  }
  std::vector<double> x, y;
  for (std::size_t i = lo; i < hi; ++i) {
    if (!(values[i] > 0.0)) throw std::invalid_argument("fit_loglog: nonpositive value");
    x.push_back(abscissae[i]);
    y.push_back(std::log2(values[i]));
  }
  return fit_line(x, y);
}

}  // namespace maxlab
