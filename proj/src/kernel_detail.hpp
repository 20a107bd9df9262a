#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "cvhg/grid.hpp"

namespace cvhg::kernels::detail {

/// A line along one axis: amplitudes base, base + step, ... (N of them).
struct LineLayout {
  std::size_t n = 0;       // points
  std::size_t step = 0;    // stride of the axis
  std::size_t count = 0;   // number of lines
  std::size_t base(std::size_t line) const { return (line / step) * n * step + line % step; }
};

inline LineLayout lines(const WaveFunction& wf, std::size_t axis) {
  LineLayout l;
  l.n = wf.grid.points;
  l.step = wf.stride(axis);
  l.count = wf.amp.size() / l.n;
  return l;
}

/// Positions of every axis at a flat index.
inline void decode(const WaveFunction& wf, std::size_t flat, double* q) {
  const std::size_t n = wf.grid.points;
  for (std::size_t a = wf.n_axes(); a-- > 0;) {
    q[a] = wf.grid.position(flat % n);
    flat /= n;
  }
}

/// K[l*N + j] = dx/sqrt(2pi) e^{sign i x_j q_l}
inline std::vector<cplx> fourier_matrix(const GridSpec& g, int sign) {
  const std::size_t n = g.points;
  const double w = g.dx() / std::sqrt(2.0 * std::numbers::pi);
  std::vector<cplx> k(n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) k[l * n + j] = std::polar(w, sign * g.position(j) * g.position(l));
  return k;
}

/// M[l*N + m]: evaluates the trigonometric interpolant of a spectrum at
/// y_l = x_l / s. Bin N/2 uses a cosine so the interpolant is real for real
/// samples. Points outside the grid get zero rows.
inline std::vector<cplx> resample_matrix(const GridSpec& g, double s) {
  const std::size_t n = g.points;
  const double x0 = g.position(0);
  const double last = g.position(n - 1);
  const double norm = 1.0 / (static_cast<double>(n) * std::sqrt(s));
  std::vector<cplx> m(n * n, cplx{0.0, 0.0});
  for (std::size_t l = 0; l < n; ++l) {
    double y = g.position(l) / s;
    if (y < x0 - 1e-12 || y > last + 1e-12) continue;
    for (std::size_t b = 0; b < n; ++b) {
      double k = g.frequency(b);
      m[l * n + b] = b == n / 2 ? cplx{norm * std::cos(k * (y - x0)), 0.0} : std::polar(norm, k * (y - x0));
    }
  }
  return m;
}

}  // namespace cvhg::kernels::detail
