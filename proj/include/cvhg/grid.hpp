#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cvhg/polynomial.hpp"

namespace cvhg {

using cplx = std::complex<double>;

/// Uniform position grid shared by every mode: x_j = -L + j dx, dx = 2L/N.
struct GridSpec {
  std::size_t n_modes = 1;
  std::size_t points = 256;
  double half_extent = 16.0;
  std::size_t memory_cap = std::size_t{2} << 30;  // bytes

  /// L = sqrt(pi N / 2), so dx^2 = 2pi/N and the Fourier kernel maps the grid
  /// onto itself. Transforms on such grids run through the FFT.
  static GridSpec self_dual(std::size_t n_modes, std::size_t points);

  double dx() const { return 2.0 * half_extent / static_cast<double>(points); }
  double position(std::size_t j) const { return -half_extent + static_cast<double>(j) * dx(); }
  /// Angular frequency of DFT bin j in signed order (bin N/2 is -N/2).
  double frequency(std::size_t j) const;
  double max_frequency() const;
  std::size_t size() const;
  bool is_self_dual() const;
  /// Throws DomainError (bad shape) or ResourceError (memory cap).
  void validate() const;
  bool operator==(const GridSpec& o) const {
    return n_modes == o.n_modes && points == o.points && half_extent == o.half_extent;
  }
};

/// Amplitudes on the product grid, axis 0 slowest. labels[a] is the symbolic
/// vertex held by axis a.
struct WaveFunction {
  GridSpec grid;
  std::vector<Vertex> labels;
  std::vector<cplx> amp;
  std::vector<std::string> warnings;

  WaveFunction() = default;
  WaveFunction(GridSpec g, std::vector<Vertex> labels);

  std::size_t n_axes() const { return labels.size(); }
  std::size_t stride(std::size_t axis) const;
  /// Throws DomainError when the vertex is not on the grid.
  std::size_t axis_of(Vertex v) const;
  double norm2() const;
  void normalize();
};

}  // namespace cvhg
