#include "cvhg/grid.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cvhg/error.hpp"

namespace cvhg {

GridSpec GridSpec::self_dual(std::size_t n_modes, std::size_t points) {
  GridSpec g;
  g.n_modes = n_modes;
  g.points = points;
  g.half_extent = std::sqrt(std::numbers::pi * static_cast<double>(points) / 2.0);
  return g;
}

double GridSpec::frequency(std::size_t j) const {
  double dk = 2.0 * std::numbers::pi / (static_cast<double>(points) * dx());
  auto signed_j = static_cast<long long>(j);
  if (j >= points / 2) signed_j -= static_cast<long long>(points);
  return static_cast<double>(signed_j) * dk;
}

double GridSpec::max_frequency() const { return std::numbers::pi / dx(); }

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (std::size_t i = 0; i < n_modes; ++i) s *= points;
  return s;
}

bool GridSpec::is_self_dual() const {
  double d = dx();
  return std::abs(d * d - 2.0 * std::numbers::pi / static_cast<double>(points)) < 1e-12 * d * d;
}

void GridSpec::validate() const {
  if (n_modes > 5) throw DomainError(fmt::format("grids hold at most 5 modes, got {}", n_modes));
  if (points < 2 || (points & (points - 1)) != 0)
    throw DomainError(fmt::format("points per mode must be a power of two, got {}", points));
  if (!(half_extent > 0.0)) throw DomainError("grid half-extent must be positive");
  double bytes = static_cast<double>(sizeof(std::complex<double>));
  for (std::size_t i = 0; i < n_modes; ++i) bytes *= static_cast<double>(points);
  if (bytes > static_cast<double>(memory_cap))
    throw ResourceError(fmt::format("grid of {}^{} amplitudes needs {:.0f} MiB, cap is {} MiB", points, n_modes,
                                    bytes / (1 << 20), memory_cap >> 20));
}

WaveFunction::WaveFunction(GridSpec g, std::vector<Vertex> l) : grid(g), labels(std::move(l)) {
  grid.n_modes = labels.size();
  grid.validate();
  amp.assign(grid.size(), cplx{0.0, 0.0});
}

std::size_t WaveFunction::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t a = axis + 1; a < labels.size(); ++a) s *= grid.points;
  return s;
}

std::size_t WaveFunction::axis_of(Vertex v) const {
  for (std::size_t a = 0; a < labels.size(); ++a)
    if (labels[a] == v) return a;
  throw DomainError(fmt::format("mode {} is not on the grid", v));
}

double WaveFunction::norm2() const {
  double s = 0.0;
  for (const cplx& z : amp) s += std::norm(z);
  return s * std::pow(grid.dx(), static_cast<double>(labels.size()));
}

void WaveFunction::normalize() {
  double n = norm2();
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero wavefunction");
  double f = 1.0 / std::sqrt(n);
  for (cplx& z : amp) z *= f;
}

}  // namespace cvhg
