#pragma once

#include <cstddef>
#include <functional>

#include "cvhg/grid.hpp"

namespace cvhg::kernels {

/// Pointwise factor; q holds the position of every axis.
using Multiplier = std::function<cplx(const double* q)>;
/// Factor in the momentum representation of one axis; q holds the positions
/// of the other axes (the transformed axis entry is unspecified).
using SpectralMultiplier = std::function<cplx(double k, const double* q)>;

/// The grid primitives. `serial` is the plain reference (direct O(N^2) sums,
/// no threads); `parallel` distributes lines over OpenMP threads and uses FFTW
/// where the grid allows it. Both compute the same sums.
struct KernelSet {
  /// amp *= f(q)
  void (*pointwise)(WaveFunction&, const Multiplier&);
  /// (T psi)(q_l) = dx/sqrt(2pi) sum_j psi(x_j) e^{sign i x_j q_l}; sign +1 is F.
  void (*transform)(WaveFunction&, std::size_t axis, int sign);
  /// DFT along the axis, multiply bin k by f(k, q), inverse DFT.
  void (*spectral)(WaveFunction&, std::size_t axis, const SpectralMultiplier&);
  /// psi(q) -> s^{-1/2} psi(q/s) by trigonometric interpolation; zero outside the grid.
  void (*resample)(WaveFunction&, std::size_t axis, double s);
  /// <a|b> as a Riemann sum (dx^n weight).
  cplx (*inner)(const WaveFunction&, const WaveFunction&);
};

namespace serial {
void pointwise(WaveFunction& wf, const Multiplier& f);
void transform(WaveFunction& wf, std::size_t axis, int sign);
void spectral(WaveFunction& wf, std::size_t axis, const SpectralMultiplier& f);
void resample(WaveFunction& wf, std::size_t axis, double s);
cplx inner(const WaveFunction& a, const WaveFunction& b);
}  // namespace serial

namespace parallel {
void pointwise(WaveFunction& wf, const Multiplier& f);
void transform(WaveFunction& wf, std::size_t axis, int sign);
void spectral(WaveFunction& wf, std::size_t axis, const SpectralMultiplier& f);
void resample(WaveFunction& wf, std::size_t axis, double s);
cplx inner(const WaveFunction& a, const WaveFunction& b);
}  // namespace parallel

enum class Backend { Serial, Parallel };

const KernelSet& kernel_set(Backend b);
/// The set used by the numerics module; Parallel unless changed.
const KernelSet& active();
void set_backend(Backend b);
Backend backend();

}  // namespace cvhg::kernels
