#include <cmath>
#include <numbers>
#include <vector>

#include "cvhg/kernels.hpp"
#include "kernel_detail.hpp"

namespace cvhg::kernels::serial {

namespace {

std::vector<cplx> twiddles(std::size_t n, int sign) {
  std::vector<cplx> t(n);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  return t;
}

// out_m = sum_j in_j tw[(j m) mod n]
void direct_dft(const std::vector<cplx>& in, std::vector<cplx>& out, const std::vector<cplx>& tw) {
  const std::size_t n = in.size();
  for (std::size_t m = 0; m < n; ++m) {
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) s += in[j] * tw[(j * m) % n];
    out[m] = s;
  }
}

}  // namespace

void pointwise(WaveFunction& wf, const Multiplier& f) {
  std::vector<double> q(wf.n_axes());
  for (std::size_t i = 0; i < wf.amp.size(); ++i) {
    detail::decode(wf, i, q.data());
    wf.amp[i] *= f(q.data());
  }
}

void transform(WaveFunction& wf, std::size_t axis, int sign) {
  const auto lay = detail::lines(wf, axis);
  const auto k = detail::fourier_matrix(wf.grid, sign);
  std::vector<cplx> in(lay.n);
  for (std::size_t line = 0; line < lay.count; ++line) {
    std::size_t b = lay.base(line);
    for (std::size_t j = 0; j < lay.n; ++j) in[j] = wf.amp[b + j * lay.step];
    for (std::size_t l = 0; l < lay.n; ++l) {
      cplx s{0.0, 0.0};
      for (std::size_t j = 0; j < lay.n; ++j) s += k[l * lay.n + j] * in[j];
      wf.amp[b + l * lay.step] = s;
    }
  }
}

void spectral(WaveFunction& wf, std::size_t axis, const SpectralMultiplier& f) {
  const auto lay = detail::lines(wf, axis);
  const auto fwd = twiddles(lay.n, -1);
  const auto bwd = twiddles(lay.n, +1);
  std::vector<cplx> in(lay.n), hat(lay.n), out(lay.n);
  std::vector<double> q(wf.n_axes());
  const double inv_n = 1.0 / static_cast<double>(lay.n);
  for (std::size_t line = 0; line < lay.count; ++line) {
    std::size_t b = lay.base(line);
    detail::decode(wf, b, q.data());
    for (std::size_t j = 0; j < lay.n; ++j) in[j] = wf.amp[b + j * lay.step];
    direct_dft(in, hat, fwd);
    for (std::size_t m = 0; m < lay.n; ++m) hat[m] *= f(wf.grid.frequency(m), q.data());
    direct_dft(hat, out, bwd);
    for (std::size_t j = 0; j < lay.n; ++j) wf.amp[b + j * lay.step] = out[j] * inv_n;
  }
}

void resample(WaveFunction& wf, std::size_t axis, double s) {
  const auto lay = detail::lines(wf, axis);
  const auto fwd = twiddles(lay.n, -1);
  const auto m = detail::resample_matrix(wf.grid, s);
  std::vector<cplx> in(lay.n), hat(lay.n);
  for (std::size_t line = 0; line < lay.count; ++line) {
    std::size_t b = lay.base(line);
    for (std::size_t j = 0; j < lay.n; ++j) in[j] = wf.amp[b + j * lay.step];
    direct_dft(in, hat, fwd);
    for (std::size_t l = 0; l < lay.n; ++l) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < lay.n; ++k) acc += m[l * lay.n + k] * hat[k];
      wf.amp[b + l * lay.step] = acc;
    }
  }
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s * std::pow(a.grid.dx(), static_cast<double>(a.n_axes()));
}

}  // namespace cvhg::kernels::serial
