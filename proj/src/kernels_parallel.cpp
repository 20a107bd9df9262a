#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <fftw3.h>
#include <omp.h>

#include "cvhg/kernels.hpp"
#include "kernel_detail.hpp"

namespace cvhg::kernels::parallel {

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer alloc(std::size_t n) { return Buffer(fftw_alloc_complex(n)); }

/// A 1-D plan usable from several threads through fftw_execute_dft. Planning
/// is not thread-safe, so it happens here, outside the parallel regions.
class Plan {
 public:
  Plan(std::size_t n, int dir) {
    Buffer a = alloc(n), b = alloc(n);
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), a.get(), b.get(), dir, FFTW_ESTIMATE);
  }
  ~Plan() { fftw_destroy_plan(plan_); }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  void run(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan_, in, out); }

 private:
  fftw_plan plan_;
};

cplx* as_cplx(fftw_complex* p) { return reinterpret_cast<cplx*>(p); }

}  // namespace

void pointwise(WaveFunction& wf, const Multiplier& f) {
  const auto total = static_cast<long long>(wf.amp.size());
  const std::size_t axes = wf.n_axes();
#pragma omp parallel
  {
    std::vector<double> q(axes);
#pragma omp for schedule(static)
    for (long long i = 0; i < total; ++i) {
      detail::decode(wf, static_cast<std::size_t>(i), q.data());
      wf.amp[static_cast<std::size_t>(i)] *= f(q.data());
    }
  }
}

void transform(WaveFunction& wf, std::size_t axis, int sign) {
  const auto lay = detail::lines(wf, axis);
  const auto count = static_cast<long long>(lay.count);
  const std::size_t n = lay.n;
  if (wf.grid.is_self_dual()) {
    // x_j q_l = L^2 - pi (j + l) + 2pi j l / N on a self-dual grid.
    const double l2 = wf.grid.half_extent * wf.grid.half_extent;
    const cplx pre = std::polar(wf.grid.dx() / std::sqrt(2.0 * std::numbers::pi), sign * l2);
    Plan plan(n, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD);
#pragma omp parallel
    {
      Buffer in = alloc(n), out = alloc(n);
#pragma omp for schedule(static)
      for (long long line = 0; line < count; ++line) {
        std::size_t b = lay.base(static_cast<std::size_t>(line));
        for (std::size_t j = 0; j < n; ++j) {
          cplx v = wf.amp[b + j * lay.step];
          as_cplx(in.get())[j] = (j & 1) ? -v : v;
        }
        plan.run(in.get(), out.get());
        for (std::size_t l = 0; l < n; ++l) {
          cplx v = pre * as_cplx(out.get())[l];
          wf.amp[b + l * lay.step] = (l & 1) ? -v : v;
        }
      }
    }
    return;
  }
  const auto k = detail::fourier_matrix(wf.grid, sign);
#pragma omp parallel
  {
    std::vector<cplx> in(n);
#pragma omp for schedule(static)
    for (long long line = 0; line < count; ++line) {
      std::size_t b = lay.base(static_cast<std::size_t>(line));
      for (std::size_t j = 0; j < n; ++j) in[j] = wf.amp[b + j * lay.step];
      for (std::size_t l = 0; l < n; ++l) {
        cplx s{0.0, 0.0};
        const cplx* row = &k[l * n];
        for (std::size_t j = 0; j < n; ++j) s += row[j] * in[j];
        wf.amp[b + l * lay.step] = s;
      }
    }
  }
}

void spectral(WaveFunction& wf, std::size_t axis, const SpectralMultiplier& f) {
  const auto lay = detail::lines(wf, axis);
  const auto count = static_cast<long long>(lay.count);
  const std::size_t n = lay.n;
  const double inv_n = 1.0 / static_cast<double>(n);
  Plan fwd(n, FFTW_FORWARD), bwd(n, FFTW_BACKWARD);
  std::vector<double> freq(n);
  for (std::size_t m = 0; m < n; ++m) freq[m] = wf.grid.frequency(m);
#pragma omp parallel
  {
    Buffer in = alloc(n), hat = alloc(n);
    std::vector<double> q(wf.n_axes());
#pragma omp for schedule(static)
    for (long long line = 0; line < count; ++line) {
      std::size_t b = lay.base(static_cast<std::size_t>(line));
      detail::decode(wf, b, q.data());
      for (std::size_t j = 0; j < n; ++j) as_cplx(in.get())[j] = wf.amp[b + j * lay.step];
      fwd.run(in.get(), hat.get());
      for (std::size_t m = 0; m < n; ++m) as_cplx(hat.get())[m] *= f(freq[m], q.data());
      bwd.run(hat.get(), in.get());
      for (std::size_t j = 0; j < n; ++j) wf.amp[b + j * lay.step] = as_cplx(in.get())[j] * inv_n;
    }
  }
}

void resample(WaveFunction& wf, std::size_t axis, double s) {
  const auto lay = detail::lines(wf, axis);
  const auto count = static_cast<long long>(lay.count);
  const std::size_t n = lay.n;
  const auto m = detail::resample_matrix(wf.grid, s);
  Plan fwd(n, FFTW_FORWARD);
#pragma omp parallel
  {
    Buffer in = alloc(n), hat = alloc(n);
#pragma omp for schedule(static)
    for (long long line = 0; line < count; ++line) {
      std::size_t b = lay.base(static_cast<std::size_t>(line));
      for (std::size_t j = 0; j < n; ++j) as_cplx(in.get())[j] = wf.amp[b + j * lay.step];
      fwd.run(in.get(), hat.get());
      const cplx* h = as_cplx(hat.get());
      for (std::size_t l = 0; l < n; ++l) {
        cplx acc{0.0, 0.0};
        const cplx* row = &m[l * n];
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * h[k];
        wf.amp[b + l * lay.step] = acc;
      }
    }
  }
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
  double re = 0.0, im = 0.0;
  const auto total = static_cast<long long>(a.amp.size());
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (long long i = 0; i < total; ++i) {
    cplx z = std::conj(a.amp[static_cast<std::size_t>(i)]) * b.amp[static_cast<std::size_t>(i)];
    re += z.real();
    im += z.imag();
  }
  return cplx{re, im} * std::pow(a.grid.dx(), static_cast<double>(a.n_axes()));
}

}  // namespace cvhg::kernels::parallel

namespace cvhg::kernels {

namespace {
Backend g_backend = Backend::Parallel;
constexpr KernelSet kSerial{serial::pointwise, serial::transform, serial::spectral, serial::resample, serial::inner};
constexpr KernelSet kParallel{parallel::pointwise, parallel::transform, parallel::spectral, parallel::resample,
                              parallel::inner};
}  // namespace

const KernelSet& kernel_set(Backend b) { return b == Backend::Serial ? kSerial : kParallel; }
const KernelSet& active() { return kernel_set(g_backend); }
void set_backend(Backend b) { g_backend = b; }
Backend backend() { return g_backend; }

}  // namespace cvhg::kernels
