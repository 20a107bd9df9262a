// Serial reference vs OpenMP/FFTW kernels on the same grids.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "cvhg/kernels.hpp"
#include "cvhg/numerics.hpp"
#include "cvhg/protocols.hpp"

using namespace cvhg;

namespace {

WaveFunction random_wave(std::size_t modes, std::size_t n) {
  GridSpec grid = GridSpec::self_dual(modes, n);
  std::vector<Vertex> labels(modes);
  std::iota(labels.begin(), labels.end(), 0u);
  WaveFunction wf(grid, labels);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  for (auto& a : wf.amp) a = {d(rng), d(rng)};
  return wf;
}

const kernels::KernelSet& set_of(const benchmark::State& st) {
  return kernels::kernel_set(st.range(0) == 0 ? kernels::Backend::Serial : kernels::Backend::Parallel);
}

void BM_transform(benchmark::State& st) {
  const auto& k = set_of(st);
  WaveFunction wf = random_wave(2, static_cast<std::size_t>(st.range(1)));
  for (auto _ : st) {
    k.transform(wf, 1, 1);
    k.transform(wf, 1, -1);
    benchmark::DoNotOptimize(wf.amp.data());
  }
}

void BM_spectral(benchmark::State& st) {
  const auto& k = set_of(st);
  WaveFunction wf = random_wave(2, static_cast<std::size_t>(st.range(1)));
  auto f = [](double kk, const double*) { return std::exp(cplx(0, 1e-3 * kk * kk)); };
  for (auto _ : st) {
    k.spectral(wf, 0, f);
    benchmark::DoNotOptimize(wf.amp.data());
  }
}

void BM_resample(benchmark::State& st) {
  const auto& k = set_of(st);
  WaveFunction wf = random_wave(2, static_cast<std::size_t>(st.range(1)));
  for (auto _ : st) {
    k.resample(wf, 1, 1.25);
    k.resample(wf, 1, 0.8);
    benchmark::DoNotOptimize(wf.amp.data());
  }
}

void BM_pointwise(benchmark::State& st) {
  const auto& k = set_of(st);
  WaveFunction wf = random_wave(3, static_cast<std::size_t>(st.range(1)));
  kernels::Multiplier f = [](const double* q) { return std::exp(cplx(0, 1e-6 * q[0] * q[1] * q[2])); };
  for (auto _ : st) {
    k.pointwise(wf, f);
    benchmark::DoNotOptimize(wf.amp.data());
  }
}

void BM_realize_teleport_cell(benchmark::State& st) {
  kernels::Backend old = kernels::backend();
  kernels::set_backend(st.range(0) == 0 ? kernels::Backend::Serial : kernels::Backend::Parallel);
  StateExpr out = teleport_3edge(state_from_hypergraph(teleport_cell_graph()), kTeleportCell, 1.0, 0.5);
  GridSpec grid = GridSpec::self_dual(3, static_cast<std::size_t>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(realize(out, 1.0, grid).amp.data());
  kernels::set_backend(old);
}

// range(0): 0 serial, 1 parallel; range(1): points per mode
BENCHMARK(BM_transform)->ArgsProduct({{0, 1}, {64, 256}});
BENCHMARK(BM_spectral)->ArgsProduct({{0, 1}, {64, 256}});
BENCHMARK(BM_resample)->ArgsProduct({{0, 1}, {64, 128}});
BENCHMARK(BM_pointwise)->ArgsProduct({{0, 1}, {32, 64}});
BENCHMARK(BM_realize_teleport_cell)->ArgsProduct({{0, 1}, {16, 32}});

}  // namespace

BENCHMARK_MAIN();
