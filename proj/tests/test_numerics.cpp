#include "cvhg/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cvhg/error.hpp"
#include "cvhg/kernels.hpp"
#include "cvhg/nullifier.hpp"
#include "cvhg/scenarios.hpp"

using namespace cvhg;
using Op = GaussianOp;

namespace {

WaveFunction random_wave(GridSpec grid, std::uint64_t seed) {
  std::vector<Vertex> labels(grid.n_modes);
  std::iota(labels.begin(), labels.end(), 0u);
  WaveFunction wf(grid, labels);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  for (auto& a : wf.amp) a = {d(rng), d(rng)};
  return wf;
}

double max_diff(const WaveFunction& a, const WaveFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) m = std::max(m, std::abs(a.amp[i] - b.amp[i]));
  return m;
}

StateExpr single_vacuum() { return state_from_hypergraph(Hypergraph(1)); }

}  // namespace

TEST(numerics, kernels_agree) {
  for (GridSpec grid : {GridSpec::self_dual(2, 64), GridSpec{2, 32, 5.0}}) {
    WaveFunction base = random_wave(grid, 1);
    const auto& s = kernels::kernel_set(kernels::Backend::Serial);
    const auto& p = kernels::kernel_set(kernels::Backend::Parallel);
    for (int sign : {1, -1}) {
      WaveFunction a = base, b = base;
      s.transform(a, 1, sign);
      p.transform(b, 1, sign);
      EXPECT_LT(max_diff(a, b), 1e-10);
    }
    auto f = [](double k, const double* q) { return std::exp(cplx(0, 0.3 * k * k + q[0])); };
    WaveFunction a = base, b = base;
    s.spectral(a, 0, f);
    p.spectral(b, 0, f);
    EXPECT_LT(max_diff(a, b), 1e-10);
    a = base, b = base;
    s.resample(a, 1, 1.7);
    p.resample(b, 1, 1.7);
    EXPECT_LT(max_diff(a, b), 1e-10);
    auto g = [](const double* q) { return std::exp(cplx(0, q[0] * q[1])); };
    a = base, b = base;
    s.pointwise(a, g);
    p.pointwise(b, g);
    EXPECT_LT(max_diff(a, b), 1e-12);
    EXPECT_LT(std::abs(s.inner(a, base) - p.inner(b, base)), 1e-9);
  }
}

TEST(numerics, backend_switch) {
  kernels::Backend old = kernels::backend();
  kernels::set_backend(kernels::Backend::Serial);
  EXPECT_EQ(kernels::backend(), kernels::Backend::Serial);
  kernels::set_backend(old);
}

TEST(numerics, fourier_round_trip) {
  for (GridSpec grid : {GridSpec::self_dual(2, 256), GridSpec{2, 64, 8.0}}) {
    WaveFunction wf = realize(state_from_hypergraph(add_edge(Hypergraph(2), {0, 1}, 0.7)), 0.5, grid);
    WaveFunction rt = wf;
    apply_op(rt, Op::fourier(1));
    apply_op(rt, Op::fourier_inv(1));
    EXPECT_GE(fidelity(wf, rt), 1 - 1e-10);
  }
}

TEST(numerics, fourier_maps_q_to_p) {
  // F on a narrow packet centered at x gives momentum mean x
  GridSpec grid = GridSpec::self_dual(1, 512);
  Externals ext{{"psi", gaussian_packet(1.5, 0.5)}};
  StateExpr st;
  st.bases = {ModeBase::external("psi")};
  st.byproducts = {Op::fourier(0)};
  Marginal m = marginal(realize(st, 0.0, grid, ext), 0, Basis::P);
  double mean = 0.0;
  for (std::size_t i = 0; i < m.values.size(); ++i) mean += m.values[i] * m.density[i] * m.spacing;
  EXPECT_NEAR(mean, 1.5, 1e-6);
}

TEST(numerics, vacuum_moments) {
  GridSpec grid{1, 512, 20.0};
  const double r = 1.0;
  WaveFunction wf = realize(single_vacuum(), r, grid);
  for (Basis b : {Basis::Q, Basis::P}) {
    Marginal m = marginal(wf, 0, b);
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < m.values.size(); ++i) {
      mean += m.values[i] * m.density[i] * m.spacing;
      second += m.values[i] * m.values[i] * m.density[i] * m.spacing;
    }
    double expected = b == Basis::Q ? std::exp(2 * r) / 2 : std::exp(-2 * r) / 2;
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(second / expected, 1.0, 1e-3);
  }
}

TEST(numerics, envelope_realization) {
  StateExpr st = single_vacuum();
  st.bases[0].envelope = {2.0, 1.0};
  GridSpec grid{1, 512, 30.0};
  Marginal m = marginal(realize(st, 0.5, grid), 0, Basis::Q);
  double mean = 0.0;
  for (std::size_t i = 0; i < m.values.size(); ++i) mean += m.values[i] * m.density[i] * m.spacing;
  EXPECT_NEAR(mean, 1.0, 1e-6);
}

TEST(numerics, nullifier_variance_and_control) {
  Hypergraph g = add_edge(Hypergraph(2), {0, 1}, 1.0);
  GridSpec grid = GridSpec::self_dual(2, 512);
  const double r = 1.0;
  WaveFunction wf = realize(state_from_hypergraph(g), r, grid);
  NullifierOp h = nullifier(g, 0);
  double var = nullifier_variance(wf, h);
  EXPECT_NEAR(var / (std::exp(-2 * r) / 2), 1.0, 0.1);
  NullifierOp bad = h;
  bad.qpart.add({1}, 1.0);
  EXPECT_GT(nullifier_variance(wf, bad), 10 * var);
}

TEST(numerics, nullifier_variance_decreases) {
  Hypergraph g = add_edge(Hypergraph(2), {0, 1}, 1.0);
  GridSpec grid = GridSpec::self_dual(2, 512);
  double prev = INFINITY;
  for (double r : {0.5, 1.0, 1.5}) {
    double var = nullifier_variance(realize(state_from_hypergraph(g), r, grid), nullifier(g, 1));
    EXPECT_LT(var, prev);
    prev = var;
  }
}

TEST(numerics, project_q_slices) {
  GridSpec grid{2, 128, 8.0};
  Hypergraph g = add_edge(Hypergraph(2), {0, 1}, 1.0);
  WaveFunction wf = realize(state_from_hypergraph(g), 0.5, grid);
  double m = grid.position(70);
  WaveFunction slice = project_homodyne(wf, 0, Basis::Q, m);
  EXPECT_EQ(slice.labels, std::vector<Vertex>{1});
  WaveFunction expect = realize(measure_q(state_from_hypergraph(g), 0, m), 0.5, grid);
  EXPECT_GE(fidelity(slice, expect), 1 - 1e-12);
  EXPECT_THROW(project_homodyne(wf, 0, Basis::Q, 100.0), DomainError);
  EXPECT_THROW(project_homodyne(wf, 5, Basis::Q, 0.0), DomainError);
}

TEST(numerics, project_p_matches_integral) {
  // p-projection of the realized path state vs the quadrature of the integral form
  Hypergraph g = add_edge(add_edge(Hypergraph(3), {0, 1}, 1.0), {1, 2}, 1.0);
  StateExpr st = state_from_hypergraph(g);
  const double r = 0.5, m = 0.4;
  GridSpec grid{3, 64, 8.0};
  WaveFunction direct = project_homodyne(realize(st, r, grid), 1, Basis::P, m);
  GridSpec rest{2, 64, 8.0};
  auto integral = realize_integral(measure_p(st, 1, m), r, rest, Quadrature{-8.0, 8.0 - 0.25, 64});
  EXPECT_GE(fidelity(direct, integral.wf), 1 - 1e-10);
}

TEST(numerics, realize_errors) {
  StateExpr st;
  st.bases = {ModeBase::external("psi")};
  EXPECT_THROW(realize(st, 1.0, GridSpec{1, 64, 8.0}), DomainError);
  EXPECT_THROW(realize(single_vacuum(), 1.0, GridSpec{1, 100, 8.0}), DomainError);
  GridSpec huge{3, 4096, 8.0};
  EXPECT_THROW(realize(state_from_hypergraph(Hypergraph(3)), 1.0, huge), ResourceError);
  StateExpr detached = measure_q(single_vacuum(), 0, 1.0);
  detached.byproducts = {Op::fourier(0)};
  EXPECT_THROW(realize(detached, 1.0, GridSpec{1, 64, 8.0}), DomainError);
}

TEST(numerics, sampling_vacuum) {
  GridSpec grid{1, 512, 10.0};
  WaveFunction wf = realize(single_vacuum(), 0.0, grid);
  auto xs = sample_homodyne(wf, 0, Basis::Q, 42, 10000);
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size();
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(var / 0.5, 1.0, 0.05);
  EXPECT_EQ(sample_homodyne(wf, 0, Basis::Q, 42, 100), sample_homodyne(wf, 0, Basis::Q, 42, 100));
  EXPECT_NE(sample_homodyne(wf, 0, Basis::Q, 42, 100), sample_homodyne(wf, 0, Basis::Q, 43, 100));
}

TEST(numerics, sampling_displaced) {
  // X(s) = e^{isp} moves psi(q) to psi(q+s): the position mean goes to -s
  GridSpec grid{1, 512, 10.0};
  WaveFunction wf = realize(single_vacuum(), 0.0, grid);
  apply_op(wf, Op::xdisp(0, 1.5));
  auto xs = sample_homodyne(wf, 0, Basis::Q, 7, 10000);
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  EXPECT_NEAR(mean, -1.5, 0.05);
}

TEST(numerics, marginals_csv_layout) {
  GridSpec grid{2, 16, 4.0};
  std::string csv = marginals_csv(realize(state_from_hypergraph(Hypergraph(2)), 0.0, grid));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "position,q0,q1");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
}

TEST(numerics, scenario_r1_path) {
  ScenarioResult res = run_scenario("r1-path");
  EXPECT_GE(res.worst, 1 - 1e-4) << res.details[0];
}

TEST(numerics, scenario_cubic_ancilla) {
  ScenarioResult res = run_scenario("cubic-ancilla");
  EXPECT_TRUE(res.passed);
  EXPECT_GE(res.worst, 1 - 1e-8);
}

TEST(numerics, cubic_gate_grid_convergence) {
  ScenarioResult a = run_scenario("cubic-gate");
  ScenarioResult b = run_scenario("cubic-gate", {std::nullopt, 2048, std::nullopt, 1});
  EXPECT_LT(std::abs(a.worst - b.worst), 1e-4);
}

TEST(numerics, unknown_scenario) { EXPECT_THROW(run_scenario("nope"), DomainError); }
