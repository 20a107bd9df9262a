#include "cvhg/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <fmt/format.h>

#include "cvhg/error.hpp"
#include "cvhg/numerics.hpp"
#include "cvhg/protocols.hpp"

namespace cvhg {

namespace {

constexpr double kFidelityTol = 1e-4;

GridSpec make_grid(const OracleSettings& s, std::size_t n, double l) {
  GridSpec g;
  g.points = s.grid_n.value_or(n);
  g.half_extent = s.grid_l.value_or(l);
  return g;
}

void finish_fidelity(ScenarioResult& res, double tol) {
  res.criterion = fmt::format("fidelity >= {}", format_number(1.0 - tol));
  res.passed = res.worst >= 1.0 - tol;
}

// Lemma 1: q-measurement by substitution vs slicing the realized state.
ScenarioResult lemma1(const OracleSettings& s) {
  ScenarioResult res;
  res.worst = 1.0;
  const double r = s.r.value_or(2.0);
  auto check = [&](const Hypergraph& g, Vertex v, GridSpec grid, const std::string& name) {
    StateExpr st = state_from_hypergraph(g);
    // Snap the outcome to a grid plane inside +-3.
    std::mt19937_64 rng(s.seed + v + g.edges().size());
    double dx = 2.0 * grid.half_extent / static_cast<double>(grid.points);
    long span = static_cast<long>(std::floor(3.0 / dx));
    long j = std::uniform_int_distribution<long>(-span, span)(rng);
    double m = static_cast<double>(j) * dx;
    WaveFunction direct = project_homodyne(realize(st, r, grid), v, Basis::Q, m);
    WaveFunction symbolic = realize(measure_q(st, v, m), r, grid);
    double f = fidelity(direct, symbolic);
    res.worst = std::min(res.worst, f);
    res.details.push_back(fmt::format("{} q{}={:.6g}: fidelity {:.12f}", name, v, m, f));
  };
  check(paper_example_graph_compact(), 2, make_grid({}, 64, 6.0 * std::exp(r)), "paper example");

  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> weight(0.25, 2.0);
  std::bernoulli_distribution sign(0.5);
  std::uniform_int_distribution<Vertex> vertex(0, 2);
  for (int i = 0; i < 20; ++i) {
    Hypergraph g(3);
    g.add_edge({0, 1, 2}, (sign(rng) ? 1.0 : -1.0) * weight(rng));
    check(g, vertex(rng), make_grid(s, 256, 6.0 * std::exp(r)), fmt::format("random #{}", i));
  }
  finish_fidelity(res, kFidelityTol);
  return res;
}

// R1 on the path 0-1-2: p-measure the middle vertex.
ScenarioResult r1_path(const OracleSettings& s) {
  ScenarioResult res;
  res.worst = 1.0;
  const double r = s.r.value_or(2.0);
  Hypergraph g(3);
  g.add_edge({0, 1}, 1.0).add_edge({1, 2}, 1.0);
  StateExpr st = state_from_hypergraph(g);
  GridSpec grid = make_grid(s, 1024, 6.0 * std::exp(r));
  for (double m : {0.0, 0.7, -1.3}) {
    IntegralState is = measure_p(st, 1, m);
    StateExpr red = std::get<StateExpr>(reduce_integral(is));
    auto direct = realize_integral(is, r, grid, default_quadrature(r, 4096));
    WaveFunction symbolic = realize(red, r, grid);
    double f = envelope_fidelity(direct.wf, symbolic, {2});
    res.worst = std::min(res.worst, f);
    res.details.push_back(fmt::format("m={}: {}  envelope fidelity {:.8f} (plain {:.6f}, quadrature change {:.1e})",
                                      format_number(m), red.render(), f, fidelity(direct.wf, symbolic),
                                      direct.convergence));
  }
  finish_fidelity(res, kFidelityTol);
  return res;
}

// The teleportation cell: the integral left by the measurements vs the
// realization of the reduced expression.
ScenarioResult teleport_cell(const OracleSettings& s, const std::vector<double>& ts) {
  ScenarioResult res;
  res.worst = 1.0;
  const double r = s.r.value_or(2.0);
  StateExpr cell = state_from_hypergraph(teleport_cell_graph());
  GridSpec grid = make_grid(s, 128, 6.0 * std::exp(r));
  for (double t : ts) {
    for (double m : {0.0, 1.0, -1.0}) {
      IntegralState is = measure_p(measure_q(cell, kTeleportCell.corner, t), kTeleportCell.center, m);
      StateExpr red = teleport_3edge(cell, kTeleportCell, t, m);
      auto direct = realize_integral(is, r, grid, default_quadrature(r, 2048));
      WaveFunction symbolic = realize(red, r, grid);
      double f = fidelity(direct.wf, symbolic);
      res.worst = std::min(res.worst, f);
      res.details.push_back(fmt::format("t={} m={}: {}  fidelity {:.6f} (envelope {:.6f}, quadrature change {:.1e})",
                                        format_number(t), format_number(m), red.render(), f,
                                        envelope_fidelity(direct.wf, symbolic, {kTeleportCell.b}),
                                        direct.convergence));
    }
  }
  finish_fidelity(res, kFidelityTol);
  return res;
}

// Cubic gate: direct finite-squeezing simulation vs the symbolic output. Both
// displacement orientations are scored; the frozen one must pass.
ScenarioResult cubic_gate(const OracleSettings& s) {
  ScenarioResult res;
  res.worst = 1.0;
  const double r = s.r.value_or(2.0);
  const double gamma = 0.1;
  GridSpec grid = make_grid(s, 1024, 8.0);
  Externals ext{{"psi", gaussian_packet()}};
  for (auto [m, n] : std::vector<std::pair<double, double>>{{0, 0}, {1, 0}, {0, 1}, {1, -0.5}}) {
    WaveFunction direct = cubic_gate_oracle(gaussian_packet(), gamma, m, n, r, grid);
    StateExpr out = cubic_phase_gate("psi", gamma, m, n);
    StateExpr flipped = out;
    for (auto& op : flipped.byproducts)
      if (op.kind == GaussianOp::Kind::ZDisp) op.kind = GaussianOp::Kind::XDisp;
    double fz = fidelity(direct, realize(out, r, grid, ext));
    double fx = fidelity(direct, realize(flipped, r, grid, ext));
    res.worst = std::min(res.worst, kCubicDisplacement == GaussianOp::Kind::ZDisp ? fz : fx);
    res.details.push_back(fmt::format("m={} n={}: {}  fidelity Z {:.8f}  X {:.8f}", format_number(m),
                                      format_number(n), out.render(), fz, fx));
  }
  finish_fidelity(res, kFidelityTol);
  return res;
}

// Ancilla preparation: grid realization of the gate string on slices q0 = x vs
// the Gaussian chain A(q1 - x) B(q2 - γ q1).
ScenarioResult cubic_ancilla(const OracleSettings& s) {
  ScenarioResult res;
  res.worst = 1.0;
  const double r = s.r.value_or(1.0);
  const double gamma = 0.5;
  GridSpec grid = GridSpec::self_dual(2, s.grid_n.value_or(512));
  if (s.grid_l) grid.half_extent = *s.grid_l;
  const double e2r = std::exp(2.0 * r);
  for (double x : {-1.0, 0.0, 0.8}) {
    StateExpr st = prepare_cubic_ancilla("psi", gamma);
    st.bases[0] = ModeBase::q_eigen(x);
    WaveFunction realized = realize(st, r, grid);
    WaveFunction chain = realized;
    for (std::size_t i = 0; i < chain.amp.size(); ++i) {
      double q1 = grid.position(i / grid.points);
      double q2 = grid.position(i % grid.points);
      double u1 = q1 - x, u2 = (q2 - gamma * q1) / gamma;
      chain.amp[i] = std::exp(-0.5 * (u1 * u1 + u2 * u2) * e2r);
    }
    double f = fidelity(realized, chain);
    res.worst = std::min(res.worst, f);
    res.details.push_back(fmt::format("x={}: fidelity {:.10f}", format_number(x), f));
  }
  finish_fidelity(res, kFidelityTol);
  return res;
}

// Var(H_i) of the two-mode graph state against e^{-2r}/2.
ScenarioResult nullifier_scaling(const OracleSettings& s) {
  ScenarioResult res;
  res.passed = true;
  res.worst = 0.0;
  res.criterion = "|Var/(e^{-2r}/2) - 1| <= 0.1, decreasing in r";
  Hypergraph g(2);
  g.add_edge({0, 1}, 1.0);
  StateExpr st = state_from_hypergraph(g);
  GridSpec grid = GridSpec::self_dual(2, s.grid_n.value_or(2048));
  double prev = INFINITY;
  for (double r : {0.5, 1.0, 2.0}) {
    WaveFunction wf = realize(st, r, grid);
    double expected = std::exp(-2.0 * r) / 2.0;
    for (const auto& h : nullifiers(g)) {
      double var = nullifier_variance(wf, h);
      double rel = std::abs(var / expected - 1.0);
      res.worst = std::max(res.worst, rel);
      if (rel > 0.1) res.passed = false;
      res.details.push_back(
          fmt::format("r={} {}: variance {:.6e}, e^(-2r)/2 = {:.6e}", format_number(r), h.render(), var, expected));
      if (h.mode == 0) {
        if (!(var < prev)) res.passed = false;
        prev = var;
      }
    }
  }
  return res;
}

const std::map<std::string, std::function<ScenarioResult(const OracleSettings&)>>& registry() {
  static const std::map<std::string, std::function<ScenarioResult(const OracleSettings&)>> r{
      {"lemma1-basic", lemma1},
      {"r1-path", r1_path},
      {"theorem-cell", [](const OracleSettings& s) { return teleport_cell(s, {1.0}); }},
      {"teleport-general", [](const OracleSettings& s) { return teleport_cell(s, {0.5, 2.0}); }},
      {"cubic-gate", cubic_gate},
      {"cubic-ancilla", cubic_ancilla},
      {"nullifier-variance", nullifier_scaling},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{"lemma1-basic", "r1-path",      "theorem-cell",      "teleport-general",
                                            "cubic-gate",   "cubic-ancilla", "nullifier-variance"};
  return ids;
}

ScenarioResult run_scenario(const std::string& id, const OracleSettings& settings) {
  auto it = registry().find(id);
  if (it == registry().end()) throw DomainError("unknown scenario '" + id + "'");
  auto t0 = std::chrono::steady_clock::now();
  ScenarioResult res = it->second(settings);
  res.id = id;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace cvhg
