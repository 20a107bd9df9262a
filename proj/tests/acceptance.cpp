// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cvhg/cli.hpp"
#include "cvhg/nullifier.hpp"
#include "cvhg/numerics.hpp"
#include "cvhg/protocols.hpp"
#include "cvhg/scenarios.hpp"
#include "support.hpp"

using namespace cvhg;

namespace {

struct Outcome {
  bool ok = true;
  std::string summary;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;
  std::function<Outcome()> run;
};

Outcome from_scenario(const std::string& id) {
  ScenarioResult r = run_scenario(id);
  for (const auto& d : r.details) std::cout << "    " << d << "\n";
  return {r.passed, fmt::format("worst {:.8f}, {}", r.worst, r.criterion)};
}

Outcome nullifier_algebra() {
  std::mt19937_64 rng(2024);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    Hypergraph g = fixtures::random_hypergraph(rng);
    auto hs = nullifiers(g);
    if (check_annihilation(g, hs)) ++bad;
    for (const auto& a : hs)
      for (const auto& b : hs)
        if (a.mode < b.mode && !commutator(a, b).is_zero()) ++bad;
  }
  return {bad == 0, fmt::format("200 random graphs, {} violations", bad)};
}

Outcome cubic_gate() {
  Outcome o = from_scenario("cubic-gate");
  bool zero = cubic_phase_gate("psi", 0.1, 0.0, 0.0).byproducts.empty();
  if (!zero) o.ok = false;
  o.summary += zero ? "; (0,0) has no displacement" : "; (0,0) carries a displacement";
  return o;
}

Outcome lattice() {
  ClusterLayout layout = cluster_layout({2, 2});
  StateExpr st = state_from_hypergraph(build_3cluster({2, 2}));
  std::vector<std::string> problems;

  // all ones: exactly the square-lattice adjacency
  auto [unit, r1] = lattice_to_cluster(st, layout, parse_outcomes("all=1", layout));
  Hypergraph expect(layout.n_modes);
  for (const auto& e : layout.square_lattice_edges()) expect.add_edge(e, 1.0);
  if (!(unit.phase_graph().approx_equal(expect, 0.0))) problems.push_back("all=1 adjacency");

  // one zero: that center's four sides vanish, nothing else changes
  Vertex c0 = layout.centers[0];
  auto [cut, r0] = lattice_to_cluster(st, layout, parse_outcomes(fmt::format("{}=0,all=1", c0), layout));
  Hypergraph expect_cut = expect;
  for (const auto& [e, w] : expect.edges()) {
    const auto& cell = layout.cells[0];
    bool side = std::all_of(e.begin(), e.end(), [&](Vertex v) {
      return std::find(std::begin(cell.corners), std::end(cell.corners), v) != std::end(cell.corners);
    });
    if (side) expect_cut.add_edge(e, -w);
  }
  if (!(cut.phase_graph().approx_equal(expect_cut, 0.0)) || expect.edges().size() - cut.phase_graph().edges().size() != 4)
    problems.push_back("single zero outcome");
  if (r0.entries[0].cls != SqueezeClass::Disconnect) problems.push_back("zero classification");

  // all twos: weight-2 edges, anti_squeeze
  auto [two, r2] = lattice_to_cluster(st, layout, parse_outcomes("all=2", layout));
  Hypergraph expect2(layout.n_modes);
  for (const auto& e : layout.square_lattice_edges()) expect2.add_edge(e, 2.0);
  if (!(two.phase_graph().approx_equal(expect2, 0.0))) problems.push_back("all=2 weights");
  for (const auto& e : r2.entries)
    if (e.cls != SqueezeClass::AntiSqueeze) problems.push_back("all=2 classification");

  std::string msg = problems.empty() ? "2x2 cluster: 16 unit edges, cut removes 4, weight-2 anti_squeeze" : "";
  for (const auto& p : problems) msg += (msg.empty() ? "" : ", ") + p;
  return {problems.empty(), msg};
}

std::string cli_output(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return fmt::format("{}\n{}\n{}", code, out.str(), err.str());
}

Outcome determinism() {
  std::vector<std::string> problems;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    Hypergraph g = fixtures::random_hypergraph(rng);
    std::string text = serialize_hypergraph(g);
    Hypergraph back = parse_hypergraph(text);
    if (!back.approx_equal(g, 0.0) || serialize_hypergraph(back) != text) {
      problems.push_back(fmt::format("graph round-trip #{}", i));
      break;
    }
  }

  GridSpec grid = GridSpec::self_dual(2, 256);
  WaveFunction wf = realize(state_from_hypergraph(add_edge(Hypergraph(2), {0, 1}, 1.0)), 1.0, grid);
  double worst = 1.0;
  for (Vertex v : {0u, 1u}) {
    WaveFunction rt = wf;
    apply_op(rt, GaussianOp::fourier(v));
    apply_op(rt, GaussianOp::fourier_inv(v));
    worst = std::min(worst, fidelity(wf, rt));
  }
  if (worst < 1 - 1e-10) problems.push_back(fmt::format("Fourier round-trip {:.3e}", 1 - worst));

  const std::string graph = fixtures::data_path("paper_example.json");
  const std::vector<std::vector<std::string>> commands{
      {"nullifiers", "--graph", graph},
      {"teleport", "--t", "2", "--m", "-1"},
      {"cubic", "--gamma", "0.5", "--m", "1", "--n", "2"},
      {"to-cluster", "--rows", "2", "--cols", "2", "--outcomes", "13=0,all=2"},
      {"sample", "--graph", fixtures::data_path("teleport_cell.json"), "--grid-n", "16", "--seed", "5"},
  };
  for (const auto& c : commands)
    if (cli_output(c) != cli_output(c)) problems.push_back("CLI output differs for " + c[0]);

  std::string msg = fmt::format("100 graph round-trips, Fourier 1-F = {:.1e}, {} CLI commands byte-identical",
                                1 - worst, commands.size());
  for (const auto& p : problems) msg += "; " + p;
  return {problems.empty(), msg};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria{
      {1, "nullifier algebra", 5, nullifier_algebra},
      {2, "Lemma 1 oracle equivalence", 30, [] { return from_scenario("lemma1-basic"); }},
      {3, "teleportation identity t=1", 300, [] { return from_scenario("theorem-cell"); }},
      {4, "teleportation general t", 300, [] { return from_scenario("teleport-general"); }},
      {5, "cubic phase gate", 120, cubic_gate},
      {6, "lattice conversion", 1, lattice},
      {7, "nullifier variance scaling", 30, [] { return from_scenario("nullifier-variance"); }},
      {8, "determinism and round-trips", 10, determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs <= c.time_limit;
    bool pass = o.ok && in_time;
    failed += !pass;
    std::cout << fmt::format("criterion {}: {} {} ({}; {:.2f} s, limit {} s{})", c.id, pass ? "PASS" : "FAIL", c.name,
                             o.summary, secs, c.time_limit, in_time ? "" : ", over time")
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
