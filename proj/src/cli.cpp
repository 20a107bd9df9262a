#include "cvhg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cvhg/error.hpp"
#include "cvhg/hypergraph.hpp"
#include "cvhg/measurement.hpp"
#include "cvhg/nullifier.hpp"
#include "cvhg/numerics.hpp"
#include "cvhg/protocols.hpp"
#include "cvhg/scenarios.hpp"

namespace cvhg {

namespace {

struct Options {
  std::string graph;
  std::string script;
  std::string protocol;
  std::string scenario;
  double t = 1.0;
  double m = 0.0;
  double n = 0.0;
  double gamma = 0.1;
  std::string outcomes = "all=1";
  std::size_t rows = 2;
  std::size_t cols = 2;
  std::optional<double> r;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_l;
  std::uint64_t seed = 1;
  std::string dot;
  std::string csv;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

void maybe_dot(const Options& o, const StateExpr& st, std::ostream& out) {
  if (o.dot.empty()) return;
  Hypergraph g = st.phase_graph();
  write_file(o.dot, render_dot(g, st.live_modes()));
  out << "dot: " << o.dot << "\n";
}

int cmd_nullifiers(const Options& o, std::ostream& out) {
  Hypergraph g = load_hypergraph(o.graph);
  auto hs = nullifiers(g);
  for (const auto& h : hs) out << fmt::format("H{} = {}\n", h.mode, h.render());
  bool ok = true;
  if (auto bad = check_annihilation(g, hs)) {
    out << fmt::format("annihilation: FAIL at H{}\n", *bad);
    ok = false;
  } else {
    out << "annihilation: ok\n";
  }
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j)
      if (!commutator(hs[i], hs[j]).is_zero()) {
        out << fmt::format("commutator [H{}, H{}] = i({})\n", hs[i].mode, hs[j].mode,
                           commutator(hs[i], hs[j]).render());
        ++nonzero;
      }
  if (nonzero == 0) out << "commutators: ok\n";
  return ok && nonzero == 0 ? kExitOk : kExitVerify;
}

int cmd_measure(const Options& o, std::ostream& out) {
  StateExpr st = state_from_hypergraph(load_hypergraph(o.graph));
  std::vector<MeasurementRecord> script;
  if (!o.script.empty()) script = load_script(o.script);
  ScriptResult res = run_script(st, script);
  out << "input:  " << st.render() << "\n";
  if (auto* irr = std::get_if<Irreducible>(&res.state)) {
    out << "irreducible: " << irr->diagnostic << "\n";
    return kExitOk;
  }
  const auto& final_state = std::get<StateExpr>(res.state);
  out << "output: " << final_state.render() << "\n";
  maybe_dot(o, final_state, out);
  return kExitOk;
}

int cmd_teleport(const Options& o, std::ostream& out) {
  StateExpr cell = state_from_hypergraph(teleport_cell_graph());
  StateExpr res = teleport_3edge(cell, kTeleportCell, o.t, o.m);
  out << "input:  " << cell.render() << "\n";
  out << "output: " << res.render() << "\n";
  maybe_dot(o, res, out);
  return kExitOk;
}

int cmd_cubic(const Options& o, std::ostream& out) {
  StateExpr anc = prepare_cubic_ancilla("psi", o.gamma);
  StateExpr res = cubic_phase_gate("psi", o.gamma, o.m, o.n);
  out << "ancilla: " << anc.render() << "\n";
  out << "output:  " << res.render() << "\n";
  return kExitOk;
}

int cmd_to_cluster(const Options& o, std::ostream& out) {
  ClusterLayout layout = cluster_layout({o.rows, o.cols});
  StateExpr st = state_from_hypergraph(build_3cluster(layout.spec));
  auto [res, report] = lattice_to_cluster(st, layout, parse_outcomes(o.outcomes, layout));
  out << "output: " << res.render() << "\n";
  out << report.render_table();
  maybe_dot(o, res, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  OracleSettings s{o.r, o.grid_n, o.grid_l, o.seed};
  ScenarioResult res = run_scenario(o.scenario, s);
  for (const auto& line : res.details) out << "  " << line << "\n";
  out << fmt::format("{}: {} (worst {:.8f}; {}; {:.1f} s)\n", res.id, res.passed ? "PASS" : "FAIL", res.worst,
                     res.criterion, res.seconds);
  return res.passed ? kExitOk : kExitVerify;
}

int cmd_sample(const Options& o, std::ostream& out) {
  StateExpr st = state_from_hypergraph(load_hypergraph(o.graph));
  double r = o.r.value_or(1.0);
  GridSpec grid;
  grid.points = o.grid_n.value_or(128);
  grid.half_extent = o.grid_l.value_or(6.0 * std::exp(r));
  WaveFunction wf = realize(st, r, grid);
  for (const auto& w : wf.warnings) out << "warning: " << w << "\n";
  for (Vertex v : wf.labels) {
    auto xs = sample_homodyne(wf, v, Basis::Q, o.seed + v, 5);
    out << fmt::format("q{}:", v);
    for (double x : xs) out << fmt::format(" {:.6f}", x);
    out << "\n";
  }
  if (!o.csv.empty()) {
    write_file(o.csv, marginals_csv(wf));
    out << "csv: " << o.csv << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Symbolic calculus and finite-squeezing oracle for CV hypergraph states", "cvhg"};
  app.require_subcommand(1);

  auto add_dot = [&o](CLI::App* c) { c->add_option("--dot", o.dot, "Write the resulting hypergraph as DOT"); };
  auto add_oracle = [&o](CLI::App* c) {
    c->add_option("--r", o.r, "Squeezing parameter");
    c->add_option("--grid-n", o.grid_n, "Grid points per mode (power of two)");
    c->add_option("--grid-l", o.grid_l, "Grid half-extent");
    c->add_option("--seed", o.seed, "Random seed");
  };
  auto add_protocol_params = [&](CLI::App* c) {
    c->add_option("--t", o.t, "Corner outcome of the teleportation cell");
    c->add_option("--m", o.m, "First p outcome");
    c->add_option("--n", o.n, "Second p outcome (cubic gate)");
    c->add_option("--gamma", o.gamma, "Cubic gate strength");
    c->add_option("--outcomes", o.outcomes, "Center outcomes, e.g. all=1 or 8=0,all=1");
    c->add_option("--rows", o.rows, "Lattice rows");
    c->add_option("--cols", o.cols, "Lattice columns");
    add_dot(c);
  };

  auto* nul = app.add_subcommand("nullifiers", "Print nullifiers and check them");
  nul->add_option("--graph", o.graph, "Hypergraph JSON")->required();
  auto* meas = app.add_subcommand("measure", "Run a measurement script");
  meas->add_option("--graph", o.graph, "Hypergraph JSON")->required();
  meas->add_option("--script", o.script, "Measurement script JSON");
  add_dot(meas);
  auto* tel = app.add_subcommand("teleport", "3-edge teleportation on a lone cell");
  auto* cub = app.add_subcommand("cubic", "Cubic phase gate");
  auto* clu = app.add_subcommand("to-cluster", "3-cluster to square-lattice cluster");
  auto* pro = app.add_subcommand("protocol", "Run a protocol by name");
  pro->add_option("--protocol", o.protocol, "teleport | cubic | to-cluster")
      ->required()
      ->check(CLI::IsMember({"teleport", "cubic", "to-cluster"}));
  for (auto* c : {tel, cub, clu, pro}) add_protocol_params(c);
  auto* ver = app.add_subcommand("verify", "Run an oracle-vs-symbolic scenario");
  ver->add_option("scenario", o.scenario, "Scenario id")->required()->check(CLI::IsMember(scenario_ids()));
  add_oracle(ver);
  auto* smp = app.add_subcommand("sample", "Realize a graph state and draw homodyne samples");
  smp->add_option("--graph", o.graph, "Hypergraph JSON")->required();
  smp->add_option("--csv", o.csv, "Write position marginals as CSV");
  add_oracle(smp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (nul->parsed()) return cmd_nullifiers(o, out);
    if (meas->parsed()) return cmd_measure(o, out);
    if (tel->parsed()) return cmd_teleport(o, out);
    if (cub->parsed()) return cmd_cubic(o, out);
    if (clu->parsed()) return cmd_to_cluster(o, out);
    if (pro->parsed()) {
      if (o.protocol == "teleport") return cmd_teleport(o, out);
      if (o.protocol == "cubic") return cmd_cubic(o, out);
      return cmd_to_cluster(o, out);
    }
    if (ver->parsed()) return cmd_verify(o, out);
    if (smp->parsed()) return cmd_sample(o, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}

}  // namespace cvhg
