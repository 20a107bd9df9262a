#include "cvhg/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "cvhg/error.hpp"

namespace cvhg {

void validate_cell(const StateExpr& st, const CellRef& cell) {
  std::vector<Vertex> all{cell.corner, cell.center, cell.a, cell.b, cell.c};
  for (Vertex v : all)
    if (v >= st.n_modes()) throw DomainError(fmt::format("cell vertex {} out of range", v));
  std::vector<Vertex> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("cell vertices must be distinct");
  const Vertex ring[4] = {cell.corner, cell.a, cell.b, cell.c};
  for (int k = 0; k < 4; ++k) {
    Monomial e{cell.center, ring[k], ring[(k + 1) % 4]};
    std::sort(e.begin(), e.end());
    if (std::abs(st.phase.coefficient(e) - 1.0) > kWeightEpsilon)
      throw DomainError(fmt::format("cell structure mismatch: missing unit edge {}", render_monomial(e, false)));
  }
}

StateExpr teleport_3edge(const StateExpr& st, const CellRef& cell, double t, double m) {
  if (t == 0.0) throw DomainError("degenerate teleportation: corner outcome t = 0 removes the coupling");
  validate_cell(st, cell);
  StateExpr after_q = measure_q(st, cell.corner, t);
  Reduction r = reduce_integral(measure_p(after_q, cell.center, m));
  if (auto* irr = std::get_if<Irreducible>(&r))
    throw DomainError("teleportation cell did not reduce: " + irr->diagnostic);
  return std::get<StateExpr>(std::move(r));
}

StateExpr prepare_cubic_ancilla(const std::string& psi_label, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("cubic gate strength must be positive");
  StateExpr st;
  st.bases = {ModeBase::external(psi_label), ModeBase::zero_momentum(), ModeBase::zero_momentum()};
  st.byproducts = {GaussianOp::fourier_inv(2), GaussianOp::squeeze(2, 1.0 / gamma), GaussianOp::cz(1, 2, 1.0),
                   GaussianOp::fourier_inv(1), GaussianOp::cz(0, 1, 1.0)};
  return st;
}

std::optional<CopyForm> analyze_copies(const StateExpr& st) {
  if (!st.phase.is_zero()) return std::nullopt;
  CopyForm f;
  std::optional<Vertex> source;
  for (Vertex v = 0; v < st.n_modes(); ++v) {
    const ModeBase& b = st.bases[v];
    if (b.kind == ModeBase::Kind::External) {
      if (source) return std::nullopt;
      source = v;
      f.modes.push_back({CopyForm::Kind::Q, 1.0});
    } else if (b.kind == ModeBase::Kind::ZeroMomentum) {
      f.modes.push_back({CopyForm::Kind::P, 0.0});
    } else {
      return std::nullopt;
    }
  }
  if (!source) return std::nullopt;
  f.source = *source;
  const Vertex x = f.source;
  using K = CopyForm::Kind;

  for (auto it = st.byproducts.rbegin(); it != st.byproducts.rend(); ++it) {
    const GaussianOp& op = *it;
    CopyForm::Mode& ma = f.modes[op.a];
    switch (op.kind) {
      case GaussianOp::Kind::Fourier:
        // F|y>_q = |y>_p, F|y>_p = |-y>_q
        ma = ma.kind == K::Q ? CopyForm::Mode{K::P, ma.factor} : CopyForm::Mode{K::Q, -ma.factor};
        break;
      case GaussianOp::Kind::FourierInv:
        ma = ma.kind == K::P ? CopyForm::Mode{K::Q, ma.factor} : CopyForm::Mode{K::P, -ma.factor};
        break;
      case GaussianOp::Kind::Squeeze:
        ma.factor = ma.kind == K::Q ? ma.factor * op.s : ma.factor / op.s;
        break;
      case GaussianOp::Kind::XDisp:
      case GaussianOp::Kind::ZDisp:
        if (op.s != 0.0) return std::nullopt;
        break;
      case GaussianOp::Kind::CZ2: {
        CopyForm::Mode& mb = f.modes[op.b];
        if (ma.kind == K::Q && mb.kind == K::Q) {
          f.source_phase.add({x, x}, op.s * ma.factor * mb.factor);
        } else if (ma.kind == K::Q) {
          mb.factor += op.s * ma.factor;  // e^{isq_a q_b} kicks p_b by s q_a
        } else if (mb.kind == K::Q) {
          ma.factor += op.s * mb.factor;
        } else {
          return std::nullopt;
        }
        break;
      }
      case GaussianOp::Kind::CX: {
        CopyForm::Mode& mb = f.modes[op.b];
        if (mb.kind != K::Q) return std::nullopt;
        if (ma.kind == K::Q)
          ma.factor -= op.s * mb.factor;  // e^{i s q_b p_a} shifts q_a by -s q_b
        else
          f.source_phase.add({x, x}, op.s * mb.factor * ma.factor);
        break;
      }
    }
  }
  return f;
}

StateExpr cubic_phase_gate(const std::string& psi_label, double gamma, double m, double n) {
  StateExpr anc = prepare_cubic_ancilla(psi_label, gamma);
  auto form = analyze_copies(anc);
  if (!form) throw DomainError("cubic ancilla is not a position-copy state");
  const Vertex x = form->source;
  for (const auto& md : form->modes)
    if (md.kind != CopyForm::Kind::Q) throw DomainError("cubic ancilla mode is not position-correlated");

  // Apply e^{i q0 q1 q2}: every q_j is c_j x on the support.
  PhasePolynomial edge = PhasePolynomial::monomial({0, 1, 2}, 1.0);
  PhasePolynomial phase = form->source_phase;
  for (const auto& [mono, w] : edge.terms()) {
    double c = w;
    for (Vertex v : mono) c *= form->modes[v].factor;
    phase.add(Monomial(mono.size(), x), c);
  }

  // <mu|_p |c x>_q = e^{-i mu c x}: the outcome dependence is a displacement.
  const std::map<Vertex, double> outcomes{{1, n}, {2, m}};
  double shift = 0.0;
  for (const auto& [v, mu] : outcomes) shift += mu * form->modes[v].factor;

  StateExpr out;
  out.bases = anc.bases;
  for (const auto& [v, mu] : outcomes) out.bases[v] = ModeBase::p_eigen(mu);
  double cx = form->modes[x].factor;
  if (cx != 1.0) out.byproducts.push_back(GaussianOp::squeeze(x, cx));  // |c x>_q = S(c)|x>_q
  if (shift != 0.0) out.byproducts.push_back(GaussianOp{kCubicDisplacement, x, 0, shift});
  out.phase = phase;
  return out;
}

std::string to_string(SqueezeClass c) {
  switch (c) {
    case SqueezeClass::AntiSqueeze: return "anti_squeeze";
    case SqueezeClass::Unit: return "unit";
    case SqueezeClass::Enhance: return "enhance";
    case SqueezeClass::Disconnect: return "disconnect";
    case SqueezeClass::Negative: return "negative";
  }
  return "?";
}

SqueezeClass classify_outcome(double m) {
  if (m < 0.0) return SqueezeClass::Negative;
  if (m == 0.0) return SqueezeClass::Disconnect;
  if (m < 1.0) return SqueezeClass::Enhance;
  if (m == 1.0) return SqueezeClass::Unit;
  return SqueezeClass::AntiSqueeze;
}

std::string SqueezeReport::render_table() const {
  std::string out = fmt::format("{:<8} {:<10} {}\n", "center", "outcome", "class");
  for (const auto& e : entries)
    out += fmt::format("{:<8} {:<10} {}\n", e.center, format_number(e.outcome), to_string(e.cls));
  return out;
}

std::pair<StateExpr, SqueezeReport> lattice_to_cluster(const StateExpr& st, const ClusterLayout& layout,
                                                       const std::map<Vertex, double>& outcomes) {
  if (st.n_modes() != layout.n_modes) throw DomainError("state does not match the lattice layout");
  StateExpr cur = st;
  SqueezeReport report;
  for (Vertex c : layout.centers) {
    auto it = outcomes.find(c);
    if (it == outcomes.end()) throw DomainError(fmt::format("missing outcome for center {}", c));
    cur = measure_q(cur, c, it->second);
    report.entries.push_back({c, it->second, classify_outcome(it->second)});
  }
  return {cur, report};
}

std::map<Vertex, double> parse_outcomes(const std::string& text, const ClusterLayout& layout) {
  std::optional<double> fallback;
  std::map<Vertex, double> explicit_values;
  std::stringstream ss(text);
  std::string item;
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("bad outcome value '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("outcome entries look like CENTER=VALUE or all=VALUE");
    std::string key = item.substr(0, eq);
    double value = to_double(item.substr(eq + 1));
    if (key == "all") {
      fallback = value;
      continue;
    }
    Vertex v = static_cast<Vertex>(to_double(key));
    if (std::find(layout.centers.begin(), layout.centers.end(), v) == layout.centers.end())
      throw DomainError(fmt::format("vertex {} is not a center", key));
    explicit_values[v] = value;
  }
  std::map<Vertex, double> out;
  for (Vertex c : layout.centers) {
    if (auto it = explicit_values.find(c); it != explicit_values.end())
      out[c] = it->second;
    else if (fallback)
      out[c] = *fallback;
    else
      throw DomainError(fmt::format("missing outcome for center {}", c));
  }
  return out;
}

std::string render_dot(const Hypergraph& g, const std::vector<Vertex>& nodes) {
  std::string out = "graph hypergraph {\n  node [shape=circle];\n";
  if (nodes.empty())
    for (Vertex v = 0; v < g.n_modes(); ++v) out += fmt::format("  q{};\n", v);
  for (Vertex v : nodes) out += fmt::format("  q{};\n", v);
  std::size_t aux = 0;
  for (const auto& [e, w] : g.edges()) {
    std::string label = w == 1.0 ? "" : fmt::format(" [label=\"{}\"]", format_number(w));
    if (e.size() == 2) {
      out += fmt::format("  q{} -- q{}{};\n", e[0], e[1], label);
      continue;
    }
    std::string node = fmt::format("e{}", aux++);
    std::string text = w == 1.0 ? "" : format_number(w);
    out += fmt::format("  {} [shape=triangle, style=filled, fillcolor=orange, label=\"{}\"];\n", node, text);
    for (Vertex v : e) out += fmt::format("  {} -- q{};\n", node, v);
  }
  return out + "}\n";
}

}  // namespace cvhg
