#include "cvhg/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cvhg/error.hpp"

namespace cvhg {

namespace {

void require_live(const StateExpr& st, Vertex v) {
  if (v >= st.n_modes()) throw DomainError(fmt::format("vertex {} out of range", v));
  if (st.bases[v].detached()) throw DomainError(fmt::format("vertex {} is already measured", v));
}

bool any_touches(const std::vector<GaussianOp>& ops, Vertex v) {
  return std::any_of(ops.begin(), ops.end(), [v](const GaussianOp& op) { return op.touches(v); });
}

}  // namespace

std::string IntegralState::render() const {
  std::string out;
  for (const auto& op : byproducts) out += op.render() + " ";
  out += fmt::format("∫dx e^{{-i{}x}} e^{{ix[{}]}} exp(i[{}]) |", format_number(outcome),
                     coupling.render(), residual.render());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (i) out += ",";
    out += bases[i].render();
  }
  return out + "⟩";
}

StateExpr measure_q(const StateExpr& st, Vertex v, double m) {
  require_live(st, v);
  StateExpr out = st;
  out.byproducts.clear();
  for (const GaussianOp& op : st.byproducts) {
    if (!op.touches(v)) {
      out.byproducts.push_back(op);
      continue;
    }
    if (op.kind == GaussianOp::Kind::CZ2) {
      Vertex other = op.a == v ? op.b : op.a;
      out.byproducts.push_back(GaussianOp::zdisp(other, -op.s * m));
    } else if (op.kind != GaussianOp::Kind::ZDisp) {
      throw DomainError(fmt::format("pending byproduct {} on vertex {} must be reduced first", op.render(), v));
    }
    // ZDisp on v is a global phase once q_v = m.
  }
  out.phase = st.phase.substitute(v, m);
  out.bases[v] = ModeBase::q_eigen(m);
  return out;
}

IntegralState measure_p(const StateExpr& st, Vertex v, double m) {
  require_live(st, v);
  StateExpr c = canonicalize(st);
  if (any_touches(c.byproducts, v))
    throw DomainError(fmt::format("pending byproduct on vertex {} must be reduced first", v));
  IntegralState is;
  is.measured = v;
  is.outcome = m;
  is.coupling = c.phase.linear_coefficient(v);
  is.residual = c.phase.without(v);
  is.bases = c.bases;
  is.measured_base = c.bases[v];
  is.bases[v] = ModeBase::p_eigen(m);
  is.byproducts = c.byproducts;
  bool q_dependent = std::any_of(is.coupling.terms().begin(), is.coupling.terms().end(),
                                 [](const auto& t) { return !t.first.empty(); });
  if (!q_dependent)
    throw DomainError(fmt::format(
        "degenerate momentum measurement on vertex {}: the coupling carries no position dependence", v));
  return is;
}

namespace {

bool is_zero_momentum(const ModeBase& b) { return b.kind == ModeBase::Kind::ZeroMomentum; }

std::optional<Reduction> reduce_linear(const IntegralState& is) {
  const PhasePolynomial& q = is.coupling;
  if (q.max_order() > 1) return std::nullopt;
  std::optional<Vertex> pivot;
  for (const auto& [mono, a] : q.terms()) {  // ascending vertex order
    if (mono.empty()) continue;
    Vertex j = mono.front();
    if (is_zero_momentum(is.bases[j]) && !is.residual.references(j) && !any_touches(is.byproducts, j)) {
      pivot = j;
      break;
    }
  }
  if (!pivot) return Reduction{Irreducible{"linear coupling has no free pivot"}};
  Vertex p = *pivot;
  double a = q.coefficient({p});

  StateExpr out;
  out.byproducts = is.byproducts;
  for (const auto& [mono, al] : q.terms())
    if (!mono.empty() && mono.front() != p) out.byproducts.push_back(GaussianOp::cx(p, mono.front(), al / a));
  double shift = (q.constant() - is.outcome) / a;
  if (shift != 0.0) out.byproducts.push_back(GaussianOp::xdisp(p, shift));
  if (std::abs(a) != 1.0) out.byproducts.push_back(GaussianOp::squeeze(p, 1.0 / std::abs(a)));
  out.byproducts.push_back(GaussianOp::fourier_inv(p));
  out.phase = is.residual;
  out.bases = is.bases;
  out.bases[p] = ModeBase::zero_momentum();
  return Reduction{std::move(out)};
}

std::optional<Reduction> reduce_cell(const IntegralState& is) {
  const PhasePolynomial& q = is.coupling;
  if (q.max_order() != 2 || !q.is_multilinear()) return std::nullopt;
  std::vector<Monomial> quad;
  std::map<Vertex, double> lin;
  for (const auto& [mono, c] : q.terms()) {
    if (mono.empty()) return std::nullopt;
    if (mono.size() == 2) {
      if (std::abs(c - 1.0) > kWeightEpsilon) return std::nullopt;
      quad.push_back(mono);
    } else {
      lin[mono.front()] = c;
    }
  }
  if (quad.size() != 2) return std::nullopt;
  std::vector<Vertex> shared;
  std::set_intersection(quad[0].begin(), quad[0].end(), quad[1].begin(), quad[1].end(),
                        std::back_inserter(shared));
  if (shared.size() != 1) return std::nullopt;
  Vertex b = shared.front();
  Vertex x = quad[0][0] == b ? quad[0][1] : quad[0][0];
  Vertex y = quad[1][0] == b ? quad[1][1] : quad[1][0];
  Vertex a = std::min(x, y);
  Vertex c = std::max(x, y);
  if (lin.size() != 2 || !lin.count(a) || !lin.count(c)) return std::nullopt;
  double t = lin[a];
  if (std::abs(lin[c] - t) > kWeightEpsilon || t == 0.0) return std::nullopt;

  for (Vertex u : {a, b, c})
    if (!is_zero_momentum(is.bases[u]) || any_touches(is.byproducts, u))
      return Reduction{Irreducible{fmt::format("cell pattern on ({},{},{}) but mode {} is not a fresh |0>_p", a, b, c, u)}};
  if (is.residual.references(a) || is.residual.references(c))
    return Reduction{Irreducible{fmt::format("cell pattern on ({},{},{}) but the residual phase acts on a target", a, b, c)}};

  StateExpr out;
  out.byproducts = is.byproducts;
  out.byproducts.push_back(GaussianOp::cx(c, a, 1.0));
  out.byproducts.push_back(GaussianOp::fourier(a));
  out.byproducts.push_back(GaussianOp::cz(a, c, 1.0));
  out.byproducts.push_back(GaussianOp::zdisp(a, is.outcome / t));
  out.phase = is.residual;
  out.phase.add({a, b, c}, 1.0 / t);
  out.bases = is.bases;
  return Reduction{std::move(out)};
}

}  // namespace

Reduction reduce_integral(const IntegralState& is) {
  if (!is_zero_momentum(is.measured_base))
    return Irreducible{"measured mode was not a |0>_p base"};
  if (auto r = reduce_linear(is)) return *r;
  if (auto r = reduce_cell(is)) return *r;
  std::size_t k = is.coupling.max_order();
  if (k == 2) return Irreducible{"no rule for degree-2 non-cell pattern"};
  return Irreducible{fmt::format(
      "coupling of degree {}: higher-order hyperedges do not reduce to Gaussian byproducts", k)};
}

ScriptResult run_script(const StateExpr& st, const std::vector<MeasurementRecord>& script) {
  std::set<Vertex> seen;
  for (const auto& rec : script)
    if (!seen.insert(rec.vertex).second)
      throw DomainError(fmt::format("vertex {} is measured twice", rec.vertex));

  ScriptResult result{st, {}};
  StateExpr cur = st;
  for (const auto& rec : script) {
    result.records.push_back(rec);
    if (rec.basis == Basis::Q) {
      cur = measure_q(cur, rec.vertex, rec.outcome);
      continue;
    }
    Reduction r = reduce_integral(measure_p(cur, rec.vertex, rec.outcome));
    if (std::holds_alternative<Irreducible>(r)) {
      result.state = std::move(r);
      return result;
    }
    cur = std::get<StateExpr>(std::move(r));
  }
  result.state = std::move(cur);
  return result;
}

std::vector<MeasurementRecord> parse_script(std::string_view text) {
  try {
    auto doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw DomainError("measurement script must be a JSON array");
    std::vector<MeasurementRecord> out;
    for (const auto& item : doc) {
      long long v = item.at("v").get<long long>();
      if (v < 0) throw DomainError("negative vertex in script");
      std::string basis = item.at("basis").get<std::string>();
      if (basis != "q" && basis != "p") throw DomainError("basis must be \"q\" or \"p\"");
      out.push_back({static_cast<Vertex>(v), basis == "q" ? Basis::Q : Basis::P, item.at("m").get<double>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed measurement script: ") + e.what());
  }
}

std::string serialize_script(const std::vector<MeasurementRecord>& script) {
  auto doc = nlohmann::json::array();
  for (const auto& r : script)
    doc.push_back({{"v", r.vertex}, {"basis", r.basis == Basis::Q ? "q" : "p"}, {"m", r.outcome}});
  return doc.dump() + "\n";
}

std::vector<MeasurementRecord> load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open script file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

}  // namespace cvhg
