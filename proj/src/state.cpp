#include "cvhg/state.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cvhg/error.hpp"

namespace cvhg {

// --- GaussianOp --------------------------------------------------------------

bool GaussianOp::commutes_with(const GaussianOp& o) const {
  if (diagonal() && o.diagonal()) return true;
  bool shared = touches(o.a) || (o.two_mode() && touches(o.b));
  return !shared;
}

GaussianOp GaussianOp::inverse() const {
  GaussianOp inv = *this;
  switch (kind) {
    case Kind::Fourier: inv.kind = Kind::FourierInv; break;
    case Kind::FourierInv: inv.kind = Kind::Fourier; break;
    case Kind::Squeeze: inv.s = 1.0 / s; break;
    default: inv.s = -s; break;
  }
  return inv;
}

PhasePolynomial GaussianOp::as_phase() const {
  switch (kind) {
    case Kind::ZDisp: return PhasePolynomial::monomial({a}, -s);
    case Kind::CZ2: return PhasePolynomial::monomial({a, b}, s);
    default: throw DomainError("not a diagonal operator: " + render());
  }
}

void GaussianOp::validate(std::size_t n_modes) const {
  if (a >= n_modes || (two_mode() && b >= n_modes))
    throw DomainError(fmt::format("{} references a mode outside 0..{}", render(), n_modes - 1));
  if (two_mode() && a == b) throw DomainError(render() + " acts twice on one mode");
  if (kind == Kind::Squeeze && !(s > 0.0)) throw DomainError("squeeze parameter must be > 0");
}

std::string GaussianOp::render() const {
  switch (kind) {
    case Kind::Fourier: return fmt::format("F{}", a);
    case Kind::FourierInv: return fmt::format("F{}^†", a);
    case Kind::Squeeze: return fmt::format("S{}({})", a, format_number(s));
    case Kind::XDisp: return fmt::format("X{}({})", a, format_number(s));
    case Kind::ZDisp: return fmt::format("Z{}({})", a, format_number(s));
    case Kind::CZ2:
      if (s == 1.0) return fmt::format("CZ({},{})", a, b);
      return fmt::format("CZ({},{};{})", a, b, format_number(s));
    case Kind::CX:
      if (s == 1.0) return fmt::format("e^{{ip{}q{}}}", a, b);
      if (s == -1.0) return fmt::format("e^{{-ip{}q{}}}", a, b);
      return fmt::format("e^{{i{}p{}q{}}}", format_number(s), a, b);
  }
  return "?";
}

// --- ModeBase / StateExpr ----------------------------------------------------

std::string ModeBase::render() const {
  switch (kind) {
    case Kind::ZeroMomentum: return "0p";
    case Kind::QEigen: return "q=" + format_number(value);
    case Kind::PEigen: return "p=" + format_number(value);
    case Kind::External: return label;
  }
  return "?";
}

bool StateExpr::touched_by_byproduct(Vertex v) const {
  return std::any_of(byproducts.begin(), byproducts.end(),
                     [v](const GaussianOp& op) { return op.touches(v); });
}

std::vector<Vertex> StateExpr::live_modes() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < bases.size(); ++v)
    if (!bases[v].detached()) out.push_back(v);
  return out;
}

Hypergraph StateExpr::phase_graph() const { return Hypergraph::from_polynomial(phase, n_modes()); }

std::string StateExpr::render() const {
  std::string out;
  for (const auto& op : byproducts) out += op.render() + " ";
  if (!byproducts.empty()) out += "· ";
  out += "exp(i[" + phase.render() + "]) |";
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (i) out += ",";
    out += bases[i].render();
  }
  out += "⟩";
  return out;
}

StateExpr state_from_hypergraph(const Hypergraph& g) {
  StateExpr st;
  st.phase = g.to_polynomial();
  st.bases.assign(g.n_modes(), ModeBase::zero_momentum());
  return st;
}

namespace {

void require_live(const StateExpr& st, Vertex v, const char* what) {
  if (v >= st.n_modes()) throw DomainError(fmt::format("{}: mode {} out of range", what, v));
  if (st.bases[v].detached())
    throw DomainError(fmt::format("{}: mode {} is already measured", what, v));
}

}  // namespace

StateExpr apply_gaussian(const StateExpr& st, const GaussianOp& op) {
  op.validate(st.n_modes());
  require_live(st, op.a, "apply_gaussian");
  if (op.two_mode()) require_live(st, op.b, "apply_gaussian");

  StateExpr out = st;
  bool touched = st.touched_by_byproduct(op.a) || (op.two_mode() && st.touched_by_byproduct(op.b));
  if (op.diagonal() && !touched) {
    out.phase += op.as_phase();
    return out;
  }
  ModeBase& base = out.bases[op.a];
  bool fresh = !touched && base.kind == ModeBase::Kind::ZeroMomentum && !st.phase.references(op.a);
  if (fresh && op.kind == GaussianOp::Kind::XDisp) {
    base.envelope.offset -= op.s;
    return out;
  }
  if (fresh && op.kind == GaussianOp::Kind::Squeeze) {
    base.envelope.scale *= op.s;
    base.envelope.offset *= op.s;
    return out;
  }
  out.byproducts.insert(out.byproducts.begin(), op);
  return out;
}

StateExpr weight_to_squeeze(const StateExpr& st, const VertexSet& edge, Vertex pivot) {
  require_live(st, pivot, "weight_to_squeeze");
  VertexSet key = edge;
  std::sort(key.begin(), key.end());
  if (!std::binary_search(key.begin(), key.end(), pivot))
    throw DomainError(fmt::format("pivot {} is not in the edge", pivot));
  double m = st.phase.coefficient(key);
  if (m == 0.0) throw DomainError("edge not present in the phase polynomial");
  if (!(m > 0.0))
    throw DomainError("weight_to_squeeze needs a positive weight; keep negative weights as weights");
  if (st.bases[pivot].kind != ModeBase::Kind::ZeroMomentum)
    throw DomainError("pivot base must be |0>_p to absorb the squeeze");
  if (m == 1.0) return st;

  StateExpr out = st;
  out.phase = st.phase.rescale(pivot, m);
  out.byproducts.push_back(GaussianOp::squeeze(pivot, 1.0 / m));
  Envelope& env = out.bases[pivot].envelope;
  env.scale *= m;
  env.offset *= m;
  return out;
}

StateExpr canonicalize(const StateExpr& st) {
  StateExpr out = st;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = out.byproducts.size(); k-- > 0;) {
      const GaussianOp& op = out.byproducts[k];
      if (!op.diagonal()) continue;
      bool clear = std::all_of(out.byproducts.begin() + static_cast<long>(k) + 1, out.byproducts.end(),
                               [&op](const GaussianOp& later) { return op.commutes_with(later); });
      if (!clear) continue;
      out.phase += op.as_phase();
      out.byproducts.erase(out.byproducts.begin() + static_cast<long>(k));
      changed = true;
    }
    for (std::size_t k = 0; k + 1 < out.byproducts.size(); ++k) {
      if (out.byproducts[k + 1] == out.byproducts[k].inverse()) {
        out.byproducts.erase(out.byproducts.begin() + static_cast<long>(k),
                             out.byproducts.begin() + static_cast<long>(k) + 2);
        changed = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace cvhg
