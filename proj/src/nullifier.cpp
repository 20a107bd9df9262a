#include "cvhg/nullifier.hpp"

#include <fmt/format.h>

#include "cvhg/error.hpp"

namespace cvhg {

std::string NullifierOp::render() const {
  std::string out = fmt::format("p{}", mode);
  if (qpart.is_zero()) return out;
  std::string body = (qpart * -1.0).render_product_form();
  if (body.front() == '-')
    out += " - " + body.substr(1);
  else
    out += " + " + body;
  return out;
}

NullifierOp nullifier(const Hypergraph& g, Vertex i) {
  NullifierOp h{i, {}};
  for (const auto& [rest, w] : g.neighborhood(i)) h.qpart.add(rest, w);
  return h;
}

std::vector<NullifierOp> nullifiers(const Hypergraph& g) {
  std::vector<NullifierOp> out;
  for (Vertex i = 0; i < g.n_modes(); ++i) out.push_back(nullifier(g, i));
  return out;
}

StabilizerExpr stabilizer(const Hypergraph& g, Vertex i, double s) {
  return {i, s, nullifier(g, i).qpart};
}

std::optional<Vertex> check_annihilation(const Hypergraph& g, const std::vector<NullifierOp>& hs) {
  PhasePolynomial p = g.to_polynomial();
  for (const auto& h : hs) {
    if (h.qpart.references(h.mode)) return h.mode;
    if (!(p.derivative(h.mode) == h.qpart)) return h.mode;
  }
  return std::nullopt;
}

std::optional<Vertex> check_annihilation(const Hypergraph& g) {
  return check_annihilation(g, nullifiers(g));
}

PhasePolynomial commutator(const NullifierOp& a, const NullifierOp& b) {
  if (a.mode == b.mode) throw DomainError("commutator needs nullifiers on distinct modes");
  return b.qpart.derivative(a.mode) - a.qpart.derivative(b.mode);
}

std::variant<Decomposition, DecompositionFailure> decompose(const LinearNullifier& h, const Hypergraph& g) {
  if (h.p_coeffs.size() > g.n_modes())
    throw DomainError("more momentum coefficients than modes");
  PhasePolynomial residual = h.poly * -1.0;
  std::vector<double> c(g.n_modes(), 0.0);
  for (Vertex j = 0; j < h.p_coeffs.size(); ++j) {
    c[j] = h.p_coeffs[j];
    if (c[j] != 0.0) residual += nullifier(g, j).qpart * c[j];
  }
  if (!residual.is_zero()) return DecompositionFailure{residual};
  return Decomposition{c};
}

LinearNullifier combine(const Hypergraph& g, const std::vector<double>& c) {
  LinearNullifier h{c, {}};
  for (Vertex j = 0; j < c.size(); ++j)
    if (c[j] != 0.0) h.poly += nullifier(g, j).qpart * c[j];
  return h;
}

}  // namespace cvhg
