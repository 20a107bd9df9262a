#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvhg/hypergraph.hpp"
#include "cvhg/polynomial.hpp"

namespace cvhg {

/// The Gaussian operator vocabulary needed by the measurement calculus.
/// Conventions: X(s)=e^{isp}, Z(s)=e^{-isq}, F|x>_q=|x>_p with kernel
/// e^{ixq}/sqrt(2pi), S(s)=e^{-(i/2)ln s (qp+pq)} so S|x>_q=|sx>_q.
struct GaussianOp {
  enum class Kind {
    Fourier,     ///< F_a
    FourierInv,  ///< F_a^dagger
    Squeeze,     ///< S_a(s), s > 0
    XDisp,       ///< e^{i s p_a}
    ZDisp,       ///< e^{-i s q_a}
    CZ2,         ///< e^{i s q_a q_b}
    CX,          ///< e^{i s p_a q_b}
  };

  Kind kind;
  Vertex a;
  Vertex b = 0;  // second mode for CZ2 / CX
  double s = 1.0;

  static GaussianOp fourier(Vertex a) { return {Kind::Fourier, a}; }
  static GaussianOp fourier_inv(Vertex a) { return {Kind::FourierInv, a}; }
  static GaussianOp squeeze(Vertex a, double s) { return {Kind::Squeeze, a, 0, s}; }
  static GaussianOp xdisp(Vertex a, double s) { return {Kind::XDisp, a, 0, s}; }
  static GaussianOp zdisp(Vertex a, double s) { return {Kind::ZDisp, a, 0, s}; }
  static GaussianOp cz(Vertex a, Vertex b, double s = 1.0) { return {Kind::CZ2, a, b, s}; }
  static GaussianOp cx(Vertex a, Vertex b, double s = 1.0) { return {Kind::CX, a, b, s}; }

  bool two_mode() const { return kind == Kind::CZ2 || kind == Kind::CX; }
  bool diagonal() const { return kind == Kind::ZDisp || kind == Kind::CZ2; }
  bool touches(Vertex v) const { return a == v || (two_mode() && b == v); }
  /// True when the two ops act on disjoint modes or are both diagonal.
  bool commutes_with(const GaussianOp& o) const;
  GaussianOp inverse() const;
  /// The phase exponent of a diagonal op.
  PhasePolynomial as_phase() const;
  /// Throws DomainError for bad mode indices or a non-positive squeeze.
  void validate(std::size_t n_modes) const;

  std::string render() const;
  bool operator==(const GaussianOp&) const = default;
};

/// Finite-squeezing bookkeeping carried by an ideal |0>_p. In the ideal
/// calculus X(s)|0>_p = S(s)|0>_p = |0>_p, so absorbed displacements and
/// squeezes are invisible symbolically; the numerical oracle realizes the
/// base as X(-offset) S(scale) applied to a squeezed vacuum.
struct Envelope {
  double scale = 1.0;
  double offset = 0.0;
  bool operator==(const Envelope&) const = default;
};

struct ModeBase {
  enum class Kind { ZeroMomentum, QEigen, PEigen, External };

  Kind kind = Kind::ZeroMomentum;
  double value = 0.0;  // eigenvalue for QEigen / PEigen
  std::string label;   // External only
  Envelope envelope;   // ZeroMomentum only

  static ModeBase zero_momentum() { return {}; }
  static ModeBase q_eigen(double v) { return {Kind::QEigen, v, {}, {}}; }
  static ModeBase p_eigen(double v) { return {Kind::PEigen, v, {}, {}}; }
  static ModeBase external(std::string label) { return {Kind::External, 0.0, std::move(label), {}}; }

  bool detached() const { return kind == Kind::QEigen || kind == Kind::PEigen; }
  std::string render() const;
  bool operator==(const ModeBase&) const = default;
};

/// byproducts[0] * ... * byproducts[k-1] * e^{i phase(q)} |bases>.
/// byproducts[0] is applied last.
struct StateExpr {
  std::vector<GaussianOp> byproducts;
  PhasePolynomial phase;
  std::vector<ModeBase> bases;

  std::size_t n_modes() const { return bases.size(); }
  bool touched_by_byproduct(Vertex v) const;
  /// Modes that are neither q- nor p-detached, ascending.
  std::vector<Vertex> live_modes() const;
  /// The phase as a hypergraph; throws when the phase is not multilinear.
  Hypergraph phase_graph() const;

  /// "e^{ip3q1} F1 CZ(1,3) Z1(0.5) · exp(i[q1q2q3]) |0p,0p,0p⟩"
  std::string render() const;
  bool operator==(const StateExpr&) const = default;
};

StateExpr state_from_hypergraph(const Hypergraph& g);

/// Apply op after the current expression. Diagonal ops whose modes no pending
/// byproduct touches are fused into the phase; XDisp / Squeeze on an untouched
/// |0>_p mode that the phase does not reference are absorbed into the base
/// envelope; everything else is prepended to the byproduct list.
StateExpr apply_gaussian(const StateExpr& st, const GaussianOp& op);

/// Rewrites e^{i m q_e} as S_pivot(m)^dagger e^{i q_e} S_pivot(m) with S(m)
/// absorbed by the pivot's |0>_p. Other phase terms on the pivot are rescaled
/// by m^{-deg}. Throws DomainError if m <= 0, the edge is absent, the pivot is
/// not in the edge or its base is not |0>_p.
StateExpr weight_to_squeeze(const StateExpr& st, const VertexSet& edge, Vertex pivot);

/// Moves diagonal byproducts into the phase where every op applied before
/// them commutes with them, and cancels adjacent inverse pairs. The state is
/// unchanged as an operator expression.
StateExpr canonicalize(const StateExpr& st);

}  // namespace cvhg
