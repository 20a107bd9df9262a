#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cvhg/hypergraph.hpp"
#include "cvhg/polynomial.hpp"

namespace cvhg {

/// H = p_mode - qpart(q). qpart never references mode.
struct NullifierOp {
  Vertex mode;
  PhasePolynomial qpart;

  /// "p3 - q1*q2 - q4"
  std::string render() const;
};

/// K(s) = e^{isH} = X_mode(s) e^{-is qpart}. p_mode and qpart commute, so the
/// factorization is exact and K(s) stabilizes the state for every s.
struct StabilizerExpr {
  Vertex mode;
  double s;
  PhasePolynomial qpart;

  /// Exponent of the diagonal factor: -s * qpart.
  PhasePolynomial diagonal_exponent() const { return qpart * (-s); }
  bool is_identity() const { return s == 0.0; }
};

NullifierOp nullifier(const Hypergraph& g, Vertex i);
std::vector<NullifierOp> nullifiers(const Hypergraph& g);
StabilizerExpr stabilizer(const Hypergraph& g, Vertex i, double s);

/// Uses p_i e^{iP}|0>_p = (dP/dq_i) e^{iP}|0>_p: H_i annihilates the state iff
/// qpart equals dP/dq_i. Returns the first mode that fails, or nullopt.
std::optional<Vertex> check_annihilation(const Hypergraph& g);
std::optional<Vertex> check_annihilation(const Hypergraph& g, const std::vector<NullifierOp>& hs);

/// [H_a, H_b] = i * (d qpart_b / dq_{a.mode} - d qpart_a / dq_{b.mode}).
/// Returns the real polynomial in parentheses; zero means the pair commutes.
PhasePolynomial commutator(const NullifierOp& a, const NullifierOp& b);

/// sum_j p_coeffs[j] p_j - poly.
struct LinearNullifier {
  std::vector<double> p_coeffs;
  PhasePolynomial poly;
};

struct Decomposition {
  std::vector<double> coefficients;
};
struct DecompositionFailure {
  /// sum_j a_j qpart_j - poly; zero iff the decomposition exists.
  PhasePolynomial residual;
};

std::variant<Decomposition, DecompositionFailure> decompose(const LinearNullifier& h, const Hypergraph& g);

/// Convenience: sum_j c_j H_j as a LinearNullifier.
LinearNullifier combine(const Hypergraph& g, const std::vector<double>& c);

}  // namespace cvhg
