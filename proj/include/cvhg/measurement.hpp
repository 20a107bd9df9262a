#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cvhg/state.hpp"

namespace cvhg {

enum class Basis { Q, P };

struct MeasurementRecord {
  Vertex vertex;
  Basis basis;
  double outcome;
};

/// byproducts * ∫dx e^{-i m x} e^{i x Q(q)} e^{i P(q)} |bases>, left behind by
/// a momentum measurement of `measured` with outcome m.
struct IntegralState {
  Vertex measured;
  double outcome;
  PhasePolynomial coupling;  ///< Q
  PhasePolynomial residual;  ///< P
  std::vector<ModeBase> bases;
  std::vector<GaussianOp> byproducts;
  /// Base of the measured mode before the measurement; the oracle uses its
  /// position amplitude as the quadrature weight.
  ModeBase measured_base;

  std::string render() const;
};

/// Value (not error) returned when no rewrite rule applies.
struct Irreducible {
  std::string diagnostic;
};

using Reduction = std::variant<StateExpr, Irreducible>;

/// Position measurement: every phase term through v has q_v replaced by m and
/// v becomes |m>_q. Diagonal byproducts on v are resolved the same way; any
/// other byproduct on v is an error.
StateExpr measure_q(const StateExpr& st, Vertex v, double m);

/// Momentum measurement into the integral form. Diagonal byproducts are
/// canonicalized into the phase first; a remaining byproduct on v is an
/// error. A coupling with no q-dependence is reported as degenerate.
IntegralState measure_p(const StateExpr& st, Vertex v, double m);

/// Rewrite an IntegralState back into StateExpr form.
///  linear coupling  Q = sum a_j q_j + c : the lowest-index pivot j with a_j != 0,
///    base |0>_p, absent from P and from the byproducts becomes
///    prod_l e^{i (a_l/a) p_j q_l} X_j((c-m)/a) S_j(1/|a|) F_j^† |0>_p.
///  cell pattern  Q = q_a q_b + q_b q_c + t(q_a + q_c) :
///    e^{i p_c q_a} F_a CZ(a,c) Z_a(m/t) e^{i q_a q_b q_c / t}|0>_p.
///    t = 1 is the textbook teleportation statement; t != 1 is the same
///    statement rescaled through S_b(t).
///  anything else: Irreducible.
Reduction reduce_integral(const IntegralState& is);

struct ScriptResult {
  Reduction state;
  std::vector<MeasurementRecord> records;  ///< measurements actually applied
};

ScriptResult run_script(const StateExpr& st, const std::vector<MeasurementRecord>& script);

/// JSON: [{"v": 4, "basis": "q", "m": 1.0}, ...]
std::vector<MeasurementRecord> parse_script(std::string_view text);
std::string serialize_script(const std::vector<MeasurementRecord>& script);
std::vector<MeasurementRecord> load_script(const std::string& path);

}  // namespace cvhg
