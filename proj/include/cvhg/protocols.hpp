#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvhg/hypergraph.hpp"
#include "cvhg/measurement.hpp"
#include "cvhg/state.hpp"

namespace cvhg {

// --- 3-edge teleportation ----------------------------------------------------

/// A square of four corners around a center carrying the four 3-edges
/// {center, corner, a}, {center, a, b}, {center, b, c}, {center, c, corner}.
struct CellRef {
  Vertex corner;  ///< q-measured
  Vertex center;  ///< p-measured
  Vertex a, b, c;
};

/// The cell of teleport_cell_graph().
constexpr CellRef kTeleportCell{0, 4, 1, 2, 3};

/// Throws DomainError unless st's phase holds the four unit-weight cell edges.
void validate_cell(const StateExpr& st, const CellRef& cell);

/// Measure q_corner = t, then p_center = m, and reduce. The result carries the
/// 3-edge {a,b,c} with weight 1/t and the cell byproducts. t = 0 is degenerate
/// and throws DomainError, as does any state the cell rule cannot reduce.
StateExpr teleport_3edge(const StateExpr& st, const CellRef& cell, double t, double m);

// --- cubic phase gate --------------------------------------------------------

/// F2^† S2(1/γ) CZ(1,2) F1^† CZ(0,1) on ψ ⊗ |0>_p ⊗ |0>_p, i.e.
/// ∫dx ψ(x)|x>_q|x>_q|γx>_q. Mode 0 is ψ, mode 1 the x copy, mode 2 the γx copy.
StateExpr prepare_cubic_ancilla(const std::string& psi_label, double gamma);

/// Ideal description of a state of the form ∫dx ψ(x) e^{iφ(x)} ⊗_j |c_j x>,
/// each mode in a q or p eigenstate whose label is linear in x.
struct CopyForm {
  enum class Kind { Q, P };
  struct Mode {
    Kind kind;
    double factor;
  };
  Vertex source;                 ///< the External mode carrying ψ
  std::vector<Mode> modes;       ///< indexed by vertex
  PhasePolynomial source_phase;  ///< φ, written as a polynomial in q_source
};

/// Pushes the ideal bases through the byproducts. Returns nullopt when the
/// state has a phase, no unique External mode, or an op that leaves the
/// linear-copy family (displacements, CZ between two p labels, ...).
std::optional<CopyForm> analyze_copies(const StateExpr& st);

/// Orientation of the cubic-gate displacement. The p-projections leave
/// e^{-i(γm+n)x} on ψ's support, a position-diagonal displacement; the oracle
/// comparison in the test suite pins it.
constexpr GaussianOp::Kind kCubicDisplacement = GaussianOp::Kind::ZDisp;

/// Prepare the ancilla, apply the 3-edge {0,1,2} with weight 1 and measure p on
/// the γx mode (outcome m) and on the x mode (outcome n). Output: phase γq0^3 on
/// ψ's mode and the byproduct Z0(γm+n) (absent when γm+n = 0). Throws
/// DomainError for γ <= 0.
StateExpr cubic_phase_gate(const std::string& psi_label, double gamma, double m, double n);

// --- lattice conversion ------------------------------------------------------

enum class SqueezeClass { AntiSqueeze, Unit, Enhance, Disconnect, Negative };

std::string to_string(SqueezeClass c);
SqueezeClass classify_outcome(double m);

struct SqueezeEntry {
  Vertex center;
  double outcome;
  SqueezeClass cls;
};

struct SqueezeReport {
  std::vector<SqueezeEntry> entries;
  std::string render_table() const;
};

/// q-measures every center with its outcome. The phase left behind is the
/// square-lattice cluster with weight m_c on the sides of center c's square.
/// Throws DomainError when a center has no outcome.
std::pair<StateExpr, SqueezeReport> lattice_to_cluster(const StateExpr& st, const ClusterLayout& layout,
                                                       const std::map<Vertex, double>& outcomes);

/// "all=1", "9=0,all=1", "8=2,9=2,10=2,11=2". Every center must be covered.
std::map<Vertex, double> parse_outcomes(const std::string& text, const ClusterLayout& layout);

/// Graphviz rendering. 2-edges are plain edges; every other edge becomes an
/// orange triangle node joined to its members. `nodes` limits the vertex
/// list (e.g. to the modes left live after measurements); default is all.
std::string render_dot(const Hypergraph& g, const std::vector<Vertex>& nodes = {});

}  // namespace cvhg
