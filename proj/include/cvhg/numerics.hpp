#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cvhg/grid.hpp"
#include "cvhg/measurement.hpp"
#include "cvhg/nullifier.hpp"
#include "cvhg/state.hpp"

namespace cvhg {

/// Position-space amplitude of an External input.
using Wavepacket = std::function<cplx(double)>;
using Externals = std::map<std::string, Wavepacket>;

/// pi^{-1/4} e^{-(q-center)^2 / 2 width^2} / sqrt(width)
Wavepacket gaussian_packet(double center = 0.0, double width = 1.0);

/// Finite-squeezing stand-in for |0>_p: e^{-q^2 e^{-2r} / 2}
/// (position variance e^{2r}/2, momentum variance e^{-2r}/2). Unnormalized.
double squeezed_vacuum(double q, double r);

/// Position amplitude of a |0>_p base with its envelope, X(-offset) S(scale) g.
double zero_momentum_amplitude(const ModeBase& base, double q, double r);

/// Numerical image of a StateExpr. Live modes (|0>_p and External bases)
/// become grid axes in ascending vertex order; q-eigenstate modes act as
/// classical parameters in the phase and in diagonal or control slots of the
/// byproducts. Byproducts are applied right to left. Throws DomainError when
/// an op acts on a detached mode or an External label is unbound.
WaveFunction realize(const StateExpr& st, double r, GridSpec grid, const Externals& ext = {});

/// One Gaussian op on a realized state; `params` holds q-eigenvalues of
/// detached modes.
void apply_op(WaveFunction& wf, const GaussianOp& op, const std::map<Vertex, double>& params = {});

struct Quadrature {
  double x_min = -40.0;
  double x_max = 40.0;
  std::size_t steps = 2048;
};

/// Covers the measured mode's position amplitude to `sigmas` standard
/// deviations (amplitude width e^r).
Quadrature default_quadrature(double r, std::size_t steps, double sigmas = 6.0);

struct IntegralRealization {
  WaveFunction wf;
  /// 1 - fidelity between the sums with `steps` and `steps/2` points.
  double convergence = 0.0;
};

/// Sums e^{-imx} a(x) e^{ixQ(q)} over the quadrature (trapezoid), where a is
/// the measured mode's position amplitude, times the realized remainder
/// e^{iP} |bases>, then applies the outer byproducts.
IntegralRealization realize_integral(const IntegralState& is, double r, GridSpec grid, const Quadrature& quad,
                                     const Externals& ext = {});

/// q: slice through `value`, linear interpolation between grid planes.
/// p: momentum amplitude dx/sqrt(2pi) sum_j psi(x_j) e^{-i value x_j}.
/// The axis is removed. Throws DomainError outside the grid's range.
WaveFunction project_homodyne(const WaveFunction& wf, Vertex v, Basis basis, double value);

/// |<a|b>|^2 / (<a|a><b|b>). Throws DomainError on grid or label mismatch.
double fidelity(const WaveFunction& a, const WaveFunction& b);

/// Fidelity after rescaling every slice of b at fixed positions of `rest` to
/// the norm of the matching slice of a: the comparison ignores positive
/// envelopes on the rest modes (finite-squeezing artifacts of ideal identities)
/// but keeps every relative phase.
double envelope_fidelity(const WaveFunction& a, const WaveFunction& b, const std::vector<Vertex>& rest);

/// <H^2> - <H>^2 with p applied spectrally and the q-part pointwise.
double nullifier_variance(const WaveFunction& wf, const NullifierOp& h);

struct Marginal {
  std::vector<double> values;   ///< ascending
  std::vector<double> density;  ///< integrates to 1 with the grid spacing
  double spacing = 0.0;
};

Marginal marginal(const WaveFunction& wf, Vertex v, Basis basis);

/// Inverse-CDF draws from the marginal (uniform within a bin); deterministic
/// for a fixed seed.
std::vector<double> sample_homodyne(const WaveFunction& wf, Vertex v, Basis basis, std::uint64_t seed,
                                    std::size_t count = 1);

/// CSV with a position column and one position-marginal column per mode.
std::string marginals_csv(const WaveFunction& wf);

/// Direct finite-squeezing simulation of the cubic-gate pipeline on ψ's mode:
/// ψ(x) ∫dq1 dq2 A(q1-x) B(q2-γq1) e^{ix q1 q2} e^{-i n q1} e^{-i m q2}, where A
/// and B are the ancilla profiles left by F^† on squeezed vacua (amplitude
/// widths e^{-r} and γ e^{-r}). Both integrals are Riemann sums over ±8 widths.
WaveFunction cubic_gate_oracle(const Wavepacket& psi, double gamma, double m, double n, double r, GridSpec grid,
                               std::size_t steps = 256);

}  // namespace cvhg
