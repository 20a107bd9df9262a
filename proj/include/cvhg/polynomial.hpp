#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cvhg {

using Vertex = std::uint32_t;

/// Sorted vertex multiset; {0,0,0} is q0^3. The empty monomial is the constant.
using Monomial = std::vector<Vertex>;

/// Coefficients at or below this magnitude are treated as zero.
inline constexpr double kWeightEpsilon = 1e-12;

/// Real polynomial in the position quadratures, used as the exponent of a
/// diagonal phase e^{iP(q)}. Zero coefficients are never stored.
class PhasePolynomial {
 public:
  using Terms = std::map<Monomial, double>;

  PhasePolynomial() = default;

  static PhasePolynomial constant_term(double c);
  static PhasePolynomial monomial(Monomial m, double c = 1.0);

  /// Adds c to the coefficient of m (m need not be sorted).
  void add(Monomial m, double c);
  void add_constant(double c) { add({}, c); }

  double coefficient(const Monomial& m) const;
  double constant() const { return coefficient({}); }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool references(Vertex v) const;
  std::size_t max_order() const;
  bool is_multilinear() const;
  /// Highest vertex index referenced, or -1 when none.
  long max_vertex() const;

  /// d/dq_v.
  PhasePolynomial derivative(Vertex v) const;
  /// Replace q_v by a number.
  PhasePolynomial substitute(Vertex v, double value) const;
  /// Replace q_v by factor * q_target.
  PhasePolynomial substitute_linear(Vertex v, double factor, Vertex target) const;
  /// Replace q_v by q_v / s for every occurrence (a term of degree k in v
  /// picks up s^{-k}).
  PhasePolynomial rescale(Vertex v, double s) const;
  /// Terms that do not contain v.
  PhasePolynomial without(Vertex v) const;
  /// For terms containing v exactly once: the term with v removed.
  /// Throws DomainError when v appears with multiplicity > 1.
  PhasePolynomial linear_coefficient(Vertex v) const;

  /// Evaluate with q indexed by vertex.
  double evaluate(std::span<const double> q) const;

  PhasePolynomial& operator+=(const PhasePolynomial& o);
  PhasePolynomial& operator-=(const PhasePolynomial& o);
  PhasePolynomial& operator*=(double s);
  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(PhasePolynomial a, double s) { return a *= s; }
  friend PhasePolynomial operator*(double s, PhasePolynomial a) { return a *= s; }

  /// Equal within tol on every coefficient.
  bool approx_equal(const PhasePolynomial& o, double tol = kWeightEpsilon) const;
  bool operator==(const PhasePolynomial& o) const { return terms_ == o.terms_; }

  /// "q1q2q3 + 0.5q3q4 - q0^3". Zero renders as "0".
  std::string render() const;
  /// Product spelling used in nullifiers: "q1*q2", "2*q1".
  std::string render_product_form() const;

 private:
  Terms terms_;
};

std::string render_monomial(const Monomial& m, bool with_star);
/// Shortest round-trip spelling of a double.
std::string format_number(double x);

}  // namespace cvhg
