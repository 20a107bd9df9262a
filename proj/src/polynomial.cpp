#include "cvhg/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cvhg/error.hpp"

namespace cvhg {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  return fmt::format("{}", x);
}

std::string render_monomial(const Monomial& m, bool with_star) {
  std::string out;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty() && with_star) out += '*';
    out += fmt::format("q{}", m[i]);
    if (j - i > 1) out += fmt::format("^{}", j - i);
    i = j;
  }
  return out;
}

PhasePolynomial PhasePolynomial::constant_term(double c) {
  PhasePolynomial p;
  p.add({}, c);
  return p;
}

PhasePolynomial PhasePolynomial::monomial(Monomial m, double c) {
  PhasePolynomial p;
  p.add(std::move(m), c);
  return p;
}

void PhasePolynomial::add(Monomial m, double c) {
  if (c == 0.0) return;
  std::sort(m.begin(), m.end());
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (std::abs(c) > kWeightEpsilon) terms_.emplace(std::move(m), c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) <= kWeightEpsilon) terms_.erase(it);
}

double PhasePolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

bool PhasePolynomial::references(Vertex v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) {
    return std::binary_search(t.first.begin(), t.first.end(), v);
  });
}

std::size_t PhasePolynomial::max_order() const {
  std::size_t k = 0;
  for (const auto& [m, c] : terms_) k = std::max(k, m.size());
  return k;
}

bool PhasePolynomial::is_multilinear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::adjacent_find(t.first.begin(), t.first.end()) == t.first.end();
  });
}

long PhasePolynomial::max_vertex() const {
  long v = -1;
  for (const auto& [m, c] : terms_)
    if (!m.empty()) v = std::max(v, static_cast<long>(m.back()));
  return v;
}

PhasePolynomial PhasePolynomial::derivative(Vertex v) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_) {
    auto k = std::count(m.begin(), m.end(), v);
    if (k == 0) continue;
    Monomial reduced = m;
    reduced.erase(std::find(reduced.begin(), reduced.end(), v));
    out.add(std::move(reduced), c * static_cast<double>(k));
  }
  return out;
}

PhasePolynomial PhasePolynomial::substitute(Vertex v, double value) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial reduced;
    double factor = 1.0;
    for (Vertex u : m) {
      if (u == v)
        factor *= value;
      else
        reduced.push_back(u);
    }
    out.add(std::move(reduced), c * factor);
  }
  return out;
}

PhasePolynomial PhasePolynomial::substitute_linear(Vertex v, double factor, Vertex target) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial mapped;
    double f = 1.0;
    for (Vertex u : m) {
      if (u == v) {
        f *= factor;
        mapped.push_back(target);
      } else {
        mapped.push_back(u);
      }
    }
    out.add(std::move(mapped), c * f);
  }
  return out;
}

PhasePolynomial PhasePolynomial::rescale(Vertex v, double s) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_) {
    auto k = std::count(m.begin(), m.end(), v);
    out.add(m, c * std::pow(s, -static_cast<double>(k)));
  }
  return out;
}

PhasePolynomial PhasePolynomial::without(Vertex v) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_)
    if (!std::binary_search(m.begin(), m.end(), v)) out.terms_.emplace(m, c);
  return out;
}

PhasePolynomial PhasePolynomial::linear_coefficient(Vertex v) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_) {
    auto k = std::count(m.begin(), m.end(), v);
    if (k == 0) continue;
    if (k > 1)
      throw DomainError(fmt::format("q{} appears with multiplicity {} in {}", v, k, render()));
    Monomial reduced = m;
    reduced.erase(std::find(reduced.begin(), reduced.end(), v));
    out.add(std::move(reduced), c);
  }
  return out;
}

double PhasePolynomial::evaluate(std::span<const double> q) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c;
    for (Vertex u : m) t *= q[u];
    sum += t;
  }
  return sum;
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator*=(double s) {
  if (std::abs(s) <= kWeightEpsilon) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) <= kWeightEpsilon)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

bool PhasePolynomial::approx_equal(const PhasePolynomial& o, double tol) const {
  PhasePolynomial diff = *this;
  for (const auto& [m, c] : o.terms_) {
    // Direct subtraction keeps near-cancellations visible to tol.
    auto it = diff.terms_.find(m);
    if (it == diff.terms_.end())
      diff.terms_.emplace(m, -c);
    else
      it->second -= c;
  }
  return std::all_of(diff.terms_.begin(), diff.terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second) <= tol; });
}

namespace {

std::string render_terms(const PhasePolynomial::Terms& terms, bool with_star) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms) {
    double mag = std::abs(c);
    std::string body;
    if (m.empty()) {
      body = format_number(mag);
    } else if (mag == 1.0) {
      body = render_monomial(m, with_star);
    } else {
      body = format_number(mag) + (with_star ? "*" : "") + render_monomial(m, with_star);
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace

std::string PhasePolynomial::render() const { return render_terms(terms_, false); }
std::string PhasePolynomial::render_product_form() const { return render_terms(terms_, true); }

}  // namespace cvhg
