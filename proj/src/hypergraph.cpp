#include "cvhg/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cvhg/error.hpp"

namespace cvhg {

Hypergraph::Hypergraph(std::size_t n_modes, double constant)
    : n_modes_(n_modes), constant_(std::abs(constant) <= kWeightEpsilon ? 0.0 : constant) {}

void Hypergraph::check_vertex(Vertex v) const {
  if (v >= n_modes_)
    throw DomainError(fmt::format("vertex {} out of range for {} modes", v, n_modes_));
}

double Hypergraph::weight(const VertexSet& e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? 0.0 : it->second;
}

Hypergraph& Hypergraph::add_edge(VertexSet vertices, double weight) {
  if (vertices.empty())
    throw DomainError("empty vertex set; use the constant term for a global phase");
  for (Vertex v : vertices) check_vertex(v);
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw DomainError("hyperedge repeats a vertex");
  if (weight == 0.0) return *this;
  auto it = edges_.find(vertices);
  if (it == edges_.end()) {
    if (std::abs(weight) > kWeightEpsilon) edges_.emplace(std::move(vertices), weight);
    return *this;
  }
  it->second += weight;
  if (std::abs(it->second) <= kWeightEpsilon) edges_.erase(it);
  return *this;
}

Hypergraph& Hypergraph::add_constant(double c) {
  constant_ += c;
  if (std::abs(constant_) <= kWeightEpsilon) constant_ = 0.0;
  return *this;
}

std::vector<std::pair<VertexSet, double>> Hypergraph::neighborhood(Vertex i) const {
  check_vertex(i);
  std::vector<std::pair<VertexSet, double>> out;
  for (const auto& [e, w] : edges_) {
    if (!std::binary_search(e.begin(), e.end(), i)) continue;
    VertexSet reduced;
    std::copy_if(e.begin(), e.end(), std::back_inserter(reduced), [i](Vertex u) { return u != i; });
    out.emplace_back(std::move(reduced), w);
  }
  return out;
}

std::size_t Hypergraph::degree(Vertex i) const {
  check_vertex(i);
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [i](const auto& e) {
    return std::binary_search(e.first.begin(), e.first.end(), i);
  }));
}

PhasePolynomial Hypergraph::to_polynomial() const {
  PhasePolynomial p;
  p.add_constant(constant_);
  for (const auto& [e, w] : edges_) p.add(e, w);
  return p;
}

Hypergraph Hypergraph::from_polynomial(const PhasePolynomial& p, std::size_t n_modes) {
  if (!p.is_multilinear())
    throw DomainError("polynomial is not multilinear: " + p.render());
  Hypergraph g(n_modes, p.constant());
  for (const auto& [m, c] : p.terms())
    if (!m.empty()) g.add_edge(m, c);
  return g;
}

bool Hypergraph::approx_equal(const Hypergraph& o, double tol) const {
  if (n_modes_ != o.n_modes_) return false;
  if (std::abs(constant_ - o.constant_) > tol) return false;
  return to_polynomial().approx_equal(o.to_polynomial(), tol);
}

Hypergraph add_edge(Hypergraph g, VertexSet vertices, double weight) {
  g.add_edge(std::move(vertices), weight);
  return g;
}

// --- serialization ---------------------------------------------------------

Hypergraph parse_hypergraph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed hypergraph document: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("modes"))
      throw DomainError("hypergraph document needs an object with \"modes\"");
    long long modes = doc.at("modes").get<long long>();
    if (modes < 0) throw DomainError("\"modes\" must be non-negative");
    Hypergraph g(static_cast<std::size_t>(modes), doc.value("constant", 0.0));
    std::set<VertexSet> seen;
    for (const auto& edge : doc.value("edges", nlohmann::json::array())) {
      VertexSet v;
      for (const auto& x : edge.at("v")) {
        long long u = x.get<long long>();
        if (u < 0 || u >= modes)
          throw DomainError(fmt::format("vertex {} out of range for {} modes", u, modes));
        v.push_back(static_cast<Vertex>(u));
      }
      if (!std::is_sorted(v.begin(), v.end()) ||
          std::adjacent_find(v.begin(), v.end()) != v.end())
        throw DomainError("edge vertex arrays must be strictly ascending");
      if (!seen.insert(v).second)
        throw DomainError(fmt::format("duplicate edge [{}]", fmt::join(v, ",")));
      g.add_edge(std::move(v), edge.at("w").get<double>());
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed hypergraph document: ") + e.what());
  }
}

std::string serialize_hypergraph(const Hypergraph& g) {
  nlohmann::json doc;
  doc["modes"] = g.n_modes();
  doc["constant"] = g.constant();
  auto edges = nlohmann::json::array();
  for (const auto& [e, w] : g.edges()) edges.push_back({{"v", e}, {"w", w}});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hypergraph(ss.str());
}

// --- 3-cluster -------------------------------------------------------------

ClusterLayout cluster_layout(const LatticeSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) throw DomainError("lattice needs rows >= 1 and cols >= 1");
  ClusterLayout layout;
  layout.spec = spec;

  using Pos = std::pair<std::size_t, std::size_t>;
  std::vector<Pos> squares;
  for (std::size_t r = 0; r < spec.rows; ++r)
    for (std::size_t c = 0; c < spec.cols; ++c) squares.emplace_back(r, 2 * c + r % 2);

  std::set<Pos> corner_set;
  for (auto [i, j] : squares) {
    corner_set.insert({i, j});
    corner_set.insert({i, j + 1});
    corner_set.insert({i + 1, j + 1});
    corner_set.insert({i + 1, j});
  }
  std::map<Pos, Vertex> id;
  Vertex next = 0;
  for (const Pos& p : corner_set) {  // std::set orders row-major
    id[p] = next;
    layout.corners.push_back(next);
    layout.corner_position[next] = p;
    ++next;
  }
  for (auto [i, j] : squares) {
    ClusterCell cell{next, {id[{i, j}], id[{i, j + 1}], id[{i + 1, j + 1}], id[{i + 1, j}]}};
    layout.centers.push_back(next);
    layout.cells.push_back(cell);
    ++next;
  }
  layout.n_modes = next;
  return layout;
}

std::vector<VertexSet> ClusterLayout::square_lattice_edges() const {
  std::vector<VertexSet> out;
  for (const auto& cell : cells)
    for (int k = 0; k < 4; ++k) {
      VertexSet e{cell.corners[k], cell.corners[(k + 1) % 4]};
      std::sort(e.begin(), e.end());
      out.push_back(e);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Hypergraph build_3cluster(const LatticeSpec& spec) {
  ClusterLayout layout = cluster_layout(spec);
  Hypergraph g(layout.n_modes);
  for (const auto& cell : layout.cells)
    for (int k = 0; k < 4; ++k)
      g.add_edge({cell.center, cell.corners[k], cell.corners[(k + 1) % 4]}, 1.0);
  return g;
}

Hypergraph paper_example_graph() {
  Hypergraph g(5);
  g.add_edge({1, 2, 3}, 1.0).add_edge({3, 4}, 1.0);
  return g;
}

Hypergraph paper_example_graph_compact() {
  Hypergraph g(4);
  g.add_edge({0, 1, 2}, 1.0).add_edge({2, 3}, 1.0);
  return g;
}

Hypergraph teleport_cell_graph() {
  Hypergraph g(5);
  g.add_edge({0, 1, 4}, 1.0).add_edge({1, 2, 4}, 1.0).add_edge({2, 3, 4}, 1.0).add_edge({0, 3, 4}, 1.0);
  return g;
}

}  // namespace cvhg
