#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvhg/polynomial.hpp"

namespace cvhg {

/// Sorted, duplicate-free vertex set.
using VertexSet = std::vector<Vertex>;

/// Weighted hypergraph over n modes. An edge e with weight w stands for the
/// multi-controlled phase e^{i w prod_{j in e} q_j}; the hypergraph is the
/// same object as a multilinear phase polynomial.
class Hypergraph {
 public:
  using EdgeMap = std::map<VertexSet, double>;

  explicit Hypergraph(std::size_t n_modes = 0, double constant = 0.0);

  std::size_t n_modes() const { return n_modes_; }
  double constant() const { return constant_; }
  const EdgeMap& edges() const { return edges_; }
  double weight(const VertexSet& e) const;

  /// Adds weight to the edge (exponents of commuting phases add). Edges that
  /// reach zero are removed. Throws DomainError on empty or out-of-range sets
  /// and on repeated vertices.
  Hypergraph& add_edge(VertexSet vertices, double weight);
  Hypergraph& add_constant(double c);

  /// Every edge through i with i removed, paired with its weight. A 1-edge on
  /// i contributes the empty set.
  std::vector<std::pair<VertexSet, double>> neighborhood(Vertex i) const;
  std::size_t degree(Vertex i) const;

  PhasePolynomial to_polynomial() const;
  /// Requires a multilinear polynomial whose vertices are < n_modes.
  static Hypergraph from_polynomial(const PhasePolynomial& p, std::size_t n_modes);

  bool approx_equal(const Hypergraph& o, double tol = kWeightEpsilon) const;
  bool operator==(const Hypergraph& o) const { return approx_equal(o); }

 private:
  void check_vertex(Vertex v) const;

  std::size_t n_modes_;
  EdgeMap edges_;
  double constant_;
};

/// Free function spelling used throughout the pipeline.
Hypergraph add_edge(Hypergraph g, VertexSet vertices, double weight);

/// JSON document: {"modes": N, "constant": c, "edges": [{"v": [...], "w": w}]}.
Hypergraph parse_hypergraph(std::string_view text);
std::string serialize_hypergraph(const Hypergraph& g);
Hypergraph load_hypergraph(const std::string& path);

// --- 3-cluster lattice -----------------------------------------------------

struct LatticeSpec {
  std::size_t rows = 1;  ///< centered cells per column
  std::size_t cols = 1;  ///< centered cells per row
};

/// One centered square. Corners run clockwise from the top-left.
struct ClusterCell {
  Vertex center;
  Vertex corners[4];  // top-left, top-right, bottom-right, bottom-left
};

/// Vertex numbering of a 3-cluster: corners row-major first, then centers
/// row-major. Centered cell (r, c) occupies square (r, 2c + r % 2), so the
/// top-left square always carries a center. Only corners that touch a
/// centered square are created.
struct ClusterLayout {
  LatticeSpec spec;
  std::size_t n_modes = 0;
  std::vector<Vertex> corners;
  std::vector<Vertex> centers;
  std::vector<ClusterCell> cells;
  /// (row, col) of each corner vertex in the square lattice, indexed by vertex.
  std::map<Vertex, std::pair<std::size_t, std::size_t>> corner_position;

  /// The 2-edges left after every center is measured: the four sides of every
  /// centered square.
  std::vector<VertexSet> square_lattice_edges() const;
};

ClusterLayout cluster_layout(const LatticeSpec& spec);
Hypergraph build_3cluster(const LatticeSpec& spec);

/// The running example from the hypergraph-state literature: 3-edge {1,2,3}
/// and 2-edge {3,4}. Vertex 0 is an unused isolated mode so labels match.
Hypergraph paper_example_graph();
/// Same state on modes 0..3: edges {0,1,2} and {2,3}.
Hypergraph paper_example_graph_compact();

/// A lone teleportation cell: measured corner 0, targets 1,2,3 around the
/// square, center 4. Edges {0,1,4},{1,2,4},{2,3,4},{0,3,4}.
Hypergraph teleport_cell_graph();

}  // namespace cvhg
