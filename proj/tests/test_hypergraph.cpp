#include "cvhg/hypergraph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cvhg/error.hpp"
#include "support.hpp"

using namespace cvhg;

TEST(hypergraph, add_edge_validates) {
  Hypergraph g(3);
  EXPECT_THROW(g.add_edge({}, 1.0), DomainError);
  EXPECT_THROW(g.add_edge({0, 3}, 1.0), DomainError);
  EXPECT_THROW(g.add_edge({1, 1}, 1.0), DomainError);
  g.add_edge({2, 0}, 1.0);
  EXPECT_EQ(g.weight({0, 2}), 1.0);
}

TEST(hypergraph, weights_add_and_cancel) {
  Hypergraph g(4);
  g.add_edge({0, 1, 2}, 0.75);
  g.add_edge({2, 1, 0}, 0.25);
  EXPECT_EQ(g.weight({0, 1, 2}), 1.0);
  g.add_edge({0, 1, 2}, -1.0);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(g.weight({0, 1, 2}), 0.0);
}

TEST(hypergraph, add_edge_free_function_is_pure) {
  Hypergraph g(3);
  Hypergraph h = add_edge(g, {0, 1}, 2.0);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(h.weight({0, 1}), 2.0);
}

TEST(hypergraph, neighborhood_of_example) {
  Hypergraph g = paper_example_graph();
  auto nb = g.neighborhood(3);
  ASSERT_EQ(nb.size(), 2u);
  std::set<VertexSet> sets;
  for (auto& [s, w] : nb) {
    sets.insert(s);
    EXPECT_EQ(w, 1.0);
  }
  EXPECT_TRUE(sets.count(VertexSet{1, 2}));
  EXPECT_TRUE(sets.count(VertexSet{4}));
  EXPECT_EQ(g.degree(0), 0u);
  EXPECT_EQ(g.degree(3), 2u);
}

TEST(hypergraph, polynomial_round_trip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Hypergraph g = fixtures::random_hypergraph(rng);
    EXPECT_EQ(Hypergraph::from_polynomial(g.to_polynomial(), g.n_modes()), g);
  }
  EXPECT_THROW(Hypergraph::from_polynomial(PhasePolynomial::monomial({0, 0}), 2), DomainError);
}

TEST(hypergraph, json_round_trip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Hypergraph g = fixtures::random_hypergraph(rng);
    g.add_constant(0.125 * i);
    std::string text = serialize_hypergraph(g);
    Hypergraph back = parse_hypergraph(text);
    EXPECT_TRUE(back.approx_equal(g, 0.0));
    EXPECT_EQ(serialize_hypergraph(back), text);
  }
}

TEST(hypergraph, json_errors) {
  EXPECT_THROW(parse_hypergraph("not json"), DomainError);
  EXPECT_THROW(parse_hypergraph(R"({"edges": []})"), DomainError);
  EXPECT_THROW(parse_hypergraph(R"({"modes": 2, "edges": [{"v": [0, 2], "w": 1}]})"), DomainError);
  EXPECT_THROW(parse_hypergraph(R"({"modes": 3, "edges": [{"v": [2, 1], "w": 1}]})"), DomainError);
  EXPECT_THROW(parse_hypergraph(R"({"modes": 3, "edges": [{"v": [1], "w": "x"}]})"), DomainError);
  EXPECT_THROW(load_hypergraph(fixtures::data_path("corrupted.json")), DomainError);
  EXPECT_THROW(load_hypergraph(fixtures::data_path("missing.json")), DomainError);
}

TEST(hypergraph, data_files_load) {
  EXPECT_EQ(load_hypergraph(fixtures::data_path("paper_example.json")), paper_example_graph());
  EXPECT_EQ(load_hypergraph(fixtures::data_path("teleport_cell.json")), teleport_cell_graph());
  Hypergraph e = load_hypergraph(fixtures::data_path("empty_1.json"));
  EXPECT_EQ(e.n_modes(), 1u);
  EXPECT_TRUE(e.edges().empty());
}

TEST(hypergraph, cluster_1x1) {
  Hypergraph g = build_3cluster({1, 1});
  EXPECT_EQ(g.n_modes(), 5u);
  EXPECT_EQ(g.edges().size(), 4u);
  for (auto& [e, w] : g.edges()) {
    EXPECT_EQ(e.size(), 3u);
    EXPECT_EQ(w, 1.0);
    EXPECT_TRUE(std::find(e.begin(), e.end(), 4u) != e.end());
  }
}

TEST(hypergraph, cluster_2x2_golden) {
  ClusterLayout layout = cluster_layout({2, 2});
  Hypergraph g = build_3cluster({2, 2});
  EXPECT_EQ(g.n_modes(), 17u);
  EXPECT_EQ(layout.corners.size(), 13u);
  EXPECT_EQ(layout.centers, (std::vector<Vertex>{13, 14, 15, 16}));
  EXPECT_EQ(g.edges().size(), 16u);
  EXPECT_EQ(layout.square_lattice_edges().size(), 16u);
}

TEST(hypergraph, cluster_invariants) {
  for (std::size_t r = 1; r <= 3; ++r) {
    for (std::size_t c = 1; c <= 3; ++c) {
      ClusterLayout layout = cluster_layout({r, c});
      Hypergraph g = build_3cluster({r, c});
      EXPECT_EQ(layout.centers.size(), r * c);
      EXPECT_EQ(g.edges().size(), 4 * r * c);
      std::set<Vertex> centers(layout.centers.begin(), layout.centers.end());
      for (auto& [e, w] : g.edges()) {
        EXPECT_EQ(e.size(), 3u);
        // exactly one center per edge
        int n = 0;
        for (Vertex v : e) n += centers.count(v);
        EXPECT_EQ(n, 1);
      }
      for (Vertex v : layout.centers) EXPECT_EQ(g.degree(v), 4u);
      // no two centered squares share a side
      std::set<VertexSet> sides;
      for (auto& s : layout.square_lattice_edges()) EXPECT_TRUE(sides.insert(s).second);
    }
  }
}

TEST(hypergraph, example_graphs) {
  Hypergraph g = paper_example_graph();
  EXPECT_EQ(g.n_modes(), 5u);
  EXPECT_EQ(g.weight({1, 2, 3}), 1.0);
  EXPECT_EQ(g.weight({3, 4}), 1.0);
  Hypergraph t = teleport_cell_graph();
  EXPECT_EQ(t.edges().size(), 4u);
  EXPECT_EQ(t.weight({0, 1, 4}), 1.0);
  EXPECT_EQ(t.weight({0, 3, 4}), 1.0);
}
