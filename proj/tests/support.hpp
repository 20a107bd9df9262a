#pragma once

#include <algorithm>
#include <random>
#include <string>

#include "cvhg/hypergraph.hpp"

namespace cvhg::fixtures {

inline double random_weight(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  std::bernoulli_distribution neg(0.5);
  return neg(rng) ? -mag(rng) : mag(rng);
}

/// Up to max_edges random edges of order 1..max_order on 1..max_modes modes.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t max_modes = 8, std::size_t max_edges = 12,
                                    std::size_t max_order = 4) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_modes)(rng);
  std::size_t e = std::uniform_int_distribution<std::size_t>(0, max_edges)(rng);
  Hypergraph g(n);
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  for (std::size_t i = 0; i < e; ++i) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min(max_order, n))(rng);
    std::shuffle(all.begin(), all.end(), rng);
    VertexSet edge(all.begin(), all.begin() + static_cast<long>(k));
    std::sort(edge.begin(), edge.end());
    g.add_edge(edge, random_weight(rng));
  }
  return g;
}

inline std::string data_path(const std::string& name) { return std::string(CVHG_TEST_DATA) + "/" + name; }

}  // namespace cvhg::fixtures
