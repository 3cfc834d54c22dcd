#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "dynmatch/graph.hpp"

namespace testutil {

inline dynmatch::Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  dynmatch::Graph g(n);
  for (dynmatch::VertexId u = 0; u < n; ++u) {
    for (dynmatch::VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) g.insert_edge(u, v);
    }
  }
  return g;
}

inline std::vector<dynmatch::Edge> shuffled_edges(const dynmatch::Graph& g, std::uint64_t seed) {
  auto e = g.edges();
  std::mt19937_64 rng(seed);
  std::shuffle(e.begin(), e.end(), rng);
  return e;
}

inline dynmatch::Graph petersen() {
  dynmatch::Graph g(10);
  for (dynmatch::VertexId i = 0; i < 5; ++i) {
    g.insert_edge(i, (i + 1) % 5);
    g.insert_edge(i, i + 5);
    g.insert_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace testutil
