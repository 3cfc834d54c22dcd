#include <doctest.h>

#include <functional>

#include "dynmatch/exact_matching.hpp"
#include "dynmatch/local_matching.hpp"
#include "dynmatch/streaming.hpp"
#include "helpers.hpp"

using namespace dynmatch;

namespace {

NeighborFn graph_neighbors(const Graph& g) {
  return [&g](VertexId v) {
    auto nb = g.neighbors(v);
    return std::vector<VertexId>(nb.begin(), nb.end());
  };
}

// Any augmenting path with at most max_len edges, by exhaustive search.
bool short_augmenting_exists(const Graph& g, const Matching& m, std::uint32_t max_len) {
  std::vector<bool> used(g.num_vertices(), false);
  std::function<bool(VertexId, std::uint32_t)> go = [&](VertexId at, std::uint32_t len) {
    for (VertexId w : g.neighbors(at)) {
      if (used[w] || m.contains(at, w) || len + 1 > max_len) continue;
      if (!m.is_matched(w)) return true;
      const VertexId z = *m.mate(w);
      if (used[z] || len + 3 > max_len) continue;
      used[w] = used[z] = true;
      const bool found = go(z, len + 2);
      used[w] = used[z] = false;
      if (found) return true;
    }
    return false;
  };
  for (VertexId f = 0; f < g.num_vertices(); ++f) {
    if (m.is_matched(f)) continue;
    used[f] = true;
    const bool found = go(f, 0);
    used[f] = false;
    if (found) return true;
  }
  return false;
}

Matching greedy_matching(const Graph& g) {
  Matching m(g.num_vertices());
  for (const Edge& e : g.edges()) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) m.add(e.u, e.v);
  }
  return m;
}

}  // namespace

TEST_SUITE("local_matching") {

TEST_CASE("parameters") {
  const LocalParams p = LocalParams::make(0.25);
  CHECK(p.path_cap == 7);
  CHECK(p.radius == 8);
  CHECK(LocalParams::make(1.0 / 3.0).path_cap == 5);
  CHECK(LocalParams::make(0.1).path_cap == 19);
  CHECK_THROWS(LocalParams::make(0.25, 3));
}

TEST_CASE("balls on the path example") {
  // a-b-c-d: M = {(b,c)}, B = {(a,b),(c,d)}; the union is the whole path.
  Graph g(5);
  g.insert_edge(0, 1);
  g.insert_edge(1, 2);
  g.insert_edge(2, 3);
  const Ball whole = explore_ball(0, 3, graph_neighbors(g));
  CHECK(whole.vertices == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(whole.edges.size() == 3);
  CHECK(whole.closed);
  const Ball near = explore_ball(0, 1, graph_neighbors(g));
  CHECK(near.vertices == std::vector<VertexId>{0, 1});
  CHECK(near.edges == std::vector<Edge>{{0, 1}});
  CHECK_FALSE(near.closed);
  const Ball lone = explore_ball(4, 2, graph_neighbors(g));
  CHECK(lone.vertices == std::vector<VertexId>{4});
  CHECK(lone.edges.empty());
  CHECK(explore_ball(2, std::nullopt, graph_neighbors(g)).vertices.size() == 4);
}

TEST_CASE("length-3 augmentation on the 4-path") {
  // Path 2-0-1-3: lexicographic greedy takes the middle edge (0,1) first.
  Graph mid(4);
  mid.insert_edge(0, 1);
  mid.insert_edge(0, 2);
  mid.insert_edge(1, 3);
  CHECK(lexicographic_greedy(mid).size() == 1);
  const Matching l = reference_matching(mid, 5);
  CHECK(l.size() == 2);
  CHECK(l.contains(0, 2));
  CHECK(l.contains(1, 3));
  CHECK(reference_matching(mid, 1).size() == 1);
}

TEST_CASE("reference matching leaves no short augmenting path") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = testutil::random_graph(14, 0.2, seed);
    for (std::uint32_t cap : {1u, 3u, 5u, 7u}) {
      const Matching l = reference_matching(g, cap);
      CAPTURE(seed);
      CAPTURE(cap);
      REQUIRE(l.is_valid_in(g));
      CHECK_FALSE(short_augmenting_exists(g, l, cap));
      // No augmenting path of length <= 2K - 1 gives |L| >= K/(K+1) mu.
      const std::size_t K = (cap + 1) / 2;
      CHECK(l.size() * (K + 1) >= K * brute_force_matching(g));
    }
  }
}

TEST_CASE("component mode agrees with the global simulation") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = testutil::random_graph(70, 0.06, seed);
    const Matching m = greedy_matching(g);
    const std::uint32_t k = 2;
    const auto kb = static_cast<std::uint32_t>(kb_ceil_of(k));
    RgmmOracle o1(g, m, {k, kb, seed});
    const LocalParams p = LocalParams::make(0.25);
    const Matching global = global_local_matching(o1, p);
    RgmmOracle o2(g, m, {k, kb, seed});
    LocalMatcher lm(o2, p, BallMode::kComponent);
    for (VertexId v = 0; v < 70; ++v) {
      REQUIRE(lm.matched_status(v) == global.is_matched(v));
    }
  }
}

TEST_CASE("radius mode agrees when every component fits in the ball") {
  // Disjoint triangles with a pendant: diameter 2.
  Graph g(40);
  for (VertexId i = 0; i < 10; ++i) {
    const VertexId a = 4 * i;
    g.insert_edge(a, a + 1);
    g.insert_edge(a + 1, a + 2);
    g.insert_edge(a, a + 2);
    g.insert_edge(a + 2, a + 3);
  }
  const Matching m = greedy_matching(g);
  const LocalParams p = LocalParams::make(0.5);
  RgmmOracle o1(g, m, {1, 3, 2});
  const Matching global = global_local_matching(o1, p);
  RgmmOracle o2(g, m, {1, 3, 2});
  LocalMatcher lm(o2, p, BallMode::kRadius);
  for (VertexId v = 0; v < 40; ++v) CHECK(lm.matched_status(v) == global.is_matched(v));
  CHECK(global.size() == 20);
}

TEST_CASE("isolated vertex is unmatched") {
  Graph g(3);
  g.insert_edge(0, 1);
  const Matching m = greedy_matching(g);
  RgmmOracle o(g, m, {1, 3, 0});
  LocalMatcher lm(o, LocalParams::make(0.25));
  CHECK_FALSE(lm.matched_status(2));
  CHECK(lm.matched_status(0));
}

TEST_CASE("ball subgraph preserves order") {
  Ball b;
  b.vertices = {3, 7, 9};
  b.edges = {{3, 9}, {7, 9}};
  const Graph s = ball_subgraph(b);
  CHECK(s.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
}

}  // TEST_SUITE
