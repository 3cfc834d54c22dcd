#include <doctest.h>

#include <cmath>

#include "dynmatch/error.hpp"
#include "dynmatch/exact_number.hpp"
#include "dynmatch/streaming.hpp"
#include "helpers.hpp"

using namespace dynmatch;

namespace {

// Straightforward restatement of the second pass, used as a reference.
BMatching naive_pass2(std::span<const Edge> stream, const Matching& m, std::uint32_t k,
                      std::uint32_t kb) {
  std::vector<std::uint32_t> cap(m.num_vertices());
  for (VertexId v = 0; v < cap.size(); ++v) cap[v] = m.is_matched(v) ? k : kb;
  std::vector<std::uint32_t> deg(cap.size(), 0);
  BMatching b(cap);
  for (const Edge& e : stream) {
    if (m.is_matched(e.u) == m.is_matched(e.v)) continue;
    if (b.multiplicity(e) > 0) continue;
    if (deg[e.u] < cap[e.u] && deg[e.v] < cap[e.v]) {
      b.add(e);
      ++deg[e.u];
      ++deg[e.v];
    }
  }
  return b;
}

}  // namespace

TEST_SUITE("streaming") {

TEST_CASE("ceil(k sqrt 2) against long double") {
  for (std::uint64_t k = 0; k < 200000; k += (k < 2000 ? 1 : 97)) {
    const long double ref = std::ceil(static_cast<long double>(k) * std::sqrt(2.0L));
    REQUIRE(ceil_sqrt2_mult(k) == static_cast<std::uint64_t>(ref));
  }
}

TEST_CASE("parameters for eps = 0.1") {
  const StreamParams p = StreamParams::make(0.1);
  CHECK(p.k == 415);
  CHECK(p.kb_ceil == 1002);
  CHECK(default_k(0.25) == 27);
  CHECK(kb_ceil_of(27) == 66);
  CHECK(kb_ceil_of(1) == 3);
  CHECK(StreamParams::make(0.1, 5).k == 5);
  CHECK_THROWS_AS(StreamParams::make(0.0), Error);
  CHECK_THROWS_AS(StreamParams::make(1.0), Error);
}

TEST_CASE("first pass greedy traces") {
  const std::vector<Edge> a{{0, 1}, {1, 2}, {2, 3}};
  CHECK(pass1_maximal(4, a).edges() == std::vector<Edge>{{0, 1}, {2, 3}});
  const std::vector<Edge> b{{1, 2}, {0, 1}, {2, 3}};
  CHECK(pass1_maximal(4, b).edges() == std::vector<Edge>{{1, 2}});
  CHECK(pass1_maximal(4, {}).empty());
}

TEST_CASE("second pass on the path and the triangle") {
  const std::vector<Edge> path{{1, 2}, {0, 1}, {2, 3}};
  const StreamParams p1 = StreamParams::make(0.5, 1);
  const Matching m = pass1_maximal(4, path);
  const BMatching b = pass2_bmatching(path, m, p1);
  CHECK(b.multiplicities().size() == 2);
  CHECK(b.multiplicity({0, 1}) == 1);
  CHECK(b.multiplicity({2, 3}) == 1);
  CHECK(finalize(m, b).size == 2);

  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  const Matching mt = pass1_maximal(3, tri);
  const BMatching bt = pass2_bmatching(tri, mt, p1);
  CHECK(bt.multiplicity({0, 2}) == 1);
  CHECK(bt.multiplicity({1, 2}) == 1);
  CHECK(finalize(mt, bt).size == 1);
}

TEST_CASE("second pass saturates an unmatched star center") {
  // Leaves 1..5 are matched to 6..10; center 0 is free with capacity 3.
  std::vector<Edge> stream;
  for (VertexId i = 1; i <= 5; ++i) stream.push_back({i, i + 5});
  for (VertexId i = 1; i <= 5; ++i) stream.push_back({0, i});
  const StreamParams p = StreamParams::make(0.5, 1);
  const Matching m = pass1_maximal(11, stream);
  REQUIRE(m.size() == 5);
  const BMatching b = pass2_bmatching(stream, m, p);
  CHECK(b.degree(0) == 3);
  CHECK(b.multiplicity({0, 1}) == 1);
  CHECK(b.multiplicity({0, 3}) == 1);
  CHECK(b.multiplicity({0, 4}) == 0);
}

TEST_CASE("second pass matches the reference on random streams") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testutil::random_graph(60, 0.08, seed);
    const auto stream = testutil::shuffled_edges(g, seed + 100);
    const std::uint32_t k = 1 + seed % 4;
    const StreamParams p = StreamParams::make(0.3, k);
    const Matching m = pass1_maximal(60, stream);
    const BMatching b = pass2_bmatching(stream, m, p);
    CAPTURE(seed);
    CHECK(b.multiplicities() == naive_pass2(stream, m, p.k, p.kb_ceil).multiplicities());
    CHECK(b.respects_capacities());
    for (const auto& [e, c] : b.multiplicities()) {
      CHECK(c == 1);
      CHECK(m.is_matched(e.u) != m.is_matched(e.v));
    }
  }
}

TEST_CASE("output is a maximum matching of M u B") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testutil::random_graph(14, 0.25, seed);
    const auto stream = testutil::shuffled_edges(g, seed);
    const TwoPassResult r = run_two_pass(14, stream, StreamParams::make(0.5, 1));
    std::vector<Edge> kept = r.first_pass.edges();
    for (const auto& [e, c] : r.b.multiplicities()) kept.push_back(e);
    CHECK(r.output.size == brute_force_matching(Graph::from_edges(14, kept)));
    CHECK(r.output.matching.is_valid_in(g));
    CHECK(r.stored_edges == kept.size());
  }
}

TEST_CASE("approximation bound on random graphs") {
  const QSqrt2 factor = QSqrt2(Rational(729, 1000)) * QSqrt2(2, -1);  // 0.9^3 (2 - sqrt2)
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testutil::random_graph(200, 0.03 + 0.01 * seed, seed);
    const auto stream = testutil::shuffled_edges(g, seed);
    const TwoPassResult r = run_two_pass(200, stream, StreamParams::make(0.1));
    const std::size_t mu = maximum_matching(g).size;
    CHECK(QSqrt2(static_cast<std::int64_t>(r.output.size)) >=
          factor * QSqrt2(static_cast<std::int64_t>(mu)));
  }
}

}  // TEST_SUITE
