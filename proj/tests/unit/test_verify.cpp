#include <doctest.h>

#include <random>

#include "dynmatch/error.hpp"
#include "dynmatch/exact_matching.hpp"
#include "dynmatch/rgmm_oracle.hpp"
#include "dynmatch/verify.hpp"
#include "helpers.hpp"

using namespace dynmatch;

namespace {

// Tries every odd subset.
bool brute_force_violation(const FractionalMatching& x, const QSqrt2& scale,
                           std::size_t max_size) {
  const std::size_t n = x.num_vertices();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size < 3 || size % 2 == 0 || size > max_size) continue;
    std::vector<VertexId> s;
    for (VertexId v = 0; v < n; ++v) {
      if (mask >> v & 1u) s.push_back(v);
    }
    if (x.of_set(s) * scale > QSqrt2(static_cast<std::int64_t>(size / 2))) return true;
  }
  return false;
}

FractionalMatching random_fractional(const Graph& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 6);
  std::vector<Rational> raw;
  std::vector<Rational> load(g.num_vertices());
  for (const Edge& e : g.edges()) {
    raw.emplace_back(w(rng), 6);
    load[e.u] += raw.back();
    load[e.v] += raw.back();
  }
  FractionalMatching x(g.num_vertices());
  std::size_t i = 0;
  for (const Edge& e : g.edges()) {
    const Rational cap = std::max({load[e.u], load[e.v], Rational(1)});
    x.set(e, QSqrt2(Rational(raw[i++] / cap)));
  }
  return x;
}


TwoPassResult path_run(const StreamParams& p) {
  const std::vector<Edge> stream{{1, 2}, {0, 1}, {2, 3}};
  return run_two_pass(4, stream, p);
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("witness on the path with k = 1") {
  const StreamParams p = StreamParams::make(0.3, 1);
  REQUIRE(p.kb_ceil == 3);
  const TwoPassResult r = path_run(p);
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  const OptSplit split = OptSplit::make(r.first_pass, maximum_matching(g).matching);
  CHECK(split.m1.size() == 2);
  CHECK(split.m2.empty());
  CHECK(split.uncovered.empty());
  const FractionalMatching x = build_fractional(r.first_pass, r.b, split, p);
  CHECK(x.value({1, 2}) == QSqrt2(2, -1));
  // t = min(k - deg'(b), kb - deg'(a)) = min(1 - 0, 3 - 0) = 1.
  CHECK(x.value({0, 1}) == QSqrt2(Rational(1, 3)));
  CHECK(x.value({2, 3}) == QSqrt2(Rational(1, 3)));
  CHECK(x.satisfies_vertex_constraints());

  const ClaimsReport c = check_claims(x, r.first_pass, r.b, split, 0.3, r.output.size,
                                      WitnessKind::kTwoPass, p);
  CHECK(c.all_pass());
  REQUIRE(c.find("maximal_share") != nullptr);
  // x(M) = 2 - sqrt2 = (1 - 1/b)(0 + 1/2 * 2).
  CHECK(c.find("maximal_share")->slack() == doctest::Approx(0.0));
  CHECK(c.find("bmatching_share")->slack() > 0.0);
}

TEST_CASE("empty graph gives the zero witness") {
  const StreamParams p = StreamParams::make(0.2);
  const TwoPassResult r = run_two_pass(5, {}, p);
  const OptSplit split = OptSplit::make(r.first_pass, Matching(5));
  const FractionalMatching x = build_fractional(r.first_pass, r.b, split, p);
  CHECK(x.weights().empty());
  CHECK(check_blossom(x, 0.2, 64).ok());
  const ClaimsReport c = check_claims(x, r.first_pass, r.b, split, 0.2, 0);
  CHECK(c.all_pass());
  for (const auto& ch : c.checks) CHECK(ch.pass);
}

TEST_CASE("half-weight triangle violates the odd-set bound") {
  FractionalMatching x(3);
  for (const Edge& e : {Edge{0, 1}, Edge{1, 2}, Edge{0, 2}}) x.set(e, QSqrt2(Rational(1, 2)));
  const BlossomReport r = check_blossom(x, 0.2, 64);
  CHECK(r.max_set_size == 4);
  REQUIRE(r.violation_count == 1);
  CHECK(r.violations[0].set == std::vector<VertexId>{0, 1, 2});
  CHECK(r.violations[0].value == QSqrt2(Rational(6, 5)));
  CHECK(r.exhaustive());
  // eps = 0.4 allows |S| <= 2 only.
  CHECK(check_blossom(x, 0.4, 64).ok());
  CHECK(check_blossom(FractionalMatching(6), 0.2, 64).ok());
}

TEST_CASE("set size limit") {
  FractionalMatching x(1);
  CHECK(check_blossom(x, 0.1, 64).max_set_size == 9);
  CHECK(check_blossom(x, 0.1, 6).max_set_size == 5);
  CHECK(check_blossom(x, 0.3, 64).max_set_size == 3);
  CHECK(check_blossom(x, 0.25, 64).max_set_size == 3);
}

TEST_CASE("blossom check agrees with subset brute force") {
  std::mt19937_64 rng(123);
  int with_violation = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 5 + seed % 8;
    const Graph g = testutil::random_graph(n, 0.35, seed);
    const FractionalMatching x = random_fractional(g, rng);
    const double eps = seed % 3 == 0 ? 0.1 : (seed % 3 == 1 ? 0.15 : 0.2);
    const BlossomReport r = check_blossom(x, eps, 64);
    const QSqrt2 scale = QSqrt2(1) - QSqrt2(rational_from_double(eps));
    CAPTURE(seed);
    REQUIRE(r.exhaustive());
    const bool expected = brute_force_violation(x, scale, r.max_set_size);
    CHECK(r.ok() == !expected);
    for (const auto& v : r.violations) {
      CHECK(v.set.size() % 2 == 1);
      CHECK(x.of_set(v.set) * scale == v.value);
      CHECK(v.value > QSqrt2(static_cast<std::int64_t>(v.bound)));
    }
    if (expected) ++with_violation;
  }
  CHECK(with_violation >= 5);
}

TEST_CASE("sampling fallback still finds a planted violation") {
  // A dense component that exhausts a tiny budget, plus one bad triangle.
  FractionalMatching x(30);
  for (VertexId u = 3; u < 30; ++u) {
    for (VertexId v = u + 1; v < 30; ++v) x.set({u, v}, QSqrt2(Rational(1, 27)));
  }
  x.set({0, 1}, QSqrt2(Rational(1, 2)));
  x.set({1, 2}, QSqrt2(Rational(1, 2)));
  x.set({0, 2}, QSqrt2(Rational(1, 2)));
  x.set({2, 3}, QSqrt2(Rational(0)));
  BlossomOptions opts;
  opts.enumeration_budget = 3;
  const BlossomReport r = check_blossom(x, 0.2, 64, opts);
  CHECK(r.sampled_components >= 1);
  CHECK_FALSE(r.ok());
}

TEST_CASE("streaming witnesses satisfy every check") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 60 + 10 * (seed % 5);
    const Graph g = testutil::random_graph(n, 0.05 + 0.01 * (seed % 4), seed);
    const auto stream = testutil::shuffled_edges(g, seed);
    const double eps = seed % 2 == 0 ? 0.1 : 0.3;
    const std::uint32_t k = seed % 3 == 0 ? 1 : 0;
    const StreamParams p = StreamParams::make(eps, k);
    const VerifyRun v = verify_two_pass(n, stream, p);
    CAPTURE(seed);
    CHECK(v.x.satisfies_vertex_constraints());
    for (const auto& ch : v.claims.checks) {
      CAPTURE(ch.name);
      CHECK(ch.pass);
    }
    // The odd-set bound needs k >= 1 / (b eps^3); tiny k may break it.
    if (k == 0) CHECK(v.blossom.ok());
    CHECK(v.split.uncovered.empty());
  }
}

TEST_CASE("an undersized k can break the odd-set bound") {
  // Seed found by search: with k = 2 a triangle of one M edge and two
  // B n M1* edges carries more than 1 after scaling.
  const Graph g = testutil::random_graph(100, 0.05, 24);
  const auto stream = testutil::shuffled_edges(g, 24);
  CHECK_FALSE(verify_two_pass(100, stream, StreamParams::make(0.1, 2)).blossom.ok());
  CHECK(verify_two_pass(100, stream, StreamParams::make(0.1)).blossom.ok());
}

TEST_CASE("multiset witness respects the class caps") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testutil::random_graph(50, 0.1, seed);
    Matching m(50);
    for (const Edge& e : g.edges()) {
      if (!m.is_matched(e.u) && !m.is_matched(e.v)) m.add(e.u, e.v);
    }
    const StreamParams p = StreamParams::make(0.5);
    const BMatching b = project_b_matching(g, m, p.k, p.kb_ceil,
                                           global_gmm(g, m, p.k, p.kb_ceil, seed));
    const OptSplit split = OptSplit::make(m, maximum_matching(g).matching);
    const FractionalMatching x = build_fractional_dynamic(m, b, split, p);
    CHECK(x.satisfies_vertex_constraints());
    const ClaimsReport c =
        check_claims(x, m, b, split, p.epsilon, std::nullopt, WitnessKind::kDynamic, p);
    for (const auto& ch : c.checks) {
      if (!ch.binding) continue;
      CAPTURE(ch.name);
      CHECK(ch.pass);
    }
    const SaturationResult s = saturation_diagnostic(b, split, m, p);
    CHECK(s.edges == split.m1.size());
    CHECK(s.in_b + s.saturated + s.neither == s.edges);
  }
}

TEST_CASE("repeated B edges are rejected by the two-pass witness") {
  BMatching b({2, 2, 2});
  b.add({0, 1}, 2);
  Matching m(3);
  m.add(0, 2);
  const OptSplit split = OptSplit::make(m, Matching(3));
  CHECK_THROWS_AS(build_fractional(m, b, split, StreamParams::make(0.5, 1)), Error);
}

}  // TEST_SUITE
