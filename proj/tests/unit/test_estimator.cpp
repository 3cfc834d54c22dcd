#include <doctest.h>

#include <cmath>

#include "dynmatch/error.hpp"
#include "dynmatch/estimator.hpp"
#include "dynmatch/exact_matching.hpp"
#include "dynmatch/generators.hpp"
#include "helpers.hpp"

using namespace dynmatch;

TEST_SUITE("estimator") {

TEST_CASE("sample count") {
  CHECK(sample_count(500, 0.25) == 500);  // 2387 before clamping
  CHECK(sample_count(1'000'000, 0.5) == 1327);
  CHECK(sample_count(2000, 0.5) == 730);
  CHECK(sample_count(1, 0.1) == 1);
  CHECK(sample_count(0, 0.1) == 1);
}

TEST_CASE("estimate formula and clamping") {
  double raw = 0;
  CHECK(estimate_from_count(100, 30, 60, 0.2, &raw) == doctest::Approx(15.0));
  CHECK(raw == doctest::Approx(15.0));
  CHECK(estimate_from_count(100, 0, 60, 0.2, &raw) == 0.0);
  CHECK(raw == doctest::Approx(-10.0));
  // Every sample matched: n/2 - eps n/2.
  CHECK(estimate_from_count(100, 60, 60, 0.2, &raw) == doctest::Approx(40.0));
}

TEST_CASE("default configuration") {
  const EstimatorConfig c = make_estimator_config(500, 0.25);
  CHECK(c.k == 27);
  CHECK(c.kb_ceil == 66);
  CHECK(c.path_cap == 7);
  CHECK(c.radius == 8);
  CHECK(c.samples == 500);
  EstimatorConfig bad = c;
  bad.kb_ceil = 65;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("empty graph estimates zero") {
  Graph g(50);
  DynamicMaximalMatching s(50);
  const Estimate e = query(g, s, make_estimator_config(50, 0.25, 4, 1));
  CHECK(e.x == 0);
  CHECK(e.mu_tilde == 0.0);
  CHECK(e.mu_tilde_raw == doctest::Approx(-0.25 * 50 / 2));
}

TEST_CASE("perfect matching graph: every sample is matched") {
  Graph g(40);
  DynamicMaximalMatching s(40);
  for (VertexId i = 0; i < 40; i += 2) s.apply(g, {EventKind::kInsert, {i, i + 1}});
  const Estimate e = query(g, s, make_estimator_config(40, 0.25, 4, 9));
  CHECK(e.x == e.r);
  CHECK(e.mu_tilde_raw == doctest::Approx(20.0 - 0.25 * 20.0));
}

TEST_CASE("queries are deterministic per seed and epoch") {
  const UpdateStream st = generate(GenSpec::parse("gen:erdos_renyi:n=120,p=0.05,seed=4"));
  Graph g(st.n);
  DynamicMaximalMatching s(st.n);
  for (const auto& ev : st.events) s.apply(g, ev);
  const EstimatorConfig c = make_estimator_config(st.n, 0.25, 4, 17);
  const Estimate a = query(g, s, c, 3);
  const Estimate b = query(g, s, c, 3);
  CHECK(a.samples == b.samples);
  CHECK(a.x == b.x);
  const Estimate other = query(g, s, c, 4);
  CHECK(other.samples != a.samples);
}

TEST_CASE("estimates stay below mu on a growing perfect matching") {
  const std::size_t n = 60;
  UpdateStream st{n, {}};
  for (VertexId i = 0; i < n; i += 2) {
    st.events.push_back({EventKind::kInsert, {i, i + 1}});
    st.events.push_back({EventKind::kQuery, {}});
  }
  const auto rows = run_fully_dynamic(st, make_estimator_config(n, 0.5, 2, 5));
  for (const auto& row : rows) {
    if (row.kind != EventKind::kQuery) continue;
    CHECK(row.fresh);
    CHECK(row.staleness == 0);
    const double mu = static_cast<double>(row.event_index + 1) / 2.0;
    CHECK(row.mu_tilde <= mu);
  }
  CHECK(rows.back().mu_tilde > 0.0);
}

TEST_CASE("deleting everything ends at zero") {
  UpdateStream st{10, {}};
  for (VertexId i = 0; i < 9; ++i) st.events.push_back({EventKind::kInsert, {i, i + 1}});
  for (VertexId i = 0; i < 9; ++i) st.events.push_back({EventKind::kDelete, {i, i + 1}});
  st.events.push_back({EventKind::kQuery, {}});
  const auto rows = run_fully_dynamic(st, make_estimator_config(10, 0.25, 2, 1));
  CHECK(rows.back().mu_tilde == 0.0);
  CHECK(rows.back().fresh);
}

TEST_CASE("requery interval and staleness") {
  const UpdateStream st = generate(GenSpec::parse("gen:erdos_renyi:n=80,p=0.05,seed=2"));
  EstimatorConfig c = make_estimator_config(80, 0.25, 2, 3);
  c.requery_interval = 10;
  DynamicRunOptions opts;
  opts.oracle_every = 25;
  const auto rows = run_fully_dynamic(st, c, opts);
  REQUIRE(rows.size() == st.events.size());
  for (const auto& row : rows) {
    CHECK(row.staleness < 10);
    CHECK(row.fresh == (row.staleness == 0));
    CHECK(row.mu_exact.has_value() == (row.event_index % 25 == 0));
  }
}

TEST_CASE("budget exhaustion counts samples as unmatched") {
  const UpdateStream st = generate(GenSpec::parse("gen:erdos_renyi:n=100,p=0.1,seed=8"));
  Graph g(st.n);
  DynamicMaximalMatching s(st.n);
  for (const auto& ev : st.events) s.apply(g, ev);
  EstimatorConfig c = make_estimator_config(st.n, 0.25, 4, 1);
  c.exploration_budget = 100;
  const Estimate e = query(g, s, c);
  CHECK(e.unknown > 0);
  CHECK(e.x + e.unknown <= e.r);
}

}  // TEST_SUITE

TEST_SUITE("estimator") {

TEST_CASE("checkpoint estimates sit inside the staleness-widened band") {
  const UpdateStream st = generate(
      GenSpec::parse("gen:update_mix:n=300,p=0.01,steps=2000,delete_ratio=0.4,seed=21"));
  const double eps = 0.25;
  const EstimatorConfig c = make_estimator_config(st.n, eps, 8, 4);
  DynamicRunOptions opts;
  opts.oracle_every = 100;
  const auto rows = run_fully_dynamic(st, c, opts);
  std::size_t checked = 0, inside = 0;
  for (const auto& row : rows) {
    if (!row.mu_exact) continue;
    const double mu = static_cast<double>(*row.mu_exact);
    const double stale = static_cast<double>(row.staleness);
    const double lo = (2.0 - std::sqrt(2.0) - eps) * mu - eps * 300 - stale;
    ++checked;
    if (row.mu_tilde >= lo && row.mu_tilde <= mu + stale) ++inside;
  }
  REQUIRE(checked > 20);
  CHECK(inside * 10 >= checked * 9);
}

}  // TEST_SUITE
