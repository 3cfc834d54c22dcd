#include <benchmark/benchmark.h>

#include "dynmatch/dynamic_maximal.hpp"
#include "dynmatch/estimator.hpp"
#include "dynmatch/exact_matching.hpp"
#include "dynmatch/generators.hpp"
#include "dynmatch/rgmm_oracle.hpp"
#include "dynmatch/streaming.hpp"

using namespace dynmatch;

namespace {

UpdateStream er(std::int64_t n, double avg_degree, std::uint64_t seed = 1) {
  GenSpec s = GenSpec::parse("gen:erdos_renyi:n=" + std::to_string(n) +
                             ",p=" + std::to_string(avg_degree / static_cast<double>(n - 1)));
  s.seed = seed;
  return generate(s);
}

void BM_MaximumMatching(benchmark::State& state) {
  const Graph g = final_graph(er(state.range(0), 10));
  for (auto _ : state) benchmark::DoNotOptimize(maximum_matching(g).size);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaximumMatching)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

void BM_TwoPass(benchmark::State& state) {
  const UpdateStream s = er(state.range(0), 10);
  const auto edges = final_edge_order(s);
  const StreamParams p = StreamParams::make(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(run_two_pass(s.n, edges, p).output.size);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}
BENCHMARK(BM_TwoPass)->Arg(500)->Arg(2000);

void BM_Pass2Only(benchmark::State& state) {
  const UpdateStream s = er(state.range(0), 10);
  const auto edges = final_edge_order(s);
  const StreamParams p = StreamParams::make(0.1);
  const Matching m = pass1_maximal(s.n, edges);
  for (auto _ : state) benchmark::DoNotOptimize(pass2_bmatching(edges, m, p).distinct_size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}
BENCHMARK(BM_Pass2Only)->Arg(2000)->Arg(8000);

void BM_DynamicMaximalUpdate(benchmark::State& state) {
  const UpdateStream s = generate(GenSpec::parse(
      "gen:update_mix:n=" + std::to_string(state.range(0)) +
      ",p=0,steps=20000,delete_ratio=0.4,seed=3"));
  for (auto _ : state) {
    Graph g(s.n);
    DynamicMaximalMatching m(s.n);
    for (const auto& ev : s.events) m.apply(g, ev);
    benchmark::DoNotOptimize(m.matching().size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.events.size()));
}
BENCHMARK(BM_DynamicMaximalUpdate)->Arg(300)->Arg(3000);

void BM_OracleEpoch(benchmark::State& state) {
  const UpdateStream s = er(state.range(0), 6);
  Graph g(s.n);
  DynamicMaximalMatching dm(s.n);
  for (const auto& ev : s.events) dm.apply(g, ev);
  const std::uint32_t k = 4;
  const auto kb = static_cast<std::uint32_t>(kb_ceil_of(k));
  std::uint64_t explored = 0;
  for (auto _ : state) {
    RgmmOracle o(g, dm.matching(), {k, kb, 7});
    for (VertexId v = 0; v < s.n; ++v) benchmark::DoNotOptimize(o.b_edges_of(v).size());
    explored = o.stats().explored();
  }
  state.counters["explored_edges"] = static_cast<double>(explored);
}
BENCHMARK(BM_OracleEpoch)->Arg(300)->Arg(1000);

void BM_EstimatorQuery(benchmark::State& state) {
  const UpdateStream s = er(state.range(0), 6);
  Graph g(s.n);
  DynamicMaximalMatching dm(s.n);
  for (const auto& ev : s.events) dm.apply(g, ev);
  const EstimatorConfig cfg = make_estimator_config(s.n, 0.25, 8, 1);
  std::uint64_t epoch = 0;
  for (auto _ : state) benchmark::DoNotOptimize(query(g, dm, cfg, epoch++).x);
}
BENCHMARK(BM_EstimatorQuery)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
