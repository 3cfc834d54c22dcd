#pragma once

// Matched-status queries for one fixed near-maximum matching L of the sparse
// graph G[M u B], answered from a BFS ball around the queried vertex.
//
// L is defined by a deterministic procedure: the greedy maximal matching in
// ascending edge order, followed by phases that remove every augmenting path
// of length 3, 5, ..., path_cap (free roots in ascending id, first path in
// ascending-neighbor DFS order). With no augmenting path of length
// <= 2K - 1, |L| >= K / (K + 1) * mu, so K = ceil(1/eps) gives (1 - eps).

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/rgmm_oracle.hpp"

namespace dynmatch {

struct LocalParams {
  double epsilon = 0.25;
  /// Longest augmenting path removed: 2 * ceil(1/eps) - 1.
  std::uint32_t path_cap = 7;
  /// BFS radius, at least path_cap + 1.
  std::uint32_t radius = 8;

  static LocalParams make(double epsilon, std::uint32_t radius_override = 0);
  void validate() const;
};

/// How far a query looks.
enum class BallMode {
  /// The connected component of the queried vertex in G[M u B]; answers are
  /// exactly V(L) for the global procedure.
  kComponent,
  /// Exactly the radius-`radius` ball; the answer is a function of that
  /// ball alone.
  kRadius,
};

struct Ball {
  VertexId center = 0;
  std::uint32_t radius = 0;
  std::vector<VertexId> vertices;  // sorted
  std::vector<Edge> edges;         // all M u B edges among `vertices`, sorted
  /// True when no edge leaves the ball (it is a whole component).
  bool closed = false;
};

using NeighborFn = std::function<std::vector<VertexId>(VertexId)>;

/// BFS to depth `radius` (unbounded when nullopt) over the neighbor
/// function. Throws whatever the neighbor function throws.
Ball explore_ball(VertexId center, std::optional<std::uint32_t> radius,
                  const NeighborFn& neighbors);

/// The reference procedure on an explicit graph.
Matching reference_matching(const Graph& g, std::uint32_t path_cap);

/// Greedy maximal matching, edges in ascending canonical order.
Matching lexicographic_greedy(const Graph& g);

struct LocalStats {
  std::uint64_t queries = 0;
  std::uint64_t balls_built = 0;
  std::uint64_t ball_vertices = 0;
  std::uint64_t max_ball_vertices = 0;
};

class LocalMatcher {
 public:
  LocalMatcher(RgmmOracle& oracle, LocalParams params,
               BallMode mode = BallMode::kComponent);

  /// Neighbors of v in G[M u B], ascending.
  std::vector<VertexId> neighbors(VertexId v);

  Ball ball(VertexId center);

  /// Is v matched in L? Throws kBudgetExceeded from the oracle.
  bool matched_status(VertexId v);

  const LocalStats& stats() const noexcept { return stats_; }
  const LocalParams& params() const noexcept { return params_; }
  BallMode mode() const noexcept { return mode_; }

 private:
  RgmmOracle* oracle_;
  LocalParams params_;
  BallMode mode_;
  LocalStats stats_;
  std::unordered_map<VertexId, bool> component_status_;
};

/// G[M u B] for the oracle's epoch, materialized.
Graph union_graph(RgmmOracle& oracle);

/// L computed globally on the materialized G[M u B].
Matching global_local_matching(RgmmOracle& oracle, const LocalParams& params);

/// Induced subgraph on the ball's vertices, relabelled to 0..|ball|-1 in
/// ascending id order (order-preserving, so the reference procedure makes
/// the same choices as on the original ids).
Graph ball_subgraph(const Ball& ball);

}  // namespace dynmatch
