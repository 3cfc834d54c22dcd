#pragma once

// Maximum-matching size estimator for fully dynamic graphs.
//
// On a query: fix the maintained maximal matching M, the implicit b-matching
// B from the greedy-oracle on the copy graph, and the matching L of
// G[M u B]; sample r vertices uniformly with replacement and count the
// matched ones, X. The estimate is n X / (2r) - eps n / 2.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dynmatch/dynamic_maximal.hpp"
#include "dynmatch/event_stream.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/local_matching.hpp"

namespace dynmatch {

struct EstimatorConfig {
  double epsilon = 0.25;
  std::uint32_t k = 27;
  std::uint32_t kb_ceil = 66;
  std::uint32_t path_cap = 7;
  std::uint32_t radius = 8;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::uint64_t exploration_budget = 10'000'000;
  /// Updates between fresh queries; 0 selects max(1, floor(eps * last)).
  std::size_t requery_interval = 0;
  BallMode ball_mode = BallMode::kComponent;

  void validate() const;
};

/// ceil(24 eps^-2 ln n), clamped to [1, n] (1 when n <= 1).
std::size_t sample_count(std::size_t n, double epsilon);

/// Defaults for n vertices: k = ceil(1 / (b eps^3)) unless overridden.
EstimatorConfig make_estimator_config(std::size_t n, double epsilon,
                                      std::uint32_t k_override = 0,
                                      std::uint64_t seed = 0);

struct Estimate {
  double mu_tilde = 0.0;
  /// n X / (2r) - eps n / 2 before clamping to [0, n/2].
  double mu_tilde_raw = 0.0;
  std::size_t x = 0;
  std::size_t r = 0;
  std::vector<std::pair<VertexId, bool>> samples;
  std::uint64_t explored_edges = 0;
  /// Samples whose status could not be decided within the budget; counted
  /// as unmatched.
  std::size_t unknown = 0;
};

double estimate_from_count(std::size_t n, std::size_t x, std::size_t r,
                           double epsilon, double* raw = nullptr);

/// One query over the current epoch. `epoch` diversifies the permutation and
/// the sample draw between queries under one configured seed.
Estimate query(const Graph& g, const DynamicMaximalMatching& state,
               const EstimatorConfig& cfg, std::uint64_t epoch = 0);

struct EstimateRow {
  std::size_t event_index = 0;
  EventKind kind = EventKind::kQuery;
  double mu_tilde = 0.0;
  std::size_t x = 0;
  std::size_t r = 0;
  /// Edges explored by the query that produced mu_tilde.
  std::uint64_t explored_edges = 0;
  /// Updates applied since the estimate was computed.
  std::size_t staleness = 0;
  bool fresh = false;
  std::optional<std::size_t> mu_exact;
};

struct DynamicRunOptions {
  /// Compute the exact maximum matching every `oracle_every` rows (0: never).
  std::size_t oracle_every = 0;
};

/// Feeds every update to the maximal-matching maintainer and re-queries every
/// requery interval; 'q' events force a fresh query. One row per event.
std::vector<EstimateRow> run_fully_dynamic(const UpdateStream& stream,
                                           const EstimatorConfig& cfg,
                                           const DynamicRunOptions& opts = {});

}  // namespace dynmatch
