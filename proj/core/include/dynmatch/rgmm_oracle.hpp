#pragma once

// Local oracle for the random greedy maximal matching of the copy graph
// H~: every matched base vertex u (u in V(M)) is split into k copies and
// every unmatched base vertex into kb_ceil copies; each edge (u, v) of
// H = G[V(M), V \ V(M)] becomes the complete bipartite graph between the
// copies of u and the copies of v. A maximal matching of H~ projects to a
// maximal b-matching B of H (with multiplicities).
//
// Edge order is a keyed pseudorandom function of the canonical copy-edge
// encoding, so any copy edge's rank is available locally and the greedy
// matching never has to be materialized.

#include <compare>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

struct VertexCopy {
  VertexId base = 0;
  std::uint32_t index = 0;

  std::uint64_t encode() const noexcept {
    return (static_cast<std::uint64_t>(base) << 32) | index;
  }
  static VertexCopy decode(std::uint64_t code) noexcept {
    return {static_cast<VertexId>(code >> 32), static_cast<std::uint32_t>(code)};
  }
  friend auto operator<=>(const VertexCopy&, const VertexCopy&) = default;
};

/// Total order on copy edges: rank first, encodings break ties.
struct RankKey {
  std::uint64_t rank = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  static constexpr RankKey max() noexcept {
    return {~std::uint64_t{0}, ~std::uint64_t{0}, ~std::uint64_t{0}};
  }
  friend auto operator<=>(const RankKey&, const RankKey&) = default;
};

struct CopyEdge {
  VertexCopy a;  // a.encode() < b.encode()
  VertexCopy b;
  std::uint64_t rank = 0;

  RankKey key() const noexcept { return {rank, a.encode(), b.encode()}; }
  VertexCopy other(VertexCopy x) const noexcept { return x == a ? b : a; }
  Edge base_edge() const noexcept { return make_edge(a.base, b.base); }
  friend bool operator==(const CopyEdge&, const CopyEdge&) = default;
};

/// Deterministic 64-bit rank of the copy edge {x, y}; symmetric in x, y.
std::uint64_t copy_edge_rank(std::uint64_t seed, VertexCopy x, VertexCopy y) noexcept;

/// Canonical copy edge with its rank.
CopyEdge make_copy_edge(std::uint64_t seed, VertexCopy x, VertexCopy y) noexcept;

struct OracleParams {
  std::uint32_t k = 1;
  std::uint32_t kb_ceil = 3;
  std::uint64_t seed = 0;
  /// Maximum edge visits (list construction plus scanning) per epoch.
  std::uint64_t budget = 10'000'000;
};

struct OracleStats {
  std::uint64_t edges_listed = 0;
  std::uint64_t edges_scanned = 0;
  std::uint64_t copies_touched = 0;

  std::uint64_t explored() const noexcept { return edges_listed + edges_scanned; }
};

/// One b-matching edge seen from a base vertex.
struct BEdge {
  VertexId other = 0;
  std::uint32_t multiplicity = 0;
  friend bool operator==(const BEdge&, const BEdge&) = default;
};

/// Oracle bound to one epoch (G, M, seed). Graph and matching must outlive
/// the oracle and stay unchanged while it is in use. Not thread-safe.
class RgmmOracle {
 public:
  RgmmOracle(const Graph& g, const Matching& m, OracleParams params);

  std::uint32_t capacity(VertexId v) const {
    return m_->is_matched(v) ? params_.k : params_.kb_ceil;
  }

  /// The matching edge of vc in GMM(H~, rank order), if vc is matched.
  /// Throws kBudgetExceeded when the epoch budget runs out.
  std::optional<CopyEdge> is_matched(VertexCopy vc);

  /// B-edges at v with multiplicities, sorted by the other endpoint.
  std::vector<BEdge> b_edges_of(VertexId v);

  void clear_cache();
  const OracleStats& stats() const noexcept { return stats_; }
  const OracleParams& params() const noexcept { return params_; }
  const Graph& graph() const noexcept { return *g_; }
  const Matching& matching() const noexcept { return *m_; }

 private:
  struct Incident {
    RankKey key;
    std::uint64_t other;
  };
  struct State {
    std::vector<Incident> incident;  // sorted by key
    std::size_t pos = 0;             // incident[0, pos) are known unchosen
    bool resolved = false;
    bool matched = false;
    CopyEdge partner{};
  };

  State& state(std::uint64_t code);
  bool matched_below(std::uint64_t code, const RankKey& limit);
  void charge(std::uint64_t amount);

  const Graph* g_;
  const Matching* m_;
  OracleParams params_;
  OracleStats stats_;
  std::unordered_map<std::uint64_t, State> memo_;
  std::unordered_map<VertexId, std::vector<BEdge>> b_cache_;
};

inline constexpr std::size_t kGlobalGmmMaxEdges = 1'000'000;

/// Number of copy edges of H~.
std::uint64_t copy_graph_edge_count(const Graph& g, const Matching& m,
                                    std::uint32_t k, std::uint32_t kb_ceil);

/// Reference: materialize H~, sort every copy edge by rank and scan
/// greedily. Returns the chosen copy edges in rank order. Throws kTooLarge
/// above kGlobalGmmMaxEdges copy edges.
std::vector<CopyEdge> global_gmm(const Graph& g, const Matching& m,
                                 std::uint32_t k, std::uint32_t kb_ceil,
                                 std::uint64_t seed);

/// Projection of a copy matching onto H.
BMatching project_b_matching(const Graph& g, const Matching& m,
                             std::uint32_t k, std::uint32_t kb_ceil,
                             const std::vector<CopyEdge>& copy_matching);

/// B induced by the oracle, assembled from b_edges_of over all vertices.
BMatching oracle_b_matching(RgmmOracle& oracle);

}  // namespace dynmatch
