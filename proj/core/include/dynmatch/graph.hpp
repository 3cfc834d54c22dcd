#pragma once

// Core graph vocabulary: undirected simple graphs on a fixed vertex set,
// matchings, capacitated b-matchings and the implicit bipartite view
// between matched and unmatched vertices.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dynmatch/error.hpp"

namespace dynmatch {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Undirected edge in canonical form (u < v).
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;

  bool has(VertexId x) const noexcept { return x == u || x == v; }
  VertexId other(VertexId x) const noexcept { return x == u ? v : u; }
};

/// Canonicalizes (a, b) to (min, max). Does not reject self-loops.
constexpr Edge make_edge(VertexId a, VertexId b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Mutable undirected simple graph on a fixed set of n vertices.
///
/// Adjacency lists are kept sorted so that every neighbor enumeration is in
/// ascending id order; algorithms that scan neighbors are reproducible.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  void insert_edge(VertexId u, VertexId v);
  void delete_edge(VertexId u, VertexId v);
  bool has_edge(VertexId u, VertexId v) const;

  std::span<const VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// All edges, sorted canonically.
  std::vector<Edge> edges() const;

  /// Throws kVertexOutOfRange unless v < n.
  void check_vertex(VertexId v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::size_t num_edges_ = 0;
};

/// A set of vertex-disjoint edges with O(1) mate lookup.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n) : mate_(n, kNoVertex) {}

  std::size_t num_vertices() const noexcept { return mate_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool is_matched(VertexId v) const { return mate_.at(v) != kNoVertex; }
  std::optional<VertexId> mate(VertexId v) const {
    auto m = mate_.at(v);
    return m == kNoVertex ? std::nullopt : std::optional<VertexId>(m);
  }
  bool contains(VertexId u, VertexId v) const {
    return u != v && mate_.at(u) == v;
  }

  /// Both endpoints must be free; throws kInvalidInput otherwise.
  void add(VertexId u, VertexId v);
  /// Edge must be in the matching; throws kMissingEdge otherwise.
  void remove(VertexId u, VertexId v);
  /// Frees v and its mate, if any.
  void unmatch(VertexId v);

  /// Edges sorted canonically.
  std::vector<Edge> edges() const;

  /// Checks the involution property and that every edge exists in g.
  bool is_valid_in(const Graph& g) const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<VertexId> mate_;
  std::size_t size_ = 0;
};

/// Edge multiset with per-vertex capacities.
class BMatching {
 public:
  BMatching() = default;
  explicit BMatching(std::vector<std::uint32_t> capacities);

  std::size_t num_vertices() const noexcept { return capacity_.size(); }
  std::uint32_t capacity(VertexId v) const { return capacity_.at(v); }
  std::uint32_t degree(VertexId v) const { return degree_.at(v); }
  std::uint32_t residual(VertexId v) const {
    return capacity_.at(v) - degree_.at(v);
  }
  std::uint32_t multiplicity(Edge e) const;

  /// Adds `count` copies; throws kInvalidInput if a capacity would overflow.
  void add(Edge e, std::uint32_t count = 1);

  const std::map<Edge, std::uint32_t>& multiplicities() const noexcept {
    return mult_;
  }
  /// Number of distinct edges.
  std::size_t distinct_size() const noexcept { return mult_.size(); }
  /// Total multiplicity.
  std::size_t total_size() const noexcept { return total_; }

  /// Recomputes every vertex load from scratch and compares with capacity.
  bool respects_capacities() const;

 private:
  std::vector<std::uint32_t> capacity_;
  std::vector<std::uint32_t> degree_;
  std::map<Edge, std::uint32_t> mult_;
  std::size_t total_ = 0;
};

/// Read-only view of H = G[V(M), V \ V(M)]: the edges of g with exactly one
/// matched endpoint. Nothing is materialized.
class BipartiteView {
 public:
  BipartiteView(const Graph& g, const Matching& m) : g_(&g), m_(&m) {}

  bool is_matched_side(VertexId v) const { return m_->is_matched(v); }
  bool has_edge(VertexId u, VertexId v) const {
    return m_->is_matched(u) != m_->is_matched(v) && g_->has_edge(u, v);
  }

  template <typename F>
  void for_each_neighbor(VertexId v, F&& f) const {
    const bool side = m_->is_matched(v);
    for (VertexId w : g_->neighbors(v)) {
      if (m_->is_matched(w) != side) f(w);
    }
  }

  std::vector<VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const;

  /// Materializes the edge list, for tests and reference computations.
  std::vector<Edge> edges() const;

  const Graph& graph() const noexcept { return *g_; }
  const Matching& matching() const noexcept { return *m_; }

 private:
  const Graph* g_;
  const Matching* m_;
};

}  // namespace dynmatch
