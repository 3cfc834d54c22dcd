#pragma once

#include <vector>

#include "dynmatch/event_stream.hpp"
#include "dynmatch/graph.hpp"

namespace dynmatch {

/// Keeps a maximal matching of a fully dynamic graph.
///
/// Repair is local: after a matched edge disappears each freed endpoint is
/// matched to its smallest-id free neighbor, if any. O(deg) per update.
class DynamicMaximalMatching {
 public:
  explicit DynamicMaximalMatching(std::size_t n) : m_(n) {}

  /// Call after (u, v) was inserted into g.
  void on_insert(const Graph& g, VertexId u, VertexId v);
  /// Call after (u, v) was deleted from g.
  void on_delete(const Graph& g, VertexId u, VertexId v);

  /// Applies the event to g and repairs the matching.
  void apply(Graph& g, const UpdateEvent& ev);

  const Matching& matching() const noexcept { return m_; }
  std::vector<VertexId> free_vertices() const;

  /// Full edge scan: no edge of g has both endpoints free.
  bool is_maximal_in(const Graph& g) const;

 private:
  void rematch(const Graph& g, VertexId x);

  Matching m_;
};

}  // namespace dynmatch
