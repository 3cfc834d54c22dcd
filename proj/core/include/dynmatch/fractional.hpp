#pragma once

#include <map>
#include <span>
#include <vector>

#include "dynmatch/exact_number.hpp"
#include "dynmatch/graph.hpp"

namespace dynmatch {

/// Edge weights in [0, 1], stored exactly. Absent edges weigh 0.
class FractionalMatching {
 public:
  FractionalMatching() = default;
  explicit FractionalMatching(std::size_t n) : n_(n) {}

  std::size_t num_vertices() const noexcept { return n_; }

  void set(Edge e, QSqrt2 value);
  QSqrt2 value(Edge e) const;
  const std::map<Edge, QSqrt2>& weights() const noexcept { return x_; }

  QSqrt2 vertex_sum(VertexId v) const;
  QSqrt2 total() const;
  /// x(S): total weight of edges with both endpoints in S.
  QSqrt2 of_set(std::span<const VertexId> s) const;

  /// Every weight in [0, 1] and every vertex sum <= 1.
  bool satisfies_vertex_constraints() const;

  FractionalMatching scaled(const QSqrt2& factor) const;

 private:
  std::size_t n_ = 0;
  std::map<Edge, QSqrt2> x_;
};

}  // namespace dynmatch
