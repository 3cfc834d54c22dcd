#include "dynmatch/fractional.hpp"

#include <algorithm>

namespace dynmatch {

void FractionalMatching::set(Edge e, QSqrt2 value) {
  e = make_edge(e.u, e.v);
  if (e.u == e.v || e.v >= n_) {
    throw Error(Errc::kInvalidInput, "fractional weight on invalid edge");
  }
  if (value.sign() == 0) {
    x_.erase(e);
  } else {
    x_[e] = std::move(value);
  }
}

QSqrt2 FractionalMatching::value(Edge e) const {
  auto it = x_.find(make_edge(e.u, e.v));
  return it == x_.end() ? QSqrt2{} : it->second;
}

QSqrt2 FractionalMatching::vertex_sum(VertexId v) const {
  QSqrt2 sum;
  for (const auto& [e, w] : x_) {
    if (e.has(v)) sum += w;
  }
  return sum;
}

QSqrt2 FractionalMatching::total() const {
  QSqrt2 sum;
  for (const auto& [e, w] : x_) sum += w;
  return sum;
}

QSqrt2 FractionalMatching::of_set(std::span<const VertexId> s) const {
  std::vector<VertexId> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  auto in = [&](VertexId v) { return std::binary_search(sorted.begin(), sorted.end(), v); };
  QSqrt2 sum;
  for (const auto& [e, w] : x_) {
    if (in(e.u) && in(e.v)) sum += w;
  }
  return sum;
}

bool FractionalMatching::satisfies_vertex_constraints() const {
  std::vector<QSqrt2> sums(n_);
  const QSqrt2 one(1);
  for (const auto& [e, w] : x_) {
    if (w.sign() < 0 || w > one) return false;
    sums[e.u] += w;
    sums[e.v] += w;
  }
  return std::all_of(sums.begin(), sums.end(), [&](const QSqrt2& s) { return s <= one; });
}

FractionalMatching FractionalMatching::scaled(const QSqrt2& factor) const {
  FractionalMatching out(n_);
  for (const auto& [e, w] : x_) out.set(e, w * factor);
  return out;
}

}  // namespace dynmatch
