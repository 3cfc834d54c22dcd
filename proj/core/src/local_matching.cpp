#include "dynmatch/local_matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace dynmatch {

LocalParams LocalParams::make(double epsilon, std::uint32_t radius_override) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  LocalParams p;
  p.epsilon = epsilon;
  const auto inv = static_cast<std::uint32_t>(std::ceil(1.0 / epsilon - 1e-12));
  p.path_cap = 2 * inv - 1;
  p.radius = radius_override != 0 ? radius_override : p.path_cap + 1;
  p.validate();
  return p;
}

void LocalParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  if (path_cap % 2 == 0) throw Error(Errc::kInvalidInput, "path cap must be odd");
  if (radius < path_cap + 1) {
    throw Error(Errc::kInvalidInput, "radius must be at least path_cap + 1");
  }
}

Ball explore_ball(VertexId center, std::optional<std::uint32_t> radius,
                  const NeighborFn& neighbors) {
  Ball ball;
  ball.center = center;
  std::unordered_map<VertexId, std::uint32_t> dist{{center, 0}};
  std::unordered_map<VertexId, std::vector<VertexId>> adj;
  std::deque<VertexId> queue{center};
  std::uint32_t reached = 0;
  bool leaks = false;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    const std::uint32_t dv = dist.at(v);
    reached = std::max(reached, dv);
    auto nb = neighbors(v);
    for (VertexId w : nb) {
      if (dist.count(w)) continue;
      if (radius && dv == *radius) {
        leaks = true;
        continue;
      }
      dist.emplace(w, dv + 1);
      queue.push_back(w);
    }
    adj.emplace(v, std::move(nb));
  }
  ball.radius = radius ? *radius : reached;
  ball.closed = !leaks;
  ball.vertices.reserve(dist.size());
  for (const auto& [v, d] : dist) ball.vertices.push_back(v);
  std::sort(ball.vertices.begin(), ball.vertices.end());
  for (const auto& [v, nb] : adj) {
    for (VertexId w : nb) {
      if (v < w && dist.count(w)) ball.edges.push_back({v, w});
    }
  }
  std::sort(ball.edges.begin(), ball.edges.end());
  return ball;
}

Matching lexicographic_greedy(const Graph& g) {
  Matching m(g.num_vertices());
  for (const Edge& e : g.edges()) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) m.add(e.u, e.v);
  }
  return m;
}

namespace {

// First augmenting path of at most `max_len` edges from free root f, found by
// DFS over ascending neighbors. `path` holds the vertex sequence.
bool find_short_augmenting(const Graph& g, const Matching& m, VertexId at,
                           std::uint32_t len, std::uint32_t max_len,
                           std::vector<bool>& on_path,
                           std::vector<VertexId>& path) {
  // Leaving `at` along a non-matching edge adds one edge; continuing through
  // a matched vertex adds its matching edge too.
  if (len + 1 > max_len) return false;
  for (VertexId w : g.neighbors(at)) {
    if (on_path[w] || m.contains(at, w)) continue;
    if (!m.is_matched(w)) {
      path.push_back(w);
      return true;
    }
    if (len + 3 > max_len) continue;
    const VertexId z = *m.mate(w);
    if (on_path[z]) continue;
    on_path[w] = on_path[z] = true;
    path.push_back(w);
    path.push_back(z);
    if (find_short_augmenting(g, m, z, len + 2, max_len, on_path, path)) return true;
    path.pop_back();
    path.pop_back();
    on_path[w] = on_path[z] = false;
  }
  return false;
}

void augment_along(Matching& m, const std::vector<VertexId>& path) {
  // path = f, w1, z1, w2, z2, ..., last; edges (z_i, w_{i+1}) become matched.
  for (std::size_t i = 1; i + 1 < path.size(); i += 2) m.remove(path[i], path[i + 1]);
  for (std::size_t i = 0; i + 1 < path.size(); i += 2) m.add(path[i], path[i + 1]);
}

}  // namespace

Matching reference_matching(const Graph& g, std::uint32_t path_cap) {
  Matching m = lexicographic_greedy(g);
  const std::size_t n = g.num_vertices();
  std::vector<bool> on_path(n, false);
  std::vector<VertexId> path;
  for (std::uint32_t len = 3; len <= path_cap; len += 2) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (VertexId f = 0; f < n; ++f) {
        if (m.is_matched(f) || g.degree(f) == 0) continue;
        path.assign(1, f);
        on_path[f] = true;
        const bool found = find_short_augmenting(g, m, f, 0, len, on_path, path);
        for (VertexId v : path) on_path[v] = false;
        if (found) {
          augment_along(m, path);
          progress = true;
        }
      }
    }
  }
  return m;
}

Graph ball_subgraph(const Ball& ball) {
  Graph sub(ball.vertices.size());
  auto local = [&](VertexId v) {
    return static_cast<VertexId>(
        std::lower_bound(ball.vertices.begin(), ball.vertices.end(), v) -
        ball.vertices.begin());
  };
  for (const Edge& e : ball.edges) sub.insert_edge(local(e.u), local(e.v));
  return sub;
}

LocalMatcher::LocalMatcher(RgmmOracle& oracle, LocalParams params, BallMode mode)
    : oracle_(&oracle), params_(params), mode_(mode) {
  params_.validate();
}

std::vector<VertexId> LocalMatcher::neighbors(VertexId v) {
  std::vector<VertexId> out;
  const auto mate = oracle_->matching().mate(v);
  if (mate) out.push_back(*mate);
  for (const BEdge& be : oracle_->b_edges_of(v)) out.push_back(be.other);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Ball LocalMatcher::ball(VertexId center) {
  oracle_->graph().check_vertex(center);
  const std::optional<std::uint32_t> r =
      mode_ == BallMode::kRadius ? std::optional<std::uint32_t>(params_.radius)
                                 : std::nullopt;
  Ball b = explore_ball(center, r, [this](VertexId v) { return neighbors(v); });
  ++stats_.balls_built;
  stats_.ball_vertices += b.vertices.size();
  stats_.max_ball_vertices =
      std::max<std::uint64_t>(stats_.max_ball_vertices, b.vertices.size());
  return b;
}

bool LocalMatcher::matched_status(VertexId v) {
  ++stats_.queries;
  if (mode_ == BallMode::kComponent) {
    if (auto it = component_status_.find(v); it != component_status_.end()) {
      return it->second;
    }
  }
  const Ball b = ball(v);
  const Matching local = reference_matching(ball_subgraph(b), params_.path_cap);
  if (mode_ == BallMode::kComponent) {
    // The whole component was explored; every member's answer is known.
    for (std::size_t i = 0; i < b.vertices.size(); ++i) {
      component_status_[b.vertices[i]] = local.is_matched(static_cast<VertexId>(i));
    }
    return component_status_.at(v);
  }
  const auto pos = std::lower_bound(b.vertices.begin(), b.vertices.end(), v) -
                   b.vertices.begin();
  return local.is_matched(static_cast<VertexId>(pos));
}

Graph union_graph(RgmmOracle& oracle) {
  const Graph& g = oracle.graph();
  Graph u(g.num_vertices());
  for (const Edge& e : oracle.matching().edges()) u.insert_edge(e.u, e.v);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (const BEdge& be : oracle.b_edges_of(v)) {
      if (v < be.other && !u.has_edge(v, be.other)) u.insert_edge(v, be.other);
    }
  }
  return u;
}

Matching global_local_matching(RgmmOracle& oracle, const LocalParams& params) {
  return reference_matching(union_graph(oracle), params.path_cap);
}

}  // namespace dynmatch
