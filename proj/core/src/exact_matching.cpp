#include "dynmatch/exact_matching.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace dynmatch {

namespace {

// Edmonds' algorithm with explicit blossom bases, O(V^3). One BFS-grown
// alternating tree per free root; odd cycles are shrunk by relabelling
// their vertices to the common base.
class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g),
        n_(g.num_vertices()),
        match_(n_, kNoVertex),
        parent_(n_, kNoVertex),
        base_(n_),
        in_tree_(n_, false),
        in_blossom_(n_, false) {}

  void greedy_init() {
    for (VertexId u = 0; u < n_; ++u) {
      if (match_[u] != kNoVertex) continue;
      for (VertexId v : g_.neighbors(u)) {
        if (match_[v] == kNoVertex) {
          match_[u] = v;
          match_[v] = u;
          break;
        }
      }
    }
  }

  void run() {
    greedy_init();
    for (VertexId root = 0; root < n_; ++root) {
      if (match_[root] != kNoVertex) continue;
      const VertexId end = find_path(root);
      if (end != kNoVertex) augment(end);
    }
  }

  Matching to_matching() const {
    Matching m(n_);
    for (VertexId u = 0; u < n_; ++u) {
      if (match_[u] != kNoVertex && u < match_[u]) m.add(u, match_[u]);
    }
    return m;
  }

 private:
  VertexId lca(VertexId a, VertexId b) {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == kNoVertex) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(VertexId v, VertexId b, VertexId child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = true;
      in_blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  VertexId find_path(VertexId root) {
    std::fill(in_tree_.begin(), in_tree_.end(), false);
    std::fill(parent_.begin(), parent_.end(), kNoVertex);
    for (VertexId i = 0; i < n_; ++i) base_[i] = i;
    in_tree_[root] = true;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (VertexId to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kNoVertex && parent_[match_[to]] != kNoVertex)) {
          // Odd cycle: shrink it.
          const VertexId cur_base = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (VertexId i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur_base;
              if (!in_tree_[i]) {
                in_tree_[i] = true;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[to] == kNoVertex) {
          parent_[to] = v;
          if (match_[to] == kNoVertex) return to;
          const VertexId next = match_[to];
          in_tree_[next] = true;
          queue.push_back(next);
        }
      }
    }
    return kNoVertex;
  }

  void augment(VertexId v) {
    while (v != kNoVertex) {
      const VertexId pv = parent_[v];
      const VertexId ppv = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = ppv;
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<VertexId> match_;
  std::vector<VertexId> parent_;
  std::vector<VertexId> base_;
  std::vector<bool> in_tree_;
  std::vector<bool> in_blossom_;
};

}  // namespace

MatchingResult maximum_matching(const Graph& g) {
  Blossom solver(g);
  solver.run();
  MatchingResult r{solver.to_matching(), 0};
  r.size = r.matching.size();
  return r;
}

MatchingResult maximum_matching(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (!g.has_edge(e.u, e.v)) g.insert_edge(e.u, e.v);
  }
  return maximum_matching(g);
}

std::size_t brute_force_matching(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kBruteForceMaxVertices) {
    throw Error(Errc::kTooLarge, "brute force limited to " +
                                     std::to_string(kBruteForceMaxVertices) +
                                     " vertices, got " + std::to_string(n));
  }
  std::vector<std::uint32_t> nbr(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.neighbors(u)) nbr[u] |= 1u << v;
  }
  // best[mask]: maximum matching within the vertex subset `mask`.
  const std::uint32_t full = n == 0 ? 0 : ((1u << n) - 1);
  std::vector<std::int8_t> best(static_cast<std::size_t>(full) + 1, -1);
  best[0] = 0;
  // Masks are processed in increasing order; every recursive reference is to
  // a strict subset, i.e. a smaller mask.
  for (std::uint32_t mask = 1; mask <= full && full != 0; ++mask) {
    const int low = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << low);
    int value = best[rest];
    std::uint32_t cand = nbr[low] & rest;
    // Upper bound prune: cannot beat floor(|mask|/2).
    const int cap = __builtin_popcount(mask) / 2;
    while (cand != 0 && value < cap) {
      const int w = __builtin_ctz(cand);
      cand &= cand - 1;
      value = std::max(value, 1 + best[rest & ~(1u << w)]);
    }
    best[mask] = static_cast<std::int8_t>(value);
  }
  return static_cast<std::size_t>(best[full]);
}

namespace {

bool extend_alternating(const Graph& g, const Matching& m, VertexId root,
                        VertexId at, std::vector<bool>& on_path) {
  // `at` is reached by an even-length prefix; leave via a non-matching edge.
  for (VertexId w : g.neighbors(at)) {
    if (on_path[w] || m.contains(at, w)) continue;
    if (!m.is_matched(w)) {
      if (w != root) return true;
      continue;
    }
    const VertexId z = *m.mate(w);
    if (on_path[z]) continue;
    on_path[w] = on_path[z] = true;
    const bool found = extend_alternating(g, m, root, z, on_path);
    on_path[w] = on_path[z] = false;
    if (found) return true;
  }
  return false;
}

}  // namespace

bool has_augmenting_path(const Graph& g, const Matching& m) {
  std::vector<bool> on_path(g.num_vertices(), false);
  for (VertexId f = 0; f < g.num_vertices(); ++f) {
    if (m.is_matched(f)) continue;
    on_path[f] = true;
    const bool found = extend_alternating(g, m, f, f, on_path);
    on_path[f] = false;
    if (found) return true;
  }
  return false;
}

}  // namespace dynmatch
