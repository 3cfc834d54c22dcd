#include "dynmatch/rgmm_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

namespace dynmatch {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t copy_edge_rank(std::uint64_t seed, VertexCopy x, VertexCopy y) noexcept {
  std::uint64_t lo = x.encode();
  std::uint64_t hi = y.encode();
  if (hi < lo) std::swap(lo, hi);
  std::uint64_t h = splitmix64(seed ^ 0xD6E8FEB86659FD93ull);
  h = splitmix64(h ^ lo);
  h = splitmix64(h ^ hi);
  return h;
}

CopyEdge make_copy_edge(std::uint64_t seed, VertexCopy x, VertexCopy y) noexcept {
  if (y.encode() < x.encode()) std::swap(x, y);
  return {x, y, copy_edge_rank(seed, x, y)};
}

RgmmOracle::RgmmOracle(const Graph& g, const Matching& m, OracleParams params)
    : g_(&g), m_(&m), params_(params) {
  if (params_.k == 0 || params_.kb_ceil == 0) {
    throw Error(Errc::kInvalidInput, "oracle capacities must be positive");
  }
  if (m.num_vertices() != g.num_vertices()) {
    throw Error(Errc::kInvalidInput, "matching and graph disagree on n");
  }
}

void RgmmOracle::clear_cache() {
  memo_.clear();
  b_cache_.clear();
  stats_ = {};
}

void RgmmOracle::charge(std::uint64_t amount) {
  if (stats_.explored() + amount > params_.budget) {
    throw Error(Errc::kBudgetExceeded,
                "oracle exploration budget of " + std::to_string(params_.budget) +
                    " edge visits exhausted");
  }
}

RgmmOracle::State& RgmmOracle::state(std::uint64_t code) {
  auto [it, inserted] = memo_.try_emplace(code);
  State& s = it->second;
  if (!inserted) return s;

  const VertexCopy self = VertexCopy::decode(code);
  g_->check_vertex(self.base);
  if (self.index >= capacity(self.base)) {
    memo_.erase(it);
    throw Error(Errc::kInvalidInput, "copy index out of range");
  }
  const bool side = m_->is_matched(self.base);
  std::uint64_t count = 0;
  for (VertexId w : g_->neighbors(self.base)) {
    if (m_->is_matched(w) != side) count += capacity(w);
  }
  try {
    charge(count);
  } catch (...) {
    memo_.erase(it);
    throw;
  }
  stats_.edges_listed += count;
  ++stats_.copies_touched;
  s.incident.reserve(count);
  for (VertexId w : g_->neighbors(self.base)) {
    if (m_->is_matched(w) == side) continue;
    const std::uint32_t cw = capacity(w);
    for (std::uint32_t j = 0; j < cw; ++j) {
      const CopyEdge e = make_copy_edge(params_.seed, self, {w, j});
      s.incident.push_back({e.key(), VertexCopy{w, j}.encode()});
    }
  }
  std::sort(s.incident.begin(), s.incident.end(),
            [](const Incident& a, const Incident& b) { return a.key < b.key; });
  if (s.incident.empty()) {
    s.resolved = true;
    s.matched = false;
  }
  return s;
}

// Is copy `code` matched by an edge whose key is below `limit`?
//
// A copy edge e = (w, x) is in the greedy matching iff neither endpoint is
// matched by an edge ranked before e. Scanning w's incident edges in key
// order, the first edge whose other endpoint is not matched below it is w's
// matching edge. Nested questions always carry a strictly smaller limit,
// so the search terminates; it runs on an explicit stack.
bool RgmmOracle::matched_below(std::uint64_t code, const RankKey& limit) {
  struct Frame {
    std::uint64_t code;
    RankKey limit;
    bool waiting;
  };
  std::vector<Frame> stack;
  stack.push_back({code, limit, false});
  bool ret = false;
  [[maybe_unused]] bool have_ret = false;

  while (!stack.empty()) {
    Frame& f = stack.back();
    State& s = state(f.code);

    if (f.waiting) {
      f.waiting = false;
      assert(have_ret);
      have_ret = false;
      if (!s.resolved) {
        const Incident& inc = s.incident[s.pos];
        if (!ret) {
          // Both endpoints free when inc is reached: it is chosen.
          const CopyEdge e{VertexCopy::decode(inc.key.lo), VertexCopy::decode(inc.key.hi),
                           inc.key.rank};
          s.resolved = true;
          s.matched = true;
          s.partner = e;
          State& so = state(inc.other);
          if (!so.resolved) {
            so.resolved = true;
            so.matched = true;
            so.partner = e;
          }
        } else {
          ++s.pos;
        }
      }
    }

    if (s.resolved) {
      ret = s.matched && s.partner.key() < f.limit;
      have_ret = true;
      stack.pop_back();
      continue;
    }
    if (s.pos == s.incident.size()) {
      s.resolved = true;
      s.matched = false;
      ret = false;
      have_ret = true;
      stack.pop_back();
      continue;
    }
    const Incident& inc = s.incident[s.pos];
    if (!(inc.key < f.limit)) {
      ret = false;
      have_ret = true;
      stack.pop_back();
      continue;
    }
    charge(1);
    ++stats_.edges_scanned;
    // Fast path: the other endpoint is already resolved.
    auto it = memo_.find(inc.other);
    if (it != memo_.end() && it->second.resolved) {
      const State& so = it->second;
      const bool other_taken = so.matched && so.partner.key() < inc.key;
      if (other_taken) {
        ++s.pos;
      } else {
        // so cannot be resolved-unmatched while an incident edge is free at
        // both ends; if it were matched by inc itself it is already set.
        const CopyEdge e{VertexCopy::decode(inc.key.lo), VertexCopy::decode(inc.key.hi),
                         inc.key.rank};
        s.resolved = true;
        s.matched = true;
        s.partner = e;
      }
      continue;
    }
    f.waiting = true;
    const RankKey child_limit = inc.key;
    const std::uint64_t child = inc.other;
    stack.push_back({child, child_limit, false});
  }
  assert(have_ret);
  return ret;
}

std::optional<CopyEdge> RgmmOracle::is_matched(VertexCopy vc) {
  const std::uint64_t code = vc.encode();
  matched_below(code, RankKey::max());
  const State& s = memo_.at(code);
  assert(s.resolved);
  if (!s.matched) return std::nullopt;
  return s.partner;
}

std::vector<BEdge> RgmmOracle::b_edges_of(VertexId v) {
  g_->check_vertex(v);
  if (auto it = b_cache_.find(v); it != b_cache_.end()) return it->second;
  std::map<VertexId, std::uint32_t> agg;
  const std::uint32_t cap = capacity(v);
  for (std::uint32_t i = 0; i < cap; ++i) {
    const VertexCopy self{v, i};
    if (auto e = is_matched(self)) ++agg[e->other(self).base];
  }
  std::vector<BEdge> out;
  out.reserve(agg.size());
  for (const auto& [w, c] : agg) out.push_back({w, c});
  b_cache_.emplace(v, out);
  return out;
}

std::uint64_t copy_graph_edge_count(const Graph& g, const Matching& m,
                                    std::uint32_t k, std::uint32_t kb_ceil) {
  const BipartiteView h(g, m);
  return static_cast<std::uint64_t>(h.edges().size()) * k * kb_ceil;
}

std::vector<CopyEdge> global_gmm(const Graph& g, const Matching& m,
                                 std::uint32_t k, std::uint32_t kb_ceil,
                                 std::uint64_t seed) {
  const std::uint64_t total = copy_graph_edge_count(g, m, k, kb_ceil);
  if (total > kGlobalGmmMaxEdges) {
    throw Error(Errc::kTooLarge, "copy graph has " + std::to_string(total) +
                                     " edges, limit " +
                                     std::to_string(kGlobalGmmMaxEdges));
  }
  const BipartiteView h(g, m);
  std::vector<CopyEdge> all;
  all.reserve(total);
  for (const Edge& e : h.edges()) {
    const VertexId in = m.is_matched(e.u) ? e.u : e.v;
    const VertexId out = e.other(in);
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t j = 0; j < kb_ceil; ++j) {
        all.push_back(make_copy_edge(seed, {in, i}, {out, j}));
      }
    }
  }
  std::sort(all.begin(), all.end(),
            [](const CopyEdge& a, const CopyEdge& b) { return a.key() < b.key(); });
  std::unordered_map<std::uint64_t, bool> taken;
  std::vector<CopyEdge> chosen;
  for (const CopyEdge& e : all) {
    const auto a = e.a.encode();
    const auto b = e.b.encode();
    if (taken.count(a) || taken.count(b)) continue;
    taken[a] = true;
    taken[b] = true;
    chosen.push_back(e);
  }
  return chosen;
}

BMatching project_b_matching(const Graph& g, const Matching& m,
                             std::uint32_t k, std::uint32_t kb_ceil,
                             const std::vector<CopyEdge>& copy_matching) {
  std::vector<std::uint32_t> cap(g.num_vertices());
  for (VertexId v = 0; v < cap.size(); ++v) cap[v] = m.is_matched(v) ? k : kb_ceil;
  BMatching b(std::move(cap));
  for (const CopyEdge& e : copy_matching) b.add(e.base_edge());
  return b;
}

BMatching oracle_b_matching(RgmmOracle& oracle) {
  const Graph& g = oracle.graph();
  std::vector<std::uint32_t> cap(g.num_vertices());
  for (VertexId v = 0; v < cap.size(); ++v) cap[v] = oracle.capacity(v);
  BMatching b(std::move(cap));
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (const BEdge& be : oracle.b_edges_of(v)) {
      if (v < be.other) b.add(make_edge(v, be.other), be.multiplicity);
    }
  }
  return b;
}

}  // namespace dynmatch
