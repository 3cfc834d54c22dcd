#include "dynmatch/streaming.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dynmatch {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t isqrt(u128 x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (static_cast<u128>(r) * r > x) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

std::uint64_t ceil_sqrt2_mult(std::uint64_t k) {
  const u128 target = static_cast<u128>(k) * k * 2;
  const std::uint64_t r = isqrt(target);
  // 2k^2 is a perfect square only for k = 0.
  return static_cast<u128>(r) * r == target ? r : r + 1;
}

std::uint64_t default_k(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  const double bound = 1.0 / (kB * epsilon * epsilon * epsilon);
  return static_cast<std::uint64_t>(std::ceil(bound));
}

StreamParams StreamParams::make(double epsilon, std::uint32_t k_override) {
  StreamParams p;
  p.epsilon = epsilon;
  const std::uint64_t k = k_override != 0 ? k_override : default_k(epsilon);
  if (k > std::numeric_limits<std::uint32_t>::max() / 3) {
    throw Error(Errc::kInvalidInput, "k too large: " + std::to_string(k));
  }
  p.k = static_cast<std::uint32_t>(k);
  p.kb_ceil = static_cast<std::uint32_t>(kb_ceil_of(k));
  p.validate();
  return p;
}

void StreamParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  if (k == 0 || kb_ceil != kb_ceil_of(k)) {
    throw Error(Errc::kInvalidInput, "inconsistent k / kb_ceil");
  }
}

Matching pass1_maximal(std::size_t n, std::span<const Edge> stream) {
  Matching m(n);
  for (const Edge& e : stream) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) m.add(e.u, e.v);
  }
  return m;
}

BMatching pass2_bmatching(std::span<const Edge> stream, const Matching& m,
                          const StreamParams& p) {
  const std::size_t n = m.num_vertices();
  std::vector<std::uint32_t> cap(n);
  for (VertexId v = 0; v < n; ++v) cap[v] = m.is_matched(v) ? p.k : p.kb_ceil;
  BMatching b(std::move(cap));
  for (const Edge& e : stream) {
    const bool mu = m.is_matched(e.u);
    if (mu == m.is_matched(e.v)) continue;  // not an edge of H
    const VertexId inside = mu ? e.u : e.v;
    const VertexId outside = mu ? e.v : e.u;
    if (b.degree(inside) < p.k && b.degree(outside) < p.kb_ceil &&
        b.multiplicity(e) == 0) {
      b.add(e);
    }
  }
  return b;
}

MatchingResult finalize(const Matching& m, const BMatching& b) {
  Graph sub(m.num_vertices());
  for (const Edge& e : m.edges()) sub.insert_edge(e.u, e.v);
  for (const auto& [e, count] : b.multiplicities()) {
    if (!sub.has_edge(e.u, e.v)) sub.insert_edge(e.u, e.v);
  }
  return maximum_matching(sub);
}

TwoPassResult run_two_pass(std::size_t n, std::span<const Edge> stream,
                           const StreamParams& p) {
  p.validate();
  TwoPassResult r;
  r.first_pass = pass1_maximal(n, stream);
  r.b = pass2_bmatching(stream, r.first_pass, p);
  r.output = finalize(r.first_pass, r.b);
  r.stored_edges = r.first_pass.size() + r.b.distinct_size();
  return r;
}

}  // namespace dynmatch
