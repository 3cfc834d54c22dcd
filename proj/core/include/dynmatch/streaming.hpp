#pragma once

// Two-pass semi-streaming matcher for general graphs.
//
// Pass 1 keeps a greedy maximal matching M. Pass 2 keeps a b-matching B of
// distinct edges between matched and unmatched vertices, with capacity k on
// V(M) and ceil(k * (1 + sqrt 2)) on the rest. The output is a maximum
// matching of M u B.

#include <cstdint>
#include <span>

#include "dynmatch/exact_matching.hpp"
#include "dynmatch/graph.hpp"

namespace dynmatch {

/// 1 + sqrt(2).
inline constexpr double kB = 2.41421356237309504880;

/// Smallest integer t with t >= k * sqrt(2), computed without floating point.
std::uint64_t ceil_sqrt2_mult(std::uint64_t k);

/// ceil(k * (1 + sqrt 2)) = k + ceil(k * sqrt 2).
inline std::uint64_t kb_ceil_of(std::uint64_t k) { return k + ceil_sqrt2_mult(k); }

/// ceil(1 / (b * eps^3)); throws kInvalidInput unless 0 < eps < 1.
std::uint64_t default_k(double epsilon);

struct StreamParams {
  double epsilon = 0.1;
  std::uint32_t k = 1;
  std::uint32_t kb_ceil = 3;

  /// k defaults to default_k(epsilon) when k_override is 0.
  static StreamParams make(double epsilon, std::uint32_t k_override = 0);
  void validate() const;
};

/// First pass: add an edge iff both endpoints are still free.
Matching pass1_maximal(std::size_t n, std::span<const Edge> stream);

/// Second pass over the same stream: admit (u, v) with u in V(M), v not in
/// V(M) iff deg_B(u) < k and deg_B(v) < kb_ceil. Every edge is admitted at
/// most once.
BMatching pass2_bmatching(std::span<const Edge> stream, const Matching& m,
                          const StreamParams& p);

/// Maximum matching of the subgraph spanned by M u B.
MatchingResult finalize(const Matching& m, const BMatching& b);

struct TwoPassResult {
  Matching first_pass;
  BMatching b;
  MatchingResult output;
  /// Edges held in memory at the end of pass 2: |M| + |B|.
  std::size_t stored_edges = 0;
};

TwoPassResult run_two_pass(std::size_t n, std::span<const Edge> stream,
                           const StreamParams& p);

}  // namespace dynmatch
