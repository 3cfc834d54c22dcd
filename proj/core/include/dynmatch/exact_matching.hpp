#pragma once

#include <cstddef>
#include <span>

#include "dynmatch/graph.hpp"

namespace dynmatch {

struct MatchingResult {
  Matching matching;
  std::size_t size = 0;
};

/// Maximum-cardinality matching of a general graph (Edmonds' blossom
/// algorithm). Roots are tried in ascending id and neighbors are scanned in
/// ascending id, so the returned matching itself is reproducible.
MatchingResult maximum_matching(const Graph& g);

/// Convenience: maximum matching of the graph on n vertices spanned by
/// `edges` (duplicates are ignored).
MatchingResult maximum_matching(std::size_t n, std::span<const Edge> edges);

inline constexpr std::size_t kBruteForceMaxVertices = 16;

/// Exact mu(G) by memoized exhaustive search. Throws kTooLarge if
/// n > kBruteForceMaxVertices.
std::size_t brute_force_matching(const Graph& g);

/// True when some augmenting path relative to m exists. Searches simple
/// alternating paths exhaustively, so only usable on small graphs.
bool has_augmenting_path(const Graph& g, const Matching& m);

}  // namespace dynmatch
