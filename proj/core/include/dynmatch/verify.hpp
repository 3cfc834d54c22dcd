#pragma once

// Executable form of the fractional-matching argument behind the two-pass
// guarantee: build the witness x on M u B, then check the vertex
// constraints, the small-set odd (blossom) inequalities and the accounting
// inequalities against a maximum matching M*.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/exact_number.hpp"
#include "dynmatch/fractional.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/streaming.hpp"

namespace dynmatch {

/// M* split by how many endpoints lie in V(M).
struct OptSplit {
  Matching m_star;
  std::vector<Edge> m1;         // exactly one endpoint in V(M)
  std::vector<Edge> m2;         // both endpoints in V(M)
  std::vector<Edge> uncovered;  // no endpoint in V(M); empty when M is maximal

  static OptSplit make(const Matching& m, Matching m_star);
  bool in_m1(Edge e) const;
};

/// Witness for a pass-2 b-matching of distinct edges:
///   1 - 1/b on M, 1/ceil(kb) on B \ M1*, and t/ceil(kb) on (u, v) in B n M1*
///   with t = min(k - deg'(u), ceil(kb) - deg'(v)), deg' excluding (u, v).
/// Throws kInvalidInput if B violates its capacities or has repeated edges.
FractionalMatching build_fractional(const Matching& m, const BMatching& b,
                                    const OptSplit& split, const StreamParams& p);

/// Witness for a multiset B (copy-graph projection): t_e = min(eps^3 ceil(kb),
/// B_e) on B \ M1*, and on B n M1* the residual of both endpoints after the
/// other edges' t values.
FractionalMatching build_fractional_dynamic(const Matching& m, const BMatching& b,
                                            const OptSplit& split,
                                            const StreamParams& p);

struct BlossomViolation {
  std::vector<VertexId> set;
  QSqrt2 value;  // (1 - eps) x(S)
  std::size_t bound = 0;
};

struct BlossomOptions {
  /// Connected sets visited per support component before falling back to
  /// sampling.
  std::uint64_t enumeration_budget = 5'000'000;
  std::size_t fallback_samples = 20'000;
  std::uint64_t seed = 1;
  std::size_t max_reported = 20;
};

struct BlossomReport {
  std::size_t max_set_size = 0;
  std::uint64_t sets_checked = 0;
  std::size_t components = 0;
  std::size_t exhaustive_components = 0;
  std::size_t sampled_components = 0;
  std::size_t violation_count = 0;
  std::vector<BlossomViolation> violations;  // first max_reported

  bool exhaustive() const noexcept { return sampled_components == 0; }
  bool ok() const noexcept { return violation_count == 0; }
};

/// Checks (1 - eps) x(S) <= floor(|S|/2) for all odd S with
/// |S| < min(1/eps, size_cap). Connected sets of the support suffice; sets
/// whose vertex slack sum reaches 1 are pruned, which cannot hide a
/// violation. Components that exceed the enumeration budget are checked
/// on sampled odd sets and short odd cycles instead.
BlossomReport check_blossom(const FractionalMatching& x, double epsilon,
                            std::size_t size_cap, const BlossomOptions& opts = {});

struct ClaimCheck {
  std::string name;
  QSqrt2 lhs;
  QSqrt2 rhs;
  bool pass = false;
  /// False for statements that only hold in expectation; reported only.
  bool binding = true;

  double slack() const { return (lhs - rhs).to_double(); }
};

struct ClaimsReport {
  std::vector<ClaimCheck> checks;
  bool all_pass() const;
  const ClaimCheck* find(const std::string& name) const;
};

enum class WitnessKind { kTwoPass, kDynamic };

/// Evaluates the accounting inequalities, exactly. `final_size` enables the
/// integrality and end-to-end checks.
ClaimsReport check_claims(const FractionalMatching& x, const Matching& m,
                          const BMatching& b, const OptSplit& split, double epsilon,
                          std::optional<std::size_t> final_size = std::nullopt,
                          WitnessKind kind = WitnessKind::kTwoPass,
                          std::optional<StreamParams> params = std::nullopt);

/// Per-edge outcome of the saturation diagnostic for copy-graph b-matchings:
/// either e is in B, or an endpoint u carries at least
/// ceil((1 - 2 eps) b(u)) B-copies after capping each edge at
/// eps^3 ceil(kb) copies.
struct SaturationResult {
  std::size_t edges = 0;
  std::size_t in_b = 0;
  std::size_t saturated = 0;
  std::size_t neither = 0;
};

SaturationResult saturation_diagnostic(const BMatching& b, const OptSplit& split,
                                       const Matching& m, const StreamParams& p);

/// Everything the CLI `verify` subcommand reports for one stream.
struct VerifyRun {
  TwoPassResult two_pass;
  OptSplit split;
  FractionalMatching x;
  ClaimsReport claims;
  BlossomReport blossom;
  std::size_t mu = 0;
};

VerifyRun verify_two_pass(std::size_t n, std::span<const Edge> stream,
                          const StreamParams& p, std::size_t size_cap = 64,
                          const BlossomOptions& opts = {});

}  // namespace dynmatch
