#pragma once

// Seeded instance generators. A spec is written as
//
//   gen:<family>:key=value,key=value,...
//
// e.g. gen:erdos_renyi:n=100,p=0.05,seed=7. The "gen:" prefix is optional
// for parse(). Every family emits a stream that passes ingestion.
//
//   erdos_renyi          n, p
//   random_bipartiteish  n, p, imbalance (left side holds (1+imbalance)/2 of
//                        the vertices; same-side pairs appear with prob p/10)
//   path                 n
//   triangle_chain       t (t triangles joined by bridge edges)
//   fig1_gadget          k (k disjoint copies of the four-vertex trap)
//   update_mix           n, p, steps, delete_ratio (ER(n, p) warm-up, then
//                        `steps` random inserts/deletes)

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "dynmatch/event_stream.hpp"

namespace dynmatch {

struct GenSpec {
  std::string family;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;

  /// Throws Errc::kInvalidSpec on unknown families, unknown or missing keys
  /// and malformed values.
  static GenSpec parse(std::string_view text);
  std::string str() const;

  double real(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
};

UpdateStream generate(const GenSpec& spec);

bool is_gen_spec(std::string_view input) noexcept;

/// "gen:..." is generated; anything else is read as a stream file.
/// `default_seed` fills in a spec without an explicit seed.
UpdateStream load_input(std::string_view input, std::uint64_t default_seed = 0);

}  // namespace dynmatch
