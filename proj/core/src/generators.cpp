#include "dynmatch/generators.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "dynmatch/error.hpp"

namespace dynmatch {

namespace {

struct Family {
  const char* name;
  std::vector<std::string> keys;
};

const std::vector<Family>& families() {
  static const std::vector<Family> f = {
      {"erdos_renyi", {"n", "p"}},
      {"random_bipartiteish", {"n", "p", "imbalance"}},
      {"path", {"n"}},
      {"triangle_chain", {"t"}},
      {"fig1_gadget", {"k"}},
      {"update_mix", {"n", "p", "steps", "delete_ratio"}},
  };
  return f;
}

const Family& find_family(const std::string& name) {
  for (const auto& f : families()) {
    if (name == f.name) return f;
  }
  throw Error(Errc::kInvalidSpec, "unknown generator family '" + name + "'");
}

constexpr std::uint64_t kMaxVertices = 1u << 26;

std::size_t vertex_count(const GenSpec& s, const std::string& key = "n") {
  const std::uint64_t n = s.integer(key);
  if (n > kMaxVertices) throw Error(Errc::kInvalidSpec, key + " is too large");
  return static_cast<std::size_t>(n);
}

double probability(const GenSpec& s, const std::string& key) {
  const double p = s.real(key);
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::kInvalidSpec, key + " must lie in [0, 1]");
  return p;
}

// Geometric skipping over the n(n-1)/2 pairs (i < j) in lexicographic order.
template <typename Keep>
std::vector<Edge> sample_pairs(std::size_t n, double p, std::mt19937_64& rng, Keep keep) {
  std::vector<Edge> out;
  if (n < 2 || p <= 0.0) return out;
  if (p >= 1.0) {
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = i + 1; j < n; ++j) {
        if (keep(i, j)) out.push_back({i, j});
      }
    }
    return out;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  const std::uint64_t total = std::uint64_t(n) * (n - 1) / 2;
  std::uint64_t idx = skip(rng);
  VertexId i = 0;
  std::uint64_t row_start = 0;  // index of pair (i, i + 1)
  while (idx < total) {
    while (idx >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    const VertexId j = static_cast<VertexId>(i + 1 + (idx - row_start));
    if (keep(i, j)) out.push_back({i, j});
    idx += 1 + skip(rng);
  }
  return out;
}

UpdateStream gen_erdos_renyi(const GenSpec& s, std::mt19937_64& rng) {
  const std::size_t n = vertex_count(s);
  auto edges = sample_pairs(n, probability(s, "p"), rng, [](VertexId, VertexId) { return true; });
  std::shuffle(edges.begin(), edges.end(), rng);
  return insert_stream(n, edges);
}

UpdateStream gen_bipartiteish(const GenSpec& s, std::mt19937_64& rng) {
  const std::size_t n = vertex_count(s);
  const double p = probability(s, "p");
  const double imbalance = s.real("imbalance");
  if (!(imbalance >= 0.0 && imbalance < 1.0)) {
    throw Error(Errc::kInvalidSpec, "imbalance must lie in [0, 1)");
  }
  const auto left = static_cast<VertexId>(std::llround(n * (1.0 + imbalance) / 2.0));
  auto cross = sample_pairs(n, p, rng, [&](VertexId i, VertexId j) { return i < left && j >= left; });
  auto same = sample_pairs(n, p / 10.0, rng,
                           [&](VertexId i, VertexId j) { return (i < left) == (j < left); });
  cross.insert(cross.end(), same.begin(), same.end());
  std::shuffle(cross.begin(), cross.end(), rng);
  return insert_stream(n, cross);
}

UpdateStream gen_path(const GenSpec& s) {
  const std::size_t n = vertex_count(s);
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return insert_stream(n, edges);
}

UpdateStream gen_triangle_chain(const GenSpec& s, std::mt19937_64& rng) {
  const std::uint64_t t = s.integer("t");
  if (t > kMaxVertices / 3) throw Error(Errc::kInvalidSpec, "t is too large");
  const std::size_t n = 3 * t;
  std::vector<Edge> edges;
  for (VertexId i = 0; i < t; ++i) {
    const VertexId a = 3 * i;
    edges.push_back({a, a + 1});
    edges.push_back({a, a + 2});
    edges.push_back({a + 1, a + 2});
    if (i + 1 < t) edges.push_back({a + 2, a + 3});
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return insert_stream(n, edges);
}

// Per copy on u0..u3: (u0,u1) is taken by the first pass, leaving u2, u3
// free. The trap vertex u3 is adjacent to both matched vertices; u2 hangs
// off u1. Distinct edges keep (u1,u2) in B; letting (u0,u3) and (u1,u3)
// repeat exhausts the capacity of u0 and u1 first and loses (u1,u2).
UpdateStream gen_fig1(const GenSpec& s) {
  const std::uint64_t k = s.integer("k");
  if (k > kMaxVertices / 4) throw Error(Errc::kInvalidSpec, "k is too large");
  std::vector<Edge> edges;
  for (VertexId c = 0; c < k; ++c) {
    const VertexId o = 4 * c;
    edges.push_back({o + 0, o + 1});
    edges.push_back({o + 0, o + 3});
    edges.push_back({o + 1, o + 3});
    edges.push_back({o + 1, o + 2});
  }
  return insert_stream(4 * k, edges);
}

UpdateStream gen_update_mix(const GenSpec& s, std::mt19937_64& rng) {
  const std::size_t n = vertex_count(s);
  probability(s, "p");
  const std::uint64_t steps = s.integer("steps");
  const double delete_ratio = probability(s, "delete_ratio");
  UpdateStream out = gen_erdos_renyi(s, rng);
  if (n < 2) return out;

  std::vector<Edge> live;
  std::set<Edge> present;
  for (const auto& ev : out.events) {
    live.push_back(ev.edge);
    present.insert(ev.edge);
  }
  const std::uint64_t all_pairs = std::uint64_t(n) * (n - 1) / 2;
  std::bernoulli_distribution del(delete_ratio);
  std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(n - 1));
  for (std::uint64_t step = 0; step < steps; ++step) {
    const bool full = present.size() == all_pairs;
    if (!live.empty() && (full || del(rng))) {
      std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
      const std::size_t i = pick(rng);
      const Edge e = live[i];
      live[i] = live.back();
      live.pop_back();
      present.erase(e);
      out.events.push_back({EventKind::kDelete, e});
      continue;
    }
    Edge e;
    do {
      e = make_edge(vertex(rng), vertex(rng));
    } while (e.u == e.v || present.contains(e));
    live.push_back(e);
    present.insert(e);
    out.events.push_back({EventKind::kInsert, e});
  }
  return out;
}

}  // namespace

GenSpec GenSpec::parse(std::string_view text) {
  if (text.starts_with("gen:")) text.remove_prefix(4);
  GenSpec s;
  const auto colon = text.find(':');
  s.family = std::string(text.substr(0, colon));
  const Family& fam = find_family(s.family);
  std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? "" : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(Errc::kInvalidSpec, "expected key=value, got '" + std::string(item) + "'");
    }
    std::string key(item.substr(0, eq));
    std::string value(item.substr(eq + 1));
    if (key == "seed") {
      const auto r = std::from_chars(value.data(), value.data() + value.size(), s.seed);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size()) {
        throw Error(Errc::kInvalidSpec, "bad seed '" + value + "'");
      }
      continue;
    }
    if (std::find(fam.keys.begin(), fam.keys.end(), key) == fam.keys.end()) {
      throw Error(Errc::kInvalidSpec, "unknown key '" + key + "' for " + s.family);
    }
    if (!s.params.emplace(key, value).second) {
      throw Error(Errc::kInvalidSpec, "repeated key '" + key + "'");
    }
  }
  for (const auto& key : fam.keys) {
    if (!s.params.contains(key)) {
      throw Error(Errc::kInvalidSpec, "missing key '" + key + "' for " + s.family);
    }
  }
  return s;
}

std::string GenSpec::str() const {
  std::ostringstream os;
  os << "gen:" << family << ':';
  for (const auto& [k, v] : params) os << k << '=' << v << ',';
  os << "seed=" << seed;
  return os.str();
}

double GenSpec::real(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(Errc::kInvalidSpec, "missing key '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::kInvalidSpec, "bad number for '" + key + "': " + it->second);
  }
}

std::uint64_t GenSpec::integer(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(Errc::kInvalidSpec, "missing key '" + key + "'");
  std::uint64_t v = 0;
  const auto& str = it->second;
  const auto r = std::from_chars(str.data(), str.data() + str.size(), v);
  if (r.ec != std::errc() || r.ptr != str.data() + str.size()) {
    throw Error(Errc::kInvalidSpec, "bad integer for '" + key + "': " + str);
  }
  return v;
}

UpdateStream generate(const GenSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const std::string& f = spec.family;
  if (f == "erdos_renyi") return gen_erdos_renyi(spec, rng);
  if (f == "random_bipartiteish") return gen_bipartiteish(spec, rng);
  if (f == "path") return gen_path(spec);
  if (f == "triangle_chain") return gen_triangle_chain(spec, rng);
  if (f == "fig1_gadget") return gen_fig1(spec);
  if (f == "update_mix") return gen_update_mix(spec, rng);
  throw Error(Errc::kInvalidSpec, "unknown generator family '" + f + "'");
}

bool is_gen_spec(std::string_view input) noexcept { return input.starts_with("gen:"); }

UpdateStream load_input(std::string_view input, std::uint64_t default_seed) {
  if (!is_gen_spec(input)) return read_stream_file(std::string(input));
  GenSpec spec = GenSpec::parse(input);
  if (input.find("seed=") == std::string_view::npos) spec.seed = default_seed;
  return generate(spec);
}

}  // namespace dynmatch
