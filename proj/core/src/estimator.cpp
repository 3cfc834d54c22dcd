#include "dynmatch/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dynmatch/exact_matching.hpp"
#include "dynmatch/streaming.hpp"

namespace dynmatch {

namespace {

constexpr std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t epoch, std::uint64_t stream) {
  return mix(mix(seed ^ 0x5851F42D4C957F2Dull) ^ mix(epoch) ^ (stream * 0x2545F4914F6CDD1Dull));
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  if (k == 0 || kb_ceil != kb_ceil_of(k)) {
    throw Error(Errc::kInvalidInput, "inconsistent k / kb_ceil");
  }
  if (samples == 0) throw Error(Errc::kInvalidInput, "sample count must be positive");
  if (exploration_budget == 0) throw Error(Errc::kInvalidInput, "budget must be positive");
  LocalParams{epsilon, path_cap, radius}.validate();
}

std::size_t sample_count(std::size_t n, double epsilon) {
  if (n <= 1) return 1;
  const double r = std::ceil(24.0 / (epsilon * epsilon) * std::log(static_cast<double>(n)));
  return std::clamp<std::size_t>(static_cast<std::size_t>(r), 1, n);
}

EstimatorConfig make_estimator_config(std::size_t n, double epsilon,
                                      std::uint32_t k_override, std::uint64_t seed) {
  const StreamParams sp = StreamParams::make(epsilon, k_override);
  const LocalParams lp = LocalParams::make(epsilon);
  EstimatorConfig cfg;
  cfg.epsilon = epsilon;
  cfg.k = sp.k;
  cfg.kb_ceil = sp.kb_ceil;
  cfg.path_cap = lp.path_cap;
  cfg.radius = lp.radius;
  cfg.samples = sample_count(n, epsilon);
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

double estimate_from_count(std::size_t n, std::size_t x, std::size_t r,
                           double epsilon, double* raw) {
  const double nn = static_cast<double>(n);
  const double value = nn * static_cast<double>(x) / (2.0 * static_cast<double>(r)) -
                       epsilon * nn / 2.0;
  if (raw) *raw = value;
  return std::clamp(value, 0.0, nn / 2.0);
}

Estimate query(const Graph& g, const DynamicMaximalMatching& state,
               const EstimatorConfig& cfg, std::uint64_t epoch) {
  cfg.validate();
  const std::size_t n = g.num_vertices();
  Estimate est;
  est.r = cfg.samples;
  if (n == 0) return est;

  RgmmOracle oracle(g, state.matching(),
                    {cfg.k, cfg.kb_ceil, derive_seed(cfg.seed, epoch, 1),
                     cfg.exploration_budget});
  LocalMatcher local(oracle, {cfg.epsilon, cfg.path_cap, cfg.radius}, cfg.ball_mode);

  std::mt19937_64 rng(derive_seed(cfg.seed, epoch, 2));
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  est.samples.reserve(est.r);
  for (std::size_t i = 0; i < est.r; ++i) {
    const VertexId v = pick(rng);
    bool matched = false;
    try {
      matched = local.matched_status(v);
    } catch (const Error& e) {
      if (e.code() != Errc::kBudgetExceeded) throw;
      ++est.unknown;
    }
    est.samples.emplace_back(v, matched);
    if (matched) ++est.x;
  }
  est.explored_edges = oracle.stats().explored();
  est.mu_tilde = estimate_from_count(n, est.x, est.r, cfg.epsilon, &est.mu_tilde_raw);
  return est;
}

std::vector<EstimateRow> run_fully_dynamic(const UpdateStream& stream,
                                           const EstimatorConfig& cfg,
                                           const DynamicRunOptions& opts) {
  cfg.validate();
  Graph g(stream.n);
  DynamicMaximalMatching state(stream.n);
  std::vector<EstimateRow> rows;
  rows.reserve(stream.events.size());

  std::optional<Estimate> last;
  std::size_t since = 0;
  std::uint64_t epoch = 0;
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const UpdateEvent& ev = stream.events[i];
    try {
      state.apply(g, ev);
    } catch (const Error& e) {
      throw Error(e.code(), "event " + std::to_string(i) + ": " + e.what());
    }
    if (ev.kind != EventKind::kQuery) ++since;

    std::size_t interval = cfg.requery_interval;
    if (interval == 0) {
      const double base = last ? last->mu_tilde : 0.0;
      interval = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.epsilon * base));
    }
    EstimateRow row;
    if (!last || since >= interval || ev.kind == EventKind::kQuery) {
      last = query(g, state, cfg, epoch++);
      since = 0;
      row.fresh = true;
    }
    row.event_index = i;
    row.kind = ev.kind;
    row.mu_tilde = last->mu_tilde;
    row.x = last->x;
    row.r = last->r;
    row.explored_edges = last->explored_edges;
    row.staleness = since;
    if (opts.oracle_every != 0 && i % opts.oracle_every == 0) {
      row.mu_exact = maximum_matching(g).size;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dynmatch
