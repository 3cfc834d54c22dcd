#include "dynmatch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dynmatch/exact_matching.hpp"

namespace dynmatch {

namespace {

QSqrt2 one_minus_inv_b() { return {2, -1}; }   // 1 - 1/b = 2 - sqrt2
QSqrt2 inv_b() { return {-1, 1}; }             // 1/b = sqrt2 - 1
QSqrt2 inv_b_plus_1() { return {1, Rational(-1, 2)}; }  // 1/(b+1) = 1 - sqrt2/2
QSqrt2 two_minus_sqrt2() { return {2, -1}; }

QSqrt2 exact_eps(double epsilon) { return QSqrt2(rational_from_double(epsilon)); }

}  // namespace

OptSplit OptSplit::make(const Matching& m, Matching m_star) {
  OptSplit s;
  for (const Edge& e : m_star.edges()) {
    const int inside = int(m.is_matched(e.u)) + int(m.is_matched(e.v));
    if (inside == 1) s.m1.push_back(e);
    else if (inside == 2) s.m2.push_back(e);
    else s.uncovered.push_back(e);
  }
  s.m_star = std::move(m_star);
  return s;
}

bool OptSplit::in_m1(Edge e) const {
  return std::binary_search(m1.begin(), m1.end(), make_edge(e.u, e.v));
}

FractionalMatching build_fractional(const Matching& m, const BMatching& b,
                                    const OptSplit& split, const StreamParams& p) {
  if (!b.respects_capacities()) {
    throw Error(Errc::kInvalidInput, "b-matching violates its capacities");
  }
  const Rational D(p.kb_ceil);
  FractionalMatching x(m.num_vertices());
  for (const Edge& e : m.edges()) x.set(e, one_minus_inv_b());
  for (const auto& [e, count] : b.multiplicities()) {
    if (count != 1) throw Error(Errc::kInvalidInput, "two-pass B must have distinct edges");
    if (m.is_matched(e.u) == m.is_matched(e.v)) {
      throw Error(Errc::kInvalidInput, "B edge outside G[V(M), V \\ V(M)]");
    }
    if (!split.in_m1(e)) {
      x.set(e, QSqrt2(1 / D));
      continue;
    }
    const VertexId u = m.is_matched(e.u) ? e.u : e.v;
    const VertexId v = e.other(u);
    // Residual capacities with (u, v) itself removed.
    const std::int64_t res_u = std::int64_t(p.k) - (std::int64_t(b.degree(u)) - 1);
    const std::int64_t res_v = std::int64_t(p.kb_ceil) - (std::int64_t(b.degree(v)) - 1);
    const std::int64_t t = std::min(res_u, res_v);
    x.set(e, QSqrt2(Rational(t) / D));
  }
  return x;
}

FractionalMatching build_fractional_dynamic(const Matching& m, const BMatching& b,
                                            const OptSplit& split,
                                            const StreamParams& p) {
  if (!b.respects_capacities()) {
    throw Error(Errc::kInvalidInput, "b-matching violates its capacities");
  }
  const Rational D(p.kb_ceil);
  const Rational eps = rational_from_double(p.epsilon);
  const Rational light_cap = eps * eps * eps * D;
  FractionalMatching x(m.num_vertices());
  for (const Edge& e : m.edges()) x.set(e, one_minus_inv_b());

  // Sum of t over B \ M1* at every vertex.
  std::vector<Rational> light_load(m.num_vertices());
  for (const auto& [e, count] : b.multiplicities()) {
    if (split.in_m1(e)) continue;
    const Rational t = std::min(light_cap, Rational(count));
    light_load[e.u] += t;
    light_load[e.v] += t;
    x.set(e, QSqrt2(t / D));
  }
  for (const auto& [e, count] : b.multiplicities()) {
    if (!split.in_m1(e)) continue;
    const VertexId u = m.is_matched(e.u) ? e.u : e.v;
    const VertexId v = e.other(u);
    const Rational t = std::min(Rational(Rational(p.k) - light_load[u]),
                                Rational(D - light_load[v]));
    x.set(e, QSqrt2(t / D));
  }
  return x;
}

namespace {

struct SupportGraph {
  std::vector<std::vector<std::pair<VertexId, double>>> adj;
  std::vector<double> slack;  // 1 - vertex sum
};

SupportGraph make_support(const FractionalMatching& x) {
  SupportGraph s;
  const std::size_t n = x.num_vertices();
  s.adj.resize(n);
  s.slack.assign(n, 1.0);
  for (const auto& [e, w] : x.weights()) {
    const double d = w.to_double();
    s.adj[e.u].emplace_back(e.v, d);
    s.adj[e.v].emplace_back(e.u, d);
    s.slack[e.u] -= d;
    s.slack[e.v] -= d;
  }
  for (auto& a : s.adj) std::sort(a.begin(), a.end());
  return s;
}

constexpr double kPruneMargin = 1e-9;

class BlossomChecker {
 public:
  BlossomChecker(const FractionalMatching& x, double epsilon, std::size_t max_size,
                 const BlossomOptions& opts, BlossomReport& report)
      : x_(x),
        support_(make_support(x)),
        scale_(QSqrt2(1) - exact_eps(epsilon)),
        scale_d_(1.0 - epsilon),
        max_size_(max_size),
        opts_(opts),
        report_(report),
        in_set_(x.num_vertices(), false),
        nbr_count_(x.num_vertices(), 0),
        rng_(opts.seed) {}

  void run() {
    const std::size_t n = x_.num_vertices();
    std::vector<int> comp(n, -1);
    for (VertexId s = 0; s < n; ++s) {
      if (comp[s] != -1 || support_.adj[s].empty()) continue;
      std::vector<VertexId> members{s};
      comp[s] = static_cast<int>(report_.components);
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (const auto& [w, _] : support_.adj[members[i]]) {
          if (comp[w] == -1) {
            comp[w] = comp[s];
            members.push_back(w);
          }
        }
      }
      ++report_.components;
      std::sort(members.begin(), members.end());
      if (max_size_ < 3) {
        ++report_.exhaustive_components;
        continue;
      }
      if (enumerate_component(members)) {
        ++report_.exhaustive_components;
      } else {
        ++report_.sampled_components;
        sample_component(members);
      }
    }
  }

 private:
  struct BudgetHit {};

  bool enumerate_component(const std::vector<VertexId>& members) {
    visited_ = 0;
    try {
      for (VertexId root : members) {
        std::vector<VertexId> set{root};
        add(root);
        std::vector<VertexId> ext;
        for (const auto& [w, _] : support_.adj[root]) {
          if (w > root) ext.push_back(w);
        }
        extend(set, std::move(ext), root, 0.0, std::max(0.0, support_.slack[root]));
        remove(root);
      }
    } catch (const BudgetHit&) {
      std::fill(in_set_.begin(), in_set_.end(), false);
      std::fill(nbr_count_.begin(), nbr_count_.end(), 0);
      return false;
    }
    return true;
  }

  void add(VertexId w) {
    in_set_[w] = true;
    for (const auto& [u, _] : support_.adj[w]) ++nbr_count_[u];
  }
  void remove(VertexId w) {
    in_set_[w] = false;
    for (const auto& [u, _] : support_.adj[w]) --nbr_count_[u];
  }

  // Connected-set enumeration (each connected set containing `root` as its
  // smallest vertex is produced once).
  void extend(std::vector<VertexId>& set, std::vector<VertexId> ext, VertexId root,
              double weight, double deficit) {
    if (++visited_ > opts_.enumeration_budget) throw BudgetHit{};
    visit(set, weight);
    if (set.size() >= max_size_) return;
    while (!ext.empty()) {
      const VertexId w = ext.back();
      ext.pop_back();
      const double d2 = deficit + std::max(0.0, support_.slack[w]);
      // Sum over S of (1 - y_v) >= 1 forces 2 x(S) <= |S| - 1.
      if (d2 >= 1.0 + kPruneMargin) continue;
      double gain = 0.0;
      for (const auto& [u, xw] : support_.adj[w]) {
        if (in_set_[u]) gain += xw;
      }
      std::vector<VertexId> ext2 = ext;
      for (const auto& [u, _] : support_.adj[w]) {
        if (u > root && !in_set_[u] && nbr_count_[u] == 0) ext2.push_back(u);
      }
      set.push_back(w);
      add(w);
      extend(set, std::move(ext2), root, weight + gain, d2);
      remove(w);
      set.pop_back();
    }
  }

  void visit(const std::vector<VertexId>& set, double weight) {
    if (set.size() < 3 || set.size() % 2 == 0) return;
    ++report_.sets_checked;
    const std::size_t bound = set.size() / 2;
    if (scale_d_ * weight < static_cast<double>(bound) - kPruneMargin) return;
    const QSqrt2 exact = x_.of_set(set) * scale_;
    if (exact > QSqrt2(static_cast<std::int64_t>(bound))) {
      ++report_.violation_count;
      if (report_.violations.size() < opts_.max_reported) {
        std::vector<VertexId> sorted = set;
        std::sort(sorted.begin(), sorted.end());
        report_.violations.push_back({std::move(sorted), exact, bound});
      }
    }
  }

  double weight_of(const std::vector<VertexId>& set) {
    double w = 0.0;
    for (VertexId v : set) in_set_[v] = true;
    for (VertexId v : set) {
      for (const auto& [u, xw] : support_.adj[v]) {
        if (v < u && in_set_[u]) w += xw;
      }
    }
    for (VertexId v : set) in_set_[v] = false;
    return w;
  }

  void sample_component(const std::vector<VertexId>& members) {
    // Short odd cycles through each vertex as the smallest member.
    std::uint64_t cycle_budget = opts_.enumeration_budget;
    std::vector<VertexId> path;
    for (VertexId root : members) {
      path.assign(1, root);
      in_set_[root] = true;
      cycles_from(root, root, path, cycle_budget);
      in_set_[root] = false;
      if (cycle_budget == 0) break;
    }
    // Random connected odd sets.
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    const std::size_t max_odd = max_size_ % 2 == 1 ? max_size_ : max_size_ - 1;
    std::uniform_int_distribution<std::size_t> half(1, (max_odd - 1) / 2);
    for (std::size_t i = 0; i < opts_.fallback_samples; ++i) {
      const std::size_t target = 2 * half(rng_) + 1;
      std::vector<VertexId> set{members[pick(rng_)]};
      std::vector<VertexId> frontier;
      in_set_[set[0]] = true;
      for (const auto& [u, _] : support_.adj[set[0]]) frontier.push_back(u);
      while (set.size() < target && !frontier.empty()) {
        std::uniform_int_distribution<std::size_t> fp(0, frontier.size() - 1);
        const std::size_t j = fp(rng_);
        const VertexId w = frontier[j];
        frontier[j] = frontier.back();
        frontier.pop_back();
        if (in_set_[w]) continue;
        in_set_[w] = true;
        set.push_back(w);
        for (const auto& [u, _] : support_.adj[w]) {
          if (!in_set_[u]) frontier.push_back(u);
        }
      }
      for (VertexId v : set) in_set_[v] = false;
      if (set.size() % 2 == 1) visit(set, weight_of(set));
    }
  }

  void cycles_from(VertexId root, VertexId at, std::vector<VertexId>& path,
                   std::uint64_t& budget) {
    if (budget == 0) return;
    --budget;
    for (const auto& [w, _] : support_.adj[at]) {
      if (w == root && path.size() >= 3 && path.size() % 2 == 1) {
        visit(path, weight_of(path));
        continue;
      }
      if (w <= root || in_set_[w] || path.size() >= max_size_) continue;
      in_set_[w] = true;
      path.push_back(w);
      cycles_from(root, w, path, budget);
      path.pop_back();
      in_set_[w] = false;
    }
  }

  const FractionalMatching& x_;
  SupportGraph support_;
  QSqrt2 scale_;
  double scale_d_;
  std::size_t max_size_;
  const BlossomOptions& opts_;
  BlossomReport& report_;
  std::vector<bool> in_set_;
  std::vector<std::uint32_t> nbr_count_;
  std::uint64_t visited_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace

BlossomReport check_blossom(const FractionalMatching& x, double epsilon,
                            std::size_t size_cap, const BlossomOptions& opts) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  // Largest m with m < 1/eps, i.e. m * a < c for eps = a / c.
  const Rational eps = rational_from_double(epsilon);
  const BigInt a = numerator(eps);
  const BigInt c = denominator(eps);
  BigInt m_eps = (c + a - 1) / a - 1;
  const std::size_t by_eps =
      m_eps > BigInt(1u << 30) ? (1u << 30) : m_eps.convert_to<std::size_t>();
  BlossomReport report;
  report.max_set_size = std::min(by_eps, size_cap == 0 ? 0 : size_cap - 1);
  BlossomChecker checker(x, epsilon, report.max_set_size, opts, report);
  checker.run();
  return report;
}

bool ClaimsReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ClaimCheck& c) { return c.pass || !c.binding; });
}

const ClaimCheck* ClaimsReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ClaimsReport check_claims(const FractionalMatching& x, const Matching& m,
                          const BMatching& b, const OptSplit& split, double epsilon,
                          std::optional<std::size_t> final_size, WitnessKind kind,
                          std::optional<StreamParams> params) {
  ClaimsReport r;
  const QSqrt2 eps = exact_eps(epsilon);
  const QSqrt2 one(1);
  auto add = [&](std::string name, QSqrt2 lhs, QSqrt2 rhs, bool binding = true) {
    const bool pass = lhs >= rhs;
    r.checks.push_back({std::move(name), std::move(lhs), std::move(rhs), pass, binding});
  };

  // Vertex constraints: reported as (1 - max vertex sum) >= 0.
  QSqrt2 worst;
  {
    std::vector<QSqrt2> sums(x.num_vertices());
    for (const auto& [e, w] : x.weights()) {
      sums[e.u] += w;
      sums[e.v] += w;
    }
    for (const auto& s : sums) {
      if (s > worst) worst = s;
    }
  }
  add("vertex_constraints", one - worst, QSqrt2(0));
  add("opt_covered_by_vm", QSqrt2(0), QSqrt2(static_cast<std::int64_t>(split.uncovered.size())));

  QSqrt2 x_m;
  for (const Edge& e : m.edges()) x_m += x.value(e);
  QSqrt2 x_b;
  for (const auto& [e, count] : b.multiplicities()) x_b += x.value(e);
  const QSqrt2 m1(static_cast<std::int64_t>(split.m1.size()));
  const QSqrt2 m2(static_cast<std::int64_t>(split.m2.size()));
  const QSqrt2 mu(static_cast<std::int64_t>(split.m_star.size()));

  add("maximal_share", x_m, one_minus_inv_b() * (m2 + QSqrt2(Rational(1, 2)) * m1));
  if (kind == WitnessKind::kTwoPass) {
    add("bmatching_share", x_b, (one - eps) * inv_b_plus_1() * m1);
    add("fractional_total", x.total(), (one - eps) * two_minus_sqrt2() * mu);
  } else {
    const QSqrt2 four_eps = QSqrt2(4) * eps;
    add("bmatching_share", x_b, (one - four_eps) * inv_b_plus_1() * m1, false);
    add("fractional_total", x.total(), (one - four_eps) * two_minus_sqrt2() * mu, false);
  }
  if (final_size) {
    const QSqrt2 out(static_cast<std::int64_t>(*final_size));
    add("integral_from_fractional", out, (one - eps) * (one - eps) * x.total(),
        kind == WitnessKind::kTwoPass);
    if (kind == WitnessKind::kTwoPass) {
      add("end_to_end", out, (one - eps) * (one - eps) * (one - eps) * two_minus_sqrt2() * mu);
    }
  }

  // Per-class weight caps.
  QSqrt2 max_m, max_heavy, max_light;
  for (const auto& [e, w] : x.weights()) {
    if (m.contains(e.u, e.v)) {
      if (w > max_m) max_m = w;
    } else if (split.in_m1(e)) {
      if (w > max_heavy) max_heavy = w;
    } else if (w > max_light) {
      max_light = w;
    }
  }
  add("cap_on_m", one_minus_inv_b(), max_m);
  add("cap_on_b_and_m1", inv_b(), max_heavy);
  if (kind == WitnessKind::kDynamic) {
    add("cap_on_b_minus_m1", eps * eps * eps, max_light);
  } else if (params) {
    add("cap_on_b_minus_m1", QSqrt2(Rational(1, params->kb_ceil)), max_light);
  }
  return r;
}

SaturationResult saturation_diagnostic(const BMatching& b, const OptSplit& split,
                                       const Matching& m, const StreamParams& p) {
  SaturationResult r;
  const Rational eps = rational_from_double(p.epsilon);
  const Rational cap_r = eps * eps * eps * Rational(p.kb_ceil);
  const auto per_edge_cap = static_cast<std::uint64_t>(
      (numerator(cap_r) / denominator(cap_r)).convert_to<std::uint64_t>());
  std::vector<std::uint64_t> capped(b.num_vertices(), 0);
  for (const auto& [e, count] : b.multiplicities()) {
    const std::uint64_t c = std::min<std::uint64_t>(count, per_edge_cap);
    capped[e.u] += c;
    capped[e.v] += c;
  }
  auto need = [&](VertexId u) {
    const Rational cap(m.is_matched(u) ? p.k : p.kb_ceil);
    const Rational want = (1 - 2 * eps) * cap;
    BigInt q = numerator(want) / denominator(want);
    if (Rational(q) < want) q += 1;
    return q.convert_to<std::int64_t>();
  };
  for (const Edge& e : split.m1) {
    ++r.edges;
    if (b.multiplicity(e) > 0) {
      ++r.in_b;
    } else if (static_cast<std::int64_t>(capped[e.u]) >= need(e.u) ||
               static_cast<std::int64_t>(capped[e.v]) >= need(e.v)) {
      ++r.saturated;
    } else {
      ++r.neither;
    }
  }
  return r;
}

VerifyRun verify_two_pass(std::size_t n, std::span<const Edge> stream,
                          const StreamParams& p, std::size_t size_cap,
                          const BlossomOptions& opts) {
  VerifyRun run;
  run.two_pass = run_two_pass(n, stream, p);
  const MatchingResult opt = maximum_matching(n, stream);
  run.mu = opt.size;
  run.split = OptSplit::make(run.two_pass.first_pass, opt.matching);
  run.x = build_fractional(run.two_pass.first_pass, run.two_pass.b, run.split, p);
  run.claims = check_claims(run.x, run.two_pass.first_pass, run.two_pass.b, run.split,
                            p.epsilon, run.two_pass.output.size, WitnessKind::kTwoPass, p);
  run.blossom = check_blossom(run.x, p.epsilon, size_cap, opts);
  return run;
}

}  // namespace dynmatch
