// dynmatch: generate update streams, run the two-pass streaming matcher, the
// fully dynamic estimator and the witness verifier, and drive experiments.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynmatch/error.hpp"
#include "dynmatch/estimator.hpp"
#include "dynmatch/event_stream.hpp"
#include "dynmatch/exact_matching.hpp"
#include "dynmatch/experiment.hpp"
#include "dynmatch/generators.hpp"
#include "dynmatch/streaming.hpp"
#include "dynmatch/verify.hpp"

namespace {

using namespace dynmatch;
using nlohmann::json;

std::uint64_t env_seed() {
  const char* s = std::getenv("DYNMATCH_SEED");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw Error(Errc::kUsage, "DYNMATCH_SEED is not an integer");
  return v;
}

// Writes to `path`, or stdout for "-".
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::kUsage, "cannot write '" + path + "'");
  write(out);
}

json edge_list(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const Edge& e : edges) a.push_back({e.u, e.v});
  return a;
}

json number(const QSqrt2& v) {
  return {{"value", v.to_double()}, {"exact", v.str()}};
}

struct Common {
  std::string input;
  double epsilon = 0.1;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
};

int cmd_gen(const std::string& spec_text, std::optional<std::uint64_t> seed,
            const std::string& out) {
  GenSpec spec = GenSpec::parse(spec_text);
  if (seed) spec.seed = *seed;
  else if (spec_text.find("seed=") == std::string::npos) spec.seed = env_seed();
  const UpdateStream s = generate(spec);
  emit(out, [&](std::ostream& os) {
    os << "# " << spec.str() << '\n';
    write_stream(os, s);
  });
  return 0;
}

int cmd_twopass(const Common& c, bool oracle, const std::string& out) {
  const UpdateStream s = load_input(c.input, c.seed);
  const std::vector<Edge> edges = final_edge_order(s);
  const StreamParams p = StreamParams::make(c.epsilon, c.k);
  const TwoPassResult r = run_two_pass(s.n, edges, p);
  json j;
  j["n"] = s.n;
  j["epsilon"] = p.epsilon;
  j["k"] = p.k;
  j["kb_ceil"] = p.kb_ceil;
  j["stored_edges"] = r.stored_edges;
  j["matching_edges"] = edge_list(r.output.matching.edges());
  j["size"] = r.output.size;
  if (oracle) {
    const std::size_t mu = maximum_matching(s.n, edges).size;
    j["mu_exact"] = mu;
    j["ratio"] = mu == 0 ? json(nullptr) : json(double(r.output.size) / double(mu));
  }
  emit(out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

int cmd_dynamic(const Common& c, std::size_t requery, std::size_t oracle_every,
                std::uint64_t budget, const std::string& mode, const std::string& out) {
  const UpdateStream s = load_input(c.input, c.seed);
  EstimatorConfig cfg = make_estimator_config(s.n, c.epsilon, c.k, c.seed);
  cfg.requery_interval = requery;
  cfg.exploration_budget = budget;
  cfg.ball_mode = mode == "radius" ? BallMode::kRadius : BallMode::kComponent;
  DynamicRunOptions opts;
  opts.oracle_every = oracle_every;
  const auto rows = run_fully_dynamic(s, cfg, opts);
  emit(out, [&](std::ostream& os) {
    os << "event_index,kind,mu_tilde,X,r,explored_edges,staleness,fresh,mu_exact\n";
    os << std::setprecision(10);
    for (const auto& row : rows) {
      os << row.event_index << ',' << kind_symbol(row.kind) << ',' << row.mu_tilde << ','
         << row.x << ',' << row.r << ',' << row.explored_edges << ',' << row.staleness << ','
         << (row.fresh ? 1 : 0) << ',';
      if (row.mu_exact) os << *row.mu_exact;
      os << '\n';
    }
  });
  return 0;
}

int cmd_verify(const Common& c, std::size_t size_cap, const std::string& out) {
  const UpdateStream s = load_input(c.input, c.seed);
  const std::vector<Edge> edges = final_edge_order(s);
  const StreamParams p = StreamParams::make(c.epsilon, c.k);
  BlossomOptions bo;
  bo.seed = c.seed;
  const VerifyRun v = verify_two_pass(s.n, edges, p, size_cap, bo);

  json j;
  j["n"] = s.n;
  j["epsilon"] = p.epsilon;
  j["k"] = p.k;
  j["kb_ceil"] = p.kb_ceil;
  j["mu_exact"] = v.mu;
  j["size"] = v.two_pass.output.size;
  j["m_size"] = v.two_pass.first_pass.size();
  j["b_size"] = v.two_pass.b.distinct_size();
  j["m1_star"] = v.split.m1.size();
  j["m2_star"] = v.split.m2.size();
  j["x_total"] = number(v.x.total());
  json claims = json::array();
  for (const auto& ch : v.claims.checks) {
    claims.push_back({{"name", ch.name},
                      {"lhs", number(ch.lhs)},
                      {"rhs", number(ch.rhs)},
                      {"pass", ch.pass},
                      {"binding", ch.binding}});
  }
  j["claims"] = claims;
  json viol = json::array();
  for (const auto& bv : v.blossom.violations) {
    viol.push_back({{"set", bv.set}, {"value", number(bv.value)}, {"bound", bv.bound}});
  }
  j["blossom"] = {{"max_set_size", v.blossom.max_set_size},
                  {"sets_checked", v.blossom.sets_checked},
                  {"components", v.blossom.components},
                  {"exhaustive", v.blossom.exhaustive()},
                  {"sampled_components", v.blossom.sampled_components},
                  {"violation_count", v.blossom.violation_count},
                  {"violations", viol}};
  const bool ok = v.claims.all_pass() && v.blossom.ok();
  j["ok"] = ok;
  emit(out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return ok ? 0 : 3;
}

int cmd_bench(const std::string& config) {
  const ExperimentConfig cfg = ExperimentConfig::from_file(config);
  const auto records = run_and_persist(cfg);
  if (cfg.summary_path.empty()) write_summary_csv(std::cout, records);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matching-size tools for streaming and fully dynamic graphs"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_opt;
  Common c;
  std::string out = "-";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "Stream file or gen:<family>:<key=value,...>")
        ->required();
    sub->add_option("--epsilon", c.epsilon, "Accuracy parameter in (0, 1)")->required();
    sub->add_option("--k", c.k, "Capacity k on matched vertices (0: ceil(1/(b eps^3)))");
    sub->add_option("--seed", seed_opt, "Seed (default: $DYNMATCH_SEED or 0)");
  };

  auto* gen = app.add_subcommand("gen", "Write a generated update stream");
  std::string spec;
  gen->add_option("spec", spec, "gen:<family>:<key=value,...>")->required();
  gen->add_option("--seed", seed_opt, "Overrides the spec seed");
  gen->add_option("--out", out, "Output path ('-' for stdout)");

  auto* twopass = app.add_subcommand("twopass", "Two-pass streaming matcher");
  add_common(twopass);
  bool no_oracle = false;
  twopass->add_flag("--no-oracle", no_oracle, "Skip the exact maximum matching");
  twopass->add_option("--out", out, "JSON output path ('-' for stdout)");

  auto* dynamic = app.add_subcommand("dynamic", "Fully dynamic size estimator");
  add_common(dynamic);
  std::size_t requery = 0;
  std::size_t oracle_every = 0;
  bool oracle = false;
  std::uint64_t budget = 10'000'000;
  std::string mode = "component";
  dynamic->add_option("--requery", requery, "Updates between queries (0: eps * last estimate)");
  dynamic->add_flag("--oracle", oracle, "Exact maximum matching at checkpoints");
  dynamic->add_option("--oracle-every", oracle_every, "Checkpoint spacing for --oracle")
      ->default_val(1);
  dynamic->add_option("--budget", budget, "Edge visits per query epoch");
  dynamic->add_option("--ball-mode", mode, "component or radius")
      ->check(CLI::IsMember({"component", "radius"}));
  dynamic->add_option("--out", out, "CSV output path ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Check the fractional witness of a two-pass run");
  add_common(verify);
  std::size_t size_cap = 64;
  verify->add_option("--size-cap", size_cap, "Largest odd-set size + 1 to enumerate");
  verify->add_option("--report", out, "JSON report path ('-' for stdout)");

  auto* bench = app.add_subcommand("bench", "Run an experiment config");
  std::string config;
  bench->add_option("--config", config, "key=value experiment file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    c.seed = seed_opt ? *seed_opt : env_seed();
    if (gen->parsed()) return cmd_gen(spec, seed_opt, out);
    if (twopass->parsed()) return cmd_twopass(c, !no_oracle, out);
    if (dynamic->parsed()) {
      return cmd_dynamic(c, requery, oracle ? oracle_every : 0, budget, mode, out);
    }
    if (verify->parsed()) return cmd_verify(c, size_cap, out);
    if (bench->parsed()) return cmd_bench(config);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == Errc::kUsage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
