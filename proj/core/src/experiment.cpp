#include "dynmatch/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dynmatch/error.hpp"
#include "dynmatch/estimator.hpp"
#include "dynmatch/generators.hpp"
#include "dynmatch/streaming.hpp"
#include "dynmatch/verify.hpp"

namespace dynmatch {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_line(std::size_t line, const std::string& msg) {
  throw Error(Errc::kParse, "config line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(const std::string& v, std::size_t line) {
  std::istringstream is(v);
  T out{};
  is >> out;
  if (!is || !is.eof()) bad_line(line, "bad number '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_line(line, "bad boolean '" + v + "'");
}

const char* suite_name(Suite s) { return s == Suite::kStreaming ? "streaming" : "dynamic"; }

UpdateStream instance_stream(const std::string& instance, std::uint64_t seed) {
  if (!is_gen_spec(instance)) return read_stream_file(instance);
  GenSpec spec = GenSpec::parse(instance);
  spec.seed = seed;
  return generate(spec);
}

std::optional<double> ratio_of(double value, std::optional<std::size_t> mu) {
  if (!mu || *mu == 0) return std::nullopt;
  return value / static_cast<double>(*mu);
}

RunRecord run_streaming(const ExperimentConfig& cfg, const std::string& instance,
                        std::uint64_t seed) {
  RunRecord rec;
  rec.instance = instance;
  rec.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  const UpdateStream stream = instance_stream(instance, seed);
  const std::vector<Edge> edges = final_edge_order(stream);
  const StreamParams p = StreamParams::make(cfg.epsilon, cfg.k);
  rec.n = stream.n;
  rec.events = stream.events.size();
  rec.k = p.k;
  rec.kb_ceil = p.kb_ceil;

  Checkpoint cp;
  cp.event_index = stream.events.empty() ? 0 : stream.events.size() - 1;
  if (cfg.verify) {
    const VerifyRun v = verify_two_pass(stream.n, edges, p);
    cp.value = static_cast<double>(v.two_pass.output.size);
    cp.explored_edges = v.two_pass.stored_edges;
    cp.mu_exact = v.mu;
    rec.verified = v.claims.all_pass() && v.blossom.ok();
  } else {
    const TwoPassResult r = run_two_pass(stream.n, edges, p);
    cp.value = static_cast<double>(r.output.size);
    cp.explored_edges = r.stored_edges;
    if (cfg.oracle) cp.mu_exact = maximum_matching(stream.n, edges).size;
  }
  cp.ratio = ratio_of(cp.value, cp.mu_exact);
  rec.checkpoints.push_back(cp);
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

RunRecord run_dynamic(const ExperimentConfig& cfg, const std::string& instance,
                      std::uint64_t seed) {
  RunRecord rec;
  rec.instance = instance;
  rec.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  const UpdateStream stream = instance_stream(instance, seed);
  EstimatorConfig ec = make_estimator_config(stream.n, cfg.epsilon, cfg.k, seed);
  ec.requery_interval = cfg.requery_interval;
  ec.exploration_budget = cfg.exploration_budget;
  ec.ball_mode = cfg.ball_mode;
  rec.n = stream.n;
  rec.events = stream.events.size();
  rec.k = ec.k;
  rec.kb_ceil = ec.kb_ceil;

  DynamicRunOptions opts;
  opts.oracle_every = cfg.oracle ? cfg.checkpoint_every : 0;
  const auto rows = run_fully_dynamic(stream, ec, opts);
  for (const auto& row : rows) {
    if (row.event_index % cfg.checkpoint_every != 0 && row.event_index + 1 != rows.size()) {
      continue;
    }
    Checkpoint cp;
    cp.event_index = row.event_index;
    cp.value = row.mu_tilde;
    cp.explored_edges = row.explored_edges;
    cp.mu_exact = row.mu_exact;
    if (cfg.oracle && !cp.mu_exact) {
      // Final event off the checkpoint grid.
      UpdateStream prefix{stream.n, {stream.events.begin(), stream.events.end()}};
      cp.mu_exact = maximum_matching(final_graph(prefix)).size;
    }
    cp.ratio = ratio_of(cp.value, cp.mu_exact);
    rec.checkpoints.push_back(cp);
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t line = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) bad_line(line, "expected key = value");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    any = true;
    if (key == "suite") {
      if (value == "streaming") cfg.suite = Suite::kStreaming;
      else if (value == "dynamic") cfg.suite = Suite::kDynamic;
      else bad_line(line, "unknown suite '" + value + "'");
    } else if (key == "instance") {
      cfg.instances.push_back(value);
    } else if (key == "seed_start") {
      cfg.seed_start = parse_number<std::uint64_t>(value, line);
    } else if (key == "seeds") {
      cfg.seeds = parse_number<std::size_t>(value, line);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_number<double>(value, line);
    } else if (key == "k") {
      cfg.k = parse_number<std::uint32_t>(value, line);
    } else if (key == "verify") {
      cfg.verify = parse_bool(value, line);
    } else if (key == "oracle") {
      cfg.oracle = parse_bool(value, line);
    } else if (key == "checkpoint_every") {
      cfg.checkpoint_every = parse_number<std::size_t>(value, line);
    } else if (key == "requery") {
      cfg.requery_interval = parse_number<std::size_t>(value, line);
    } else if (key == "exploration_budget") {
      cfg.exploration_budget = parse_number<std::uint64_t>(value, line);
    } else if (key == "ball_mode") {
      if (value == "component") cfg.ball_mode = BallMode::kComponent;
      else if (value == "radius") cfg.ball_mode = BallMode::kRadius;
      else bad_line(line, "unknown ball_mode '" + value + "'");
    } else if (key == "threads") {
      cfg.threads = parse_number<std::size_t>(value, line);
    } else if (key == "csv") {
      cfg.csv_path = value;
    } else if (key == "json") {
      cfg.json_path = value;
    } else if (key == "summary") {
      cfg.summary_path = value;
    } else {
      bad_line(line, "unknown key '" + key + "'");
    }
  }
  if (!any) throw Error(Errc::kUsage, "empty experiment config");
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kUsage, "cannot open config '" + path + "'");
  return parse(in);
}

void ExperimentConfig::validate() const {
  if (instances.empty()) throw Error(Errc::kUsage, "config names no instance");
  if (seeds == 0) throw Error(Errc::kUsage, "seeds must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(Errc::kUsage, "epsilon must lie in (0, 1)");
  if (checkpoint_every == 0) throw Error(Errc::kUsage, "checkpoint_every must be positive");
  for (const auto& inst : instances) {
    if (is_gen_spec(inst)) GenSpec::parse(inst);
  }
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Job {
    std::string instance;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& inst : cfg.instances) {
    for (std::size_t s = 0; s < cfg.seeds; ++s) jobs.push_back({inst, cfg.seed_start + s});
  }
  std::vector<RunRecord> records(jobs.size());
  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, jobs.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        records[i] = cfg.suite == Suite::kStreaming
                         ? run_streaming(cfg, jobs[i].instance, jobs[i].seed)
                         : run_dynamic(cfg, jobs[i].instance, jobs[i].seed);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return records;
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg,
               const std::vector<RunRecord>& records) {
  out << "suite,instance,seed,n,events,k,kb_ceil,event_index,mu_exact,value,ratio,"
         "explored_edges,verified,wall_ms\n";
  out << std::setprecision(10);
  for (const auto& r : records) {
    for (const auto& cp : r.checkpoints) {
      out << suite_name(cfg.suite) << ",\"" << r.instance << "\"," << r.seed << ',' << r.n
          << ',' << r.events << ',' << r.k << ',' << r.kb_ceil << ',' << cp.event_index << ',';
      if (cp.mu_exact) out << *cp.mu_exact;
      out << ',' << cp.value << ',';
      if (cp.ratio) out << *cp.ratio;
      out << ',' << cp.explored_edges << ',';
      if (r.verified) out << (*r.verified ? "true" : "false");
      out << ',' << r.wall_ms << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  struct Acc {
    std::size_t runs = 0;
    std::size_t with_ratio = 0;
    double min = 0, max = 0, sum = 0;
  };
  std::map<std::string, Acc> by;
  std::vector<std::string> order;
  for (const auto& r : records) {
    auto [it, fresh] = by.try_emplace(r.instance);
    if (fresh) order.push_back(r.instance);
    Acc& a = it->second;
    ++a.runs;
    for (const auto& cp : r.checkpoints) {
      if (!cp.ratio) continue;
      const double v = *cp.ratio;
      a.min = a.with_ratio == 0 ? v : std::min(a.min, v);
      a.max = a.with_ratio == 0 ? v : std::max(a.max, v);
      a.sum += v;
      ++a.with_ratio;
    }
  }
  out << "instance,runs,min_ratio,mean_ratio,max_ratio\n" << std::setprecision(10);
  for (const auto& inst : order) {
    const Acc& a = by[inst];
    out << '"' << inst << "\"," << a.runs << ',';
    if (a.with_ratio > 0) {
      out << a.min << ',' << a.sum / static_cast<double>(a.with_ratio) << ',' << a.max;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

std::string to_json(const ExperimentConfig& cfg, const std::vector<RunRecord>& records,
                    bool with_timing) {
  using nlohmann::json;
  json j;
  j["config"] = {
      {"suite", suite_name(cfg.suite)},
      {"instances", cfg.instances},
      {"seed_start", cfg.seed_start},
      {"seeds", cfg.seeds},
      {"epsilon", cfg.epsilon},
      {"k", cfg.k},
      {"verify", cfg.verify},
      {"oracle", cfg.oracle},
      {"checkpoint_every", cfg.checkpoint_every},
      {"requery", cfg.requery_interval},
      {"exploration_budget", cfg.exploration_budget},
      {"ball_mode", cfg.ball_mode == BallMode::kComponent ? "component" : "radius"},
  };
  json recs = json::array();
  for (const auto& r : records) {
    json jr = {{"instance", r.instance}, {"seed", r.seed},     {"n", r.n},
               {"events", r.events},     {"k", r.k},           {"kb_ceil", r.kb_ceil}};
    if (r.verified) jr["verified"] = *r.verified;
    if (with_timing) jr["wall_ms"] = r.wall_ms;
    json cps = json::array();
    for (const auto& cp : r.checkpoints) {
      json c = {{"event_index", cp.event_index},
                {"value", cp.value},
                {"explored_edges", cp.explored_edges}};
      c["mu_exact"] = cp.mu_exact ? json(*cp.mu_exact) : json(nullptr);
      c["ratio"] = cp.ratio ? json(*cp.ratio) : json(nullptr);
      cps.push_back(std::move(c));
    }
    jr["checkpoints"] = std::move(cps);
    recs.push_back(std::move(jr));
  }
  j["records"] = std::move(recs);
  return j.dump(2);
}

std::vector<RunRecord> run_and_persist(const ExperimentConfig& cfg) {
  auto records = run_experiment(cfg);
  auto open = [](const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::kUsage, "cannot write '" + path + "'");
    return out;
  };
  if (!cfg.csv_path.empty()) {
    auto out = open(cfg.csv_path);
    write_csv(out, cfg, records);
  }
  if (!cfg.summary_path.empty()) {
    auto out = open(cfg.summary_path);
    write_summary_csv(out, records);
  }
  if (!cfg.json_path.empty()) {
    auto out = open(cfg.json_path);
    out << to_json(cfg, records) << '\n';
  }
  return records;
}

}  // namespace dynmatch
