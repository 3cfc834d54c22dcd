#pragma once

// Experiment orchestration: a key=value config names a suite, a list of
// generator specs and a seed range; every (instance, seed) pair runs
// through the streaming or dynamic pipeline and yields one RunRecord.
//
//   suite = streaming            # or dynamic
//   instance = gen:erdos_renyi:n=100,p=0.1
//   instance = gen:triangle_chain:t=30
//   seeds = 200                  # seeds seed_start .. seed_start + seeds - 1
//   epsilon = 0.1
//   k = 0                        # 0 selects ceil(1 / (b eps^3))
//
// Unknown keys are rejected; '#' starts a comment.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/local_matching.hpp"

namespace dynmatch {

enum class Suite { kStreaming, kDynamic };

struct ExperimentConfig {
  Suite suite = Suite::kStreaming;
  std::vector<std::string> instances;
  std::uint64_t seed_start = 1;
  std::size_t seeds = 1;
  double epsilon = 0.1;
  std::uint32_t k = 0;
  /// Run the fractional-witness checks on every streaming instance.
  bool verify = false;
  /// Exact maximum matching at checkpoints.
  bool oracle = true;
  /// Dynamic suite: events between checkpoints.
  std::size_t checkpoint_every = 100;
  std::size_t requery_interval = 0;
  std::uint64_t exploration_budget = 10'000'000;
  BallMode ball_mode = BallMode::kComponent;
  /// 0 uses the hardware concurrency.
  std::size_t threads = 0;
  std::string csv_path;
  std::string json_path;
  std::string summary_path;

  /// Throws Errc::kUsage for an empty config and Errc::kParse for bad lines.
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig from_file(const std::string& path);
  void validate() const;
};

struct Checkpoint {
  std::size_t event_index = 0;
  std::optional<std::size_t> mu_exact;
  /// Output size (streaming) or estimate (dynamic).
  double value = 0.0;
  std::optional<double> ratio;
  std::uint64_t explored_edges = 0;
};

struct RunRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t events = 0;
  std::uint32_t k = 0;
  std::uint32_t kb_ceil = 0;
  std::vector<Checkpoint> checkpoints;
  std::optional<bool> verified;
  double wall_ms = 0.0;
};

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

/// One line per checkpoint.
void write_csv(std::ostream& out, const ExperimentConfig& cfg,
               const std::vector<RunRecord>& records);
/// Per-instance ratio summary: runs, min_ratio, mean_ratio, max_ratio.
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// Config snapshot plus every record.
std::string to_json(const ExperimentConfig& cfg, const std::vector<RunRecord>& records,
                    bool with_timing = true);

/// Runs and writes whichever outputs the config names.
std::vector<RunRecord> run_and_persist(const ExperimentConfig& cfg);

}  // namespace dynmatch
