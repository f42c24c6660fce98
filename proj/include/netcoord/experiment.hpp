#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "netcoord/dynamics.hpp"
#include "netcoord/smoothing.hpp"

namespace netcoord {

inline constexpr const char* kToolVersion = "0.1.0";

enum class TopologyKind { kComplete, kErdosRenyi, kPath, kUserFile };

// A trial matrix: (topology, n, k, rule) cells times `trials` seeded runs.
struct ExperimentConfig {
  TopologyKind topology = TopologyKind::kComplete;
  Rational er_p = rat(1, 2);      // kErdosRenyi only
  std::string game_file;          // kUserFile only
  std::vector<int> n_values{4};
  std::vector<int> k_values{2};
  PerturbationSpec spec;
  std::vector<PivotRule> rules{PivotRule::first()};
  int trials = 1;
  std::uint64_t base_seed = 0;
  std::uint64_t step_cap = 10000000;
  int workers = 1;

  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

struct TrialRow {
  std::uint64_t seed = 0;
  int n = 0;
  int k = 0;
  Rational phi;
  std::string topology;
  std::string rule;
  std::uint64_t steps = 0;
  bool converged = false;
  Rational total_gain;
  Rational min_step_gain;  // 0/1 when the trace has no steps
  double wall_ms = 0.0;
};

// Runs every (cell, trial) — concurrently up to config.workers — and returns
// rows ordered by (cell, trial) regardless of completion order.
std::vector<TrialRow> run_experiment(const ExperimentConfig& config);

// RFC-4180-style CSV with `#` metadata lines (tool version, config hash, base
// seed, rng) before the header row. Identical configs produce identical
// output except the wall_ms column.
void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<TrialRow>& rows);

std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace netcoord
