#include "netcoord/experiment.hpp"

#include <atomic>
#include <chrono>
#include <ostream>
#include <thread>

#include "netcoord/errors.hpp"
#include "netcoord/json_io.hpp"
#include "netcoord/rng.hpp"

namespace netcoord {

void ExperimentConfig::validate() const {
  if (n_values.empty() || k_values.empty()) throw InvalidInput("empty n/k range");
  if (rules.empty()) throw InvalidInput("no pivot rules configured");
  if (trials < 1) throw InvalidInput("trials must be >= 1");
  if (workers < 1) throw InvalidInput("workers must be >= 1");
  for (int n : n_values)
    if (n < 1) throw InvalidInput("n must be >= 1");
  for (int k : k_values)
    if (k < 1) throw InvalidInput("k must be >= 1");
  for (const auto& rule : rules)
    if (rule.kind == PivotKind::kAdversarialScript)
      throw InvalidInput("experiments use first/best/random rules");
  spec.validate();
  if (topology == TopologyKind::kUserFile && game_file.empty())
    throw InvalidInput("user-file topology needs a game file");
}

namespace {

std::string topology_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kComplete: return "complete";
    case TopologyKind::kErdosRenyi: return "erdos_renyi";
    case TopologyKind::kPath: return "path";
    case TopologyKind::kUserFile: return "file";
  }
  return "?";
}

TopologyKind topology_from_name(const std::string& name) {
  if (name == "complete") return TopologyKind::kComplete;
  if (name == "erdos_renyi") return TopologyKind::kErdosRenyi;
  if (name == "path") return TopologyKind::kPath;
  if (name == "file") return TopologyKind::kUserFile;
  throw InvalidInput("unknown topology: " + name);
}

struct Cell {
  int n;
  int k;
  PivotRule rule;
};

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  config.topology = topology_from_name(j.at("topology").get<std::string>());
  if (j.contains("er_p")) {
    const auto& p = j.at("er_p");
    config.er_p = rat(p.at(0).get<long>(), p.at(1).get<long>());
  }
  if (j.contains("file")) config.game_file = j.at("file").get<std::string>();
  config.n_values = j.at("n").get<std::vector<int>>();
  config.k_values = j.at("k").get<std::vector<int>>();
  config.spec = spec_from_json(j.at("spec"));
  config.rules.clear();
  for (const auto& name : j.at("rules"))
    config.rules.push_back(pivot_rule_from_name(name.get<std::string>()));
  config.trials = j.at("trials").get<int>();
  config.base_seed = j.value("base_seed", std::uint64_t{0});
  config.step_cap = j.value("step_cap", std::uint64_t{10000000});
  config.workers = j.value("workers", 1);
  config.validate();
  return config;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& config) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& rule : config.rules) rules.push_back(rule.name());
  nlohmann::json j{{"topology", topology_name(config.topology)},
                   {"n", config.n_values},
                   {"k", config.k_values},
                   {"spec", spec_to_json(config.spec)},
                   {"rules", std::move(rules)},
                   {"trials", config.trials},
                   {"base_seed", config.base_seed},
                   {"step_cap", config.step_cap},
                   {"workers", config.workers}};
  if (config.topology == TopologyKind::kErdosRenyi)
    j["er_p"] = {rat_num_i64(config.er_p), rat_den_i64(config.er_p)};
  if (config.topology == TopologyKind::kUserFile) j["file"] = config.game_file;
  return j;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  // wall time never enters the hash; identical configs hash identically
  nlohmann::json j = experiment_config_to_json(config);
  j.erase("workers");
  return hash_str(j.dump());
}

std::vector<TrialRow> run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::shared_ptr<const GameInstance> file_game;
  if (config.topology == TopologyKind::kUserFile)
    file_game = std::make_shared<GameInstance>(
        game_from_json(load_json_file(config.game_file)));

  std::vector<Cell> cells;
  for (int n : config.n_values)
    for (int k : config.k_values)
      for (const auto& rule : config.rules) cells.push_back({n, k, rule});

  const std::size_t total = cells.size() * static_cast<std::size_t>(config.trials);
  std::vector<TrialRow> rows(total);

  auto run_one = [&](std::size_t flat) {
    const std::size_t cell_idx = flat / config.trials;
    const std::size_t trial_idx = flat % config.trials;
    const Cell& cell = cells[cell_idx];
    const std::uint64_t seed =
        config.base_seed ^ hash_combine(mix64(cell_idx), trial_idx);

    const auto started = std::chrono::steady_clock::now();

    std::shared_ptr<const GameInstance> game;
    int n = cell.n, k = cell.k;
    if (config.topology == TopologyKind::kUserFile) {
      game = file_game;
      n = game->player_count();
      k = game->strategy_count();
    } else {
      GraphTopology graph;
      switch (config.topology) {
        case TopologyKind::kComplete: graph = complete_graph(cell.n); break;
        case TopologyKind::kPath: graph = path_graph(cell.n); break;
        case TopologyKind::kErdosRenyi:
          graph = erdos_renyi(cell.n, config.er_p,
                              hash_combine(seed, hash_str("topology")));
          break;
        case TopologyKind::kUserFile: break;
      }
      game = std::make_shared<GameInstance>(
          sample_instance(graph, cell.k, config.spec, seed));
    }

    // initial profile: all players on strategy 1
    const StrategyProfile initial(static_cast<std::size_t>(n), 1);
    const BRTrace trace =
        run_bra(game, initial, cell.rule, config.step_cap, seed);

    TrialRow row;
    row.seed = seed;
    row.n = n;
    row.k = k;
    row.phi = config.spec.phi;
    row.topology = topology_name(config.topology);
    row.rule = cell.rule.name();
    row.steps = trace.length();
    row.converged = trace.outcome == RunOutcome::kConvergedToPne;
    row.total_gain = trace.length() == 0
                         ? rat(0)
                         : potential(*game, trace.profiles.back()) -
                               potential(*game, trace.initial);
    row.min_step_gain = trace.length() == 0 ? rat(0) : min_improvement(trace, 1);
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    rows[flat] = std::move(row);
  };

  if (config.workers == 1) {
    for (std::size_t flat = 0; flat < total; ++flat) run_one(flat);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(config.workers, total);
    for (int w = 0; w < count; ++w)
      pool.emplace_back([&] {
        for (std::size_t flat = next.fetch_add(1); flat < total;
             flat = next.fetch_add(1))
          run_one(flat);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<TrialRow>& rows) {
  out << "# netcoordlab " << kToolVersion << "\n";
  out << "# config_hash=" << config_hash(config) << "\n";
  out << "# base_seed=" << config.base_seed << "\n";
  out << "# rng=" << kRngName << "\n";
  out << "seed,n,k,phi,topology,rule,steps,converged,total_gain,min_step_gain,"
         "wall_ms\n";
  for (const auto& row : rows) {
    out << row.seed << "," << row.n << "," << row.k << ","
        << rat_to_string(row.phi) << "," << row.topology << "," << row.rule
        << "," << row.steps << "," << (row.converged ? 1 : 0) << ","
        << rat_to_string(row.total_gain) << ","
        << rat_to_string(row.min_step_gain) << "," << row.wall_ms << "\n";
  }
}

}  // namespace netcoord
