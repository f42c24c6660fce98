// Command-line front end: generate instances, run dynamics and local search,
// analyze traces, apply the local-max-cut reductions, and drive experiments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "netcoord/congestion.hpp"
#include "netcoord/dynamics.hpp"
#include "netcoord/errors.hpp"
#include "netcoord/experiment.hpp"
#include "netcoord/json_io.hpp"
#include "netcoord/maxcut.hpp"
#include "netcoord/reduction.hpp"
#include "netcoord/rng.hpp"
#include "netcoord/smoothing.hpp"
#include "netcoord/verify.hpp"

namespace {

using namespace netcoord;

void emit(const std::optional<std::string>& out, const json& j) {
  if (out)
    save_json_file(*out, j);
  else
    std::cout << j.dump(2) << "\n";
}

StrategyProfile parse_profile(const std::string& csv) {
  StrategyProfile profile;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma - pos);
    profile.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return profile;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netcoordlab: pure Nash equilibria in network coordination games "
               "under smoothed payoffs"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::uint64_t cap = 1000000;
  int workers = 1;
  app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
  app.add_option("--out", out, "output path (stdout when omitted)");
  app.add_option("--cap", cap, "step cap for search loops")->capture_default_str();
  app.add_option("--workers", workers, "worker threads for experiments")
      ->capture_default_str();
  app.fallthrough();

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a smoothed game instance");
  std::string gen_topology = "complete";
  int gen_n = 4, gen_k = 2;
  std::string gen_phi = "1/2";
  std::string gen_dist = "uniform_full";
  int gen_grid = 30;
  std::string gen_er_p = "1/2";
  std::string gen_base, gen_maxcut, gen_congestion_dims;
  gen->add_option("--topology", gen_topology, "complete|erdos_renyi|path");
  gen->add_option("--n", gen_n, "players");
  gen->add_option("--k", gen_k, "strategies per player");
  gen->add_option("--phi", gen_phi, "density bound, e.g. 1/2");
  gen->add_option("--dist", gen_dist, "uniform_full|uniform_window");
  gen->add_option("--grid-log2", gen_grid, "sample grid resolution exponent");
  gen->add_option("--er-p", gen_er_p, "edge probability for erdos_renyi");
  gen->add_option("--perturb", gen_base, "base game JSON to perturb instead");
  gen->add_option("--from-maxcut", gen_maxcut,
                  "embed a weighted graph (cut JSON) as a 2-strategy game");
  gen->add_option("--congestion", gen_congestion_dims,
                  "sample a congestion game: players,resources,k,ell");

  // --- run-bra ---
  auto* run = app.add_subcommand("run-bra", "run better-response dynamics");
  std::string run_game, run_rule = "first", run_initial;
  run->add_option("--game", run_game, "game JSON")->required();
  run->add_option("--rule", run_rule, "first|best|random");
  run->add_option("--initial", run_initial, "comma-separated start profile");

  // --- analyze ---
  auto* analyze = app.add_subcommand("analyze", "sequence analysis of a trace");
  std::string an_trace;
  std::size_t an_begin = 0;
  std::optional<std::size_t> an_end;
  analyze->add_option("--trace", an_trace, "trace JSON")->required();
  analyze->add_option("--begin", an_begin, "range start (move index)");
  analyze->add_option("--end", an_end, "range end (exclusive)");

  // --- reduce ---
  auto* reduce = app.add_subcommand("reduce", "smoothness-preserving reduction");
  std::string red_game, red_mode = "k2";
  std::string red_out_cut, red_out_artifacts;
  bool red_claim_signs = false;
  reduce->add_option("--game", red_game, "game JSON (payoffs in [-1,1])")
      ->required();
  reduce->add_option("--mode", red_mode, "k2 (2-FlipMaxCut) | 21 (1-FlipMaxCut)");
  reduce->add_option("--out-cut", red_out_cut, "cut instance JSON path")
      ->required();
  reduce->add_option("--out-artifacts", red_out_artifacts, "artifacts JSON path")
      ->required();
  reduce->add_flag("--claim-statement-signs", red_claim_signs,
                   "audit toggle: use the claim statement's sign convention");

  // --- lift ---
  auto* lift = app.add_subcommand("lift", "map a cut back to a strategy profile");
  std::string lift_cut, lift_artifacts;
  lift->add_option("--cut", lift_cut, "cut JSON ({\"s_side\": [...]})")->required();
  lift->add_option("--artifacts", lift_artifacts, "artifacts JSON")->required();

  // --- run-flip ---
  auto* flip = app.add_subcommand("run-flip", "FLIP / 2-FLIP local search");
  std::string flip_cut, flip_rule = "first", flip_initial;
  int flip_d = 1;
  flip->add_option("--cut", flip_cut, "cut instance JSON")->required();
  flip->add_option("--d", flip_d, "flip radius (1 or 2)");
  flip->add_option("--rule", flip_rule, "first|best|random");
  flip->add_option("--initial", flip_initial,
                   "comma-separated s-side vertex ids (default: just s)");

  // --- run-congestion ---
  auto* congest = app.add_subcommand("run-congestion",
                                     "better-response in a congestion game");
  std::string cg_game, cg_rule = "first", cg_initial;
  congest->add_option("--game", cg_game, "congestion game JSON")->required();
  congest->add_option("--rule", cg_rule, "first|best|random");
  congest->add_option("--initial", cg_initial, "comma-separated strategy indices");

  // --- experiment ---
  auto* experiment = app.add_subcommand("experiment", "seeded trial matrix -> CSV");
  std::string exp_config;
  experiment->add_option("--config", exp_config, "experiment config JSON")
      ->required();

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "run the property-check suite");
  std::optional<std::string> verify_config;
  double verify_scale = 0.05;
  verify->add_option("--config", verify_config, "suite config JSON");
  verify->add_option("--scale", verify_scale,
                     "case-count multiplier when no config is given")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!gen_congestion_dims.empty()) {
        int vals[4] = {2, 4, 2, 4};
        std::istringstream ss(gen_congestion_dims);
        std::string tok;
        for (int& v : vals) {
          if (!std::getline(ss, tok, ',')) throw InvalidInput("need players,resources,k,ell");
          v = std::stoi(tok);
        }
        const CongestionGame game =
            sample_congestion_game(vals[0], vals[1], vals[2], vals[3], gen_grid, seed);
        emit(out, congestion_game_to_json(game));
        return 0;
      }
      if (!gen_maxcut.empty()) {
        const CutInstance graph = cut_instance_from_json(load_json_file(gen_maxcut));
        emit(out, game_to_json(from_maxcut(graph)));
        return 0;
      }
      PerturbationSpec spec{rat_from_string(gen_phi),
                            gen_dist == "uniform_window"
                                ? NoiseModel::kUniformWindow
                                : NoiseModel::kUniformFull,
                            gen_grid};
      spec.validate();
      json provenance{{"seed", seed}, {"rng", std::string(kRngName)},
                      {"spec", spec_to_json(spec)}};
      if (!gen_base.empty()) {
        const GameInstance base = game_from_json(load_json_file(gen_base));
        emit(out, game_to_json(perturb_instance(base, spec, seed), provenance));
        return 0;
      }
      GraphTopology topo;
      if (gen_topology == "complete")
        topo = complete_graph(gen_n);
      else if (gen_topology == "path")
        topo = path_graph(gen_n);
      else if (gen_topology == "erdos_renyi")
        topo = erdos_renyi(gen_n, rat_from_string(gen_er_p), seed);
      else
        throw InvalidInput("unknown topology: " + gen_topology);
      emit(out, game_to_json(sample_instance(topo, gen_k, spec, seed), provenance));
      return 0;
    }

    if (*run) {
      auto game = std::make_shared<GameInstance>(
          game_from_json(load_json_file(run_game)));
      const StrategyProfile initial =
          run_initial.empty()
              ? StrategyProfile(static_cast<std::size_t>(game->player_count()), 1)
              : parse_profile(run_initial);
      const BRTrace trace =
          run_bra(game, initial, pivot_rule_from_name(run_rule), cap, seed);
      emit(out, trace_to_json(trace));
      return 0;
    }

    if (*analyze) {
      const BRTrace trace = trace_from_json(load_json_file(an_trace));
      const std::size_t end = an_end.value_or(trace.length());
      emit(out, analysis_report(trace, an_begin, end));
      return 0;
    }

    if (*reduce) {
      auto raw = game_from_json(load_json_file(red_game));
      auto game = std::make_shared<GameInstance>(normalize_payoffs(raw));
      ReductionArtifacts artifacts;
      if (red_mode == "k2") {
        const AuxRandomness aux = sample_aux(game->player_count(),
                                             game->strategy_count(), 30, seed);
        artifacts = reduce_k_to_2flip(game, aux,
                                      red_claim_signs
                                          ? WeightConvention::kClaimStatement
                                          : WeightConvention::kEquationSystem);
      } else if (red_mode == "21") {
        artifacts = reduce_2_to_1flip(
            game, sample_player_weights(game->player_count(), 30, seed));
      } else {
        throw InvalidInput("mode must be k2 or 21");
      }
      save_json_file(red_out_cut, cut_instance_to_json(*artifacts.cut));
      save_json_file(red_out_artifacts, artifacts_to_json(artifacts));
      const SmoothnessCertificate cert = check_weak_smoothness(artifacts);
      std::cout << "reduction written; certificate: "
                << (cert.pass ? "pass" : "FAIL") << " (" << cert.detail << ")\n";
      return cert.pass ? 0 : 1;
    }

    if (*lift) {
      const ReductionArtifacts artifacts =
          artifacts_from_json(load_json_file(lift_artifacts));
      const VertexSet s = cut_from_json(load_json_file(lift_cut),
                                        artifacts.cut->vertex_count());
      const LiftedProfile lifted = map_cut_to_profile(artifacts, s);
      emit(out, json{{"strategies", lifted.profile}, {"valid", lifted.valid}});
      return 0;
    }

    if (*flip) {
      auto inst = std::make_shared<CutInstance>(
          cut_instance_from_json(load_json_file(flip_cut)));
      VertexSet initial(inst->vertex_count(), 0);
      if (!flip_initial.empty()) {
        for (int v : parse_profile(flip_initial)) initial[v] = 1;
      }
      if (inst->terminals()) {
        initial[inst->terminals()->s] = 1;
        initial[inst->terminals()->t] = 0;
      } else if (flip_initial.empty()) {
        initial[0] = 1;  // some non-trivial start
      }
      const FlipTrace trace = run_flip(inst, flip_d, initial,
                                       pivot_rule_from_name(flip_rule), cap, seed);
      emit(out, flip_trace_to_json(trace));
      return 0;
    }

    if (*congest) {
      auto game = std::make_shared<CongestionGame>(
          congestion_game_from_json(load_json_file(cg_game)));
      CongestionProfile initial(game->player_count(), 0);
      if (!cg_initial.empty()) {
        initial = parse_profile(cg_initial);
      }
      const CongestionTrace trace = run_bra_congestion(
          game, initial, pivot_rule_from_name(cg_rule), cap, seed);
      emit(out, congestion_trace_to_json(trace));
      return 0;
    }

    if (*experiment) {
      ExperimentConfig config =
          experiment_config_from_json(load_json_file(exp_config));
      if (workers > 1) config.workers = workers;
      const std::vector<TrialRow> rows = run_experiment(config);
      if (out) {
        std::ofstream os(*out);
        if (!os) throw InvalidInput("cannot write CSV: " + *out);
        write_experiment_csv(os, config, rows);
      } else {
        write_experiment_csv(std::cout, config, rows);
      }
      return 0;
    }

    if (*verify) {
      VerifySuiteConfig config;
      if (verify_config) {
        config = verify_config_from_json(load_json_file(*verify_config));
      } else {
        config.scale = verify_scale;
      }
      const std::vector<CheckResult> results = verify_suite(config);
      if (results.empty()) {
        std::cout << "verify: vacuous pass (zero checks configured)\n";
        return 0;
      }
      bool all_pass = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " ("
                  << r.cases_run << " cases, " << r.failures << " failures, "
                  << r.seconds << "s)";
        if (!r.pass) std::cout << " replay_seed=" << r.replay_seed
                               << " [" << r.detail << "]";
        std::cout << "\n";
        all_pass = all_pass && r.pass;
      }
      if (out) save_json_file(*out, check_results_to_json(results));
      return all_pass ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
