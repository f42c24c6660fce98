// Python bindings for the main operations: games, dynamics, sequence
// analysis, local-max-cut search, the reductions, and congestion games.
// Exact rationals cross the boundary as fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <string>

#include "netcoord/congestion.hpp"
#include "netcoord/dynamics.hpp"
#include "netcoord/errors.hpp"
#include "netcoord/experiment.hpp"
#include "netcoord/game.hpp"
#include "netcoord/json_io.hpp"
#include "netcoord/maxcut.hpp"
#include "netcoord/reduction.hpp"
#include "netcoord/rng.hpp"
#include "netcoord/sequence.hpp"
#include "netcoord/smoothing.hpp"
#include "netcoord/verify.hpp"

namespace py = pybind11;
using namespace netcoord;

namespace {

py::object to_fraction(const Rational& q) {
  static py::object fraction =
      py::module_::import("fractions").attr("Fraction");
  return fraction(q.get_num().get_str() + "/" + q.get_den().get_str());
}

Rational from_fraction(const py::object& obj) {
  const std::string num = py::str(py::getattr(obj, "numerator", obj));
  const std::string den =
      py::str(py::getattr(obj, "denominator", py::int_(1)));
  return rat_from_string(num) / rat_from_string(den);
}

py::object json_to_py(const json& j) {
  static py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

PerturbationSpec make_spec(const std::string& phi, const std::string& dist,
                           int grid_log2) {
  PerturbationSpec spec{rat_from_string(phi),
                        dist == "uniform_window" ? NoiseModel::kUniformWindow
                                                 : NoiseModel::kUniformFull,
                        grid_log2};
  spec.validate();
  return spec;
}

GraphTopology make_topology(const std::string& kind, int n,
                            const std::string& er_p, std::uint64_t seed) {
  if (kind == "complete") return complete_graph(n);
  if (kind == "path") return path_graph(n);
  if (kind == "erdos_renyi") return erdos_renyi(n, rat_from_string(er_p), seed);
  throw InvalidInput("unknown topology: " + kind);
}

std::vector<Move> moves_from_tuples(
    const std::vector<std::pair<int, int>>& tuples) {
  std::vector<Move> moves;
  moves.reserve(tuples.size());
  for (const auto& [p, s] : tuples) moves.push_back({p, s});
  return moves;
}

}  // namespace

PYBIND11_MODULE(_netcoordlab, m) {
  m.doc() = "Network coordination games: better-response dynamics, smoothed "
            "instances, and local-max-cut reductions";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<ScriptInvalid>(m, "ScriptInvalid", PyExc_RuntimeError);
  py::register_exception<NoCriticalSubsequence>(m, "NoCriticalSubsequence",
                                                PyExc_RuntimeError);

  py::class_<GameInstance, std::shared_ptr<GameInstance>>(m, "GameInstance")
      .def_static("from_json",
                  [](const std::string& text) {
                    return std::make_shared<GameInstance>(
                        game_from_json(json::parse(text)));
                  })
      .def("to_json", [](const GameInstance& g) { return game_to_json(g).dump(); })
      .def_property_readonly("n", &GameInstance::player_count)
      .def_property_readonly("k", &GameInstance::strategy_count)
      .def_property_readonly("edges", [](const GameInstance& g) { return g.edges(); })
      .def("payoff",
           [](const GameInstance& g, int u, int i, int v, int j) {
             return to_fraction(g.payoff_on_edge(u, i, v, j));
           },
           py::arg("u"), py::arg("i"), py::arg("v"), py::arg("j"));

  m.def("sample_instance",
        [](const std::string& topology, int n, int k, const std::string& phi,
           const std::string& distribution, int grid_log2, std::uint64_t seed,
           const std::string& er_p) {
          return std::make_shared<GameInstance>(
              sample_instance(make_topology(topology, n, er_p, seed), k,
                              make_spec(phi, distribution, grid_log2), seed));
        },
        py::arg("topology"), py::arg("n"), py::arg("k"), py::arg("phi") = "1/2",
        py::arg("distribution") = "uniform_full", py::arg("grid_log2") = 30,
        py::arg("seed") = 0, py::arg("er_p") = "1/2");

  m.def("perturb_instance",
        [](const std::shared_ptr<GameInstance>& base, const std::string& phi,
           int grid_log2, std::uint64_t seed) {
          return std::make_shared<GameInstance>(perturb_instance(
              *base, make_spec(phi, "uniform_window", grid_log2), seed));
        },
        py::arg("base"), py::arg("phi"), py::arg("grid_log2") = 30,
        py::arg("seed") = 0);

  m.def("potential", [](const std::shared_ptr<GameInstance>& g,
                        const StrategyProfile& p) {
    return to_fraction(potential(*g, p));
  });
  m.def("player_payoff", [](const std::shared_ptr<GameInstance>& g,
                            const StrategyProfile& p, int u) {
    return to_fraction(player_payoff(*g, p, u));
  });
  m.def("improving_moves", [](const std::shared_ptr<GameInstance>& g,
                              const StrategyProfile& p) {
    py::list out;
    for (const auto& [move, delta] : improving_moves(*g, p))
      out.append(py::make_tuple(py::make_tuple(move.player, move.strategy),
                                to_fraction(delta)));
    return out;
  });
  m.def("is_pne", [](const std::shared_ptr<GameInstance>& g,
                     const StrategyProfile& p) { return is_pne(*g, p); });
  m.def("enumerate_pne",
        [](const std::shared_ptr<GameInstance>& g, std::uint64_t cap) {
          return enumerate_pne(*g, cap);
        },
        py::arg("game"), py::arg("cap") = kDefaultOracleCap);

  py::class_<BRTrace, std::shared_ptr<BRTrace>>(m, "BRTrace")
      .def_property_readonly("moves",
                             [](const BRTrace& t) {
                               py::list out;
                               for (const auto& m_ : t.moves)
                                 out.append(py::make_tuple(m_.player, m_.strategy));
                               return out;
                             })
      .def_property_readonly("profiles",
                             [](const BRTrace& t) { return t.profiles; })
      .def_property_readonly("deltas",
                             [](const BRTrace& t) {
                               py::list out;
                               for (const auto& d : t.deltas)
                                 out.append(to_fraction(d));
                               return out;
                             })
      .def_property_readonly("converged",
                             [](const BRTrace& t) {
                               return t.outcome == RunOutcome::kConvergedToPne;
                             })
      .def_property_readonly("length", &BRTrace::length)
      .def("to_json", [](const BRTrace& t) { return trace_to_json(t).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return std::make_shared<BRTrace>(trace_from_json(json::parse(text)));
      });

  m.def("run_bra",
        [](const std::shared_ptr<GameInstance>& game,
           const StrategyProfile& initial, const std::string& rule,
           std::uint64_t step_cap, std::uint64_t seed,
           const std::optional<std::vector<std::pair<int, int>>>& script) {
          const PivotRule pivot = script
                                      ? PivotRule::adversarial(
                                            moves_from_tuples(*script))
                                      : pivot_rule_from_name(rule);
          return std::make_shared<BRTrace>(
              run_bra(game, initial, pivot, step_cap, seed));
        },
        py::arg("game"), py::arg("initial"), py::arg("rule") = "first",
        py::arg("step_cap") = 1000000, py::arg("seed") = 0,
        py::arg("script") = std::nullopt);

  m.def("replay",
        [](const std::shared_ptr<GameInstance>& game,
           const StrategyProfile& initial,
           const std::vector<std::pair<int, int>>& moves) -> py::object {
          const ReplayResult result = replay(game, initial,
                                             moves_from_tuples(moves));
          if (result.trace)
            return py::cast(std::make_shared<BRTrace>(*result.trace));
          py::dict violation;
          violation["step"] = result.violation->step;
          violation["delta"] = to_fraction(result.violation->delta);
          return violation;
        });

  m.def("min_improvement",
        [](const std::shared_ptr<BRTrace>& trace, std::size_t window) {
          return to_fraction(min_improvement(*trace, window));
        });

  m.def("analyze",
        [](const std::shared_ptr<BRTrace>& trace, std::size_t begin,
           std::optional<std::size_t> end) {
          return json_to_py(
              analysis_report(*trace, begin, end.value_or(trace->length())));
        },
        py::arg("trace"), py::arg("begin") = 0, py::arg("end") = std::nullopt);

  py::class_<CutInstance, std::shared_ptr<CutInstance>>(m, "CutInstance")
      .def_static("from_json",
                  [](const std::string& text) {
                    return std::make_shared<CutInstance>(
                        cut_instance_from_json(json::parse(text)));
                  })
      .def("to_json",
           [](const CutInstance& c) { return cut_instance_to_json(c).dump(); })
      .def("to_dimacs",
           [](const CutInstance& c) { return cut_instance_to_dimacs(c); })
      .def_static("from_dimacs",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return std::make_shared<CutInstance>(
                        cut_instance_from_dimacs(in));
                  })
      .def_property_readonly("vertices", &CutInstance::vertex_count);

  m.def("make_cut_instance",
        [](int vertices,
           const std::vector<std::tuple<int, int, py::object>>& edges,
           const std::optional<std::pair<int, int>>& terminals) {
          std::vector<WeightedEdge> list;
          for (const auto& [u, v, w] : edges)
            list.push_back({u, v, from_fraction(w)});
          std::optional<Terminals> t;
          if (terminals) t = Terminals{terminals->first, terminals->second};
          return std::make_shared<CutInstance>(vertices, std::move(list), t);
        },
        py::arg("vertices"), py::arg("edges"),
        py::arg("terminals") = std::nullopt);

  m.def("cut_value", [](const std::shared_ptr<CutInstance>& inst,
                        const std::vector<int>& s_side) {
    return to_fraction(
        cut_value(*inst, vertex_set_from_ids(inst->vertex_count(), s_side)));
  });
  m.def("improving_flips",
        [](const std::shared_ptr<CutInstance>& inst,
           const std::vector<int>& s_side, int d) {
          py::list out;
          for (const auto& [flip, delta] : improving_flips(
                   *inst, vertex_set_from_ids(inst->vertex_count(), s_side), d))
            out.append(py::make_tuple(flip, to_fraction(delta)));
          return out;
        },
        py::arg("instance"), py::arg("s_side"), py::arg("d") = 1);
  m.def("is_local_opt",
        [](const std::shared_ptr<CutInstance>& inst,
           const std::vector<int>& s_side, int d) {
          return is_local_opt(
              *inst, vertex_set_from_ids(inst->vertex_count(), s_side), d);
        },
        py::arg("instance"), py::arg("s_side"), py::arg("d") = 1);

  py::class_<FlipTrace, std::shared_ptr<FlipTrace>>(m, "FlipTrace")
      .def_property_readonly("flips", [](const FlipTrace& t) { return t.flips; })
      .def_property_readonly("converged",
                             [](const FlipTrace& t) {
                               return t.outcome == RunOutcome::kConvergedToPne;
                             })
      .def_property_readonly("length", &FlipTrace::length)
      .def_property_readonly("final",
                             [](const FlipTrace& t) {
                               return vertex_set_to_ids(t.states.back());
                             })
      .def("to_json",
           [](const FlipTrace& t) { return flip_trace_to_json(t).dump(); });

  m.def("run_flip",
        [](const std::shared_ptr<CutInstance>& inst, int d,
           const std::vector<int>& initial, const std::string& rule,
           std::uint64_t step_cap, std::uint64_t seed) {
          return std::make_shared<FlipTrace>(run_flip(
              inst, d, vertex_set_from_ids(inst->vertex_count(), initial),
              pivot_rule_from_name(rule), step_cap, seed));
        },
        py::arg("instance"), py::arg("d"), py::arg("initial"),
        py::arg("rule") = "first", py::arg("step_cap") = 1000000,
        py::arg("seed") = 0);

  m.def("from_maxcut", [](const std::shared_ptr<CutInstance>& graph) {
    return std::make_shared<GameInstance>(from_maxcut(*graph));
  });

  // --- reductions ---
  py::class_<ReductionArtifacts, std::shared_ptr<ReductionArtifacts>>(
      m, "ReductionArtifacts")
      .def_property_readonly("cut",
                             [](const ReductionArtifacts& a) { return a.cut; })
      .def_property_readonly("game",
                             [](const ReductionArtifacts& a) { return a.game; })
      .def("node_of", &ReductionArtifacts::node_of, py::arg("player"),
           py::arg("strategy"))
      .def("to_json",
           [](const ReductionArtifacts& a) { return artifacts_to_json(a).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return std::make_shared<ReductionArtifacts>(
            artifacts_from_json(json::parse(text)));
      });

  m.def("normalize_payoffs", [](const std::shared_ptr<GameInstance>& g) {
    return std::make_shared<GameInstance>(normalize_payoffs(*g));
  });
  m.def("reduce_k_to_2flip",
        [](const std::shared_ptr<GameInstance>& normalized, std::uint64_t seed,
           bool claim_statement_signs) {
          const AuxRandomness aux =
              sample_aux(normalized->player_count(),
                         normalized->strategy_count(), 30, seed);
          return std::make_shared<ReductionArtifacts>(reduce_k_to_2flip(
              normalized, aux,
              claim_statement_signs ? WeightConvention::kClaimStatement
                                    : WeightConvention::kEquationSystem));
        },
        py::arg("normalized"), py::arg("seed") = 0,
        py::arg("claim_statement_signs") = false);
  m.def("reduce_2_to_1flip",
        [](const std::shared_ptr<GameInstance>& normalized, std::uint64_t seed) {
          return std::make_shared<ReductionArtifacts>(reduce_2_to_1flip(
              normalized,
              sample_player_weights(normalized->player_count(), 30, seed)));
        },
        py::arg("normalized"), py::arg("seed") = 0);
  m.def("map_cut_to_profile",
        [](const std::shared_ptr<ReductionArtifacts>& artifacts,
           const std::vector<int>& s_side) {
          const LiftedProfile lifted = map_cut_to_profile(
              *artifacts,
              vertex_set_from_ids(artifacts->cut->vertex_count(), s_side));
          return py::make_tuple(lifted.profile, lifted.valid);
        });
  m.def("check_weak_smoothness",
        [](const std::shared_ptr<ReductionArtifacts>& artifacts) {
          const SmoothnessCertificate cert = check_weak_smoothness(*artifacts);
          py::dict out;
          out["square"] = cert.square;
          out["integral"] = cert.integral;
          out["rank"] = cert.rank;
          out["rows"] = cert.rows;
          out["dimension"] = cert.dimension;
          out["full_rank"] = cert.full_rank;
          out["triangular_after_row_ops"] = cert.triangular_after_row_ops;
          out["pass"] = cert.pass;
          out["detail"] = cert.detail;
          return out;
        });
  m.def("extended_potential",
        [](const std::shared_ptr<ReductionArtifacts>& artifacts,
           const StrategyProfile& profile) {
          return to_fraction(extended_potential(*artifacts, profile));
        });
  m.def("extended_is_pne",
        [](const std::shared_ptr<ReductionArtifacts>& artifacts,
           const StrategyProfile& profile) {
          return extended_is_pne(*artifacts, profile);
        });

  // --- congestion games ---
  py::class_<CongestionGame, std::shared_ptr<CongestionGame>>(m, "CongestionGame")
      .def_static("from_json",
                  [](const std::string& text) {
                    return std::make_shared<CongestionGame>(
                        congestion_game_from_json(json::parse(text)));
                  })
      .def("to_json",
           [](const CongestionGame& g) {
             return congestion_game_to_json(g).dump();
           })
      .def_property_readonly("n", &CongestionGame::player_count)
      .def_property_readonly("resources", &CongestionGame::resource_count);

  m.def("sample_congestion_game",
        [](int players, int resources, int k, int ell, int grid_log2,
           std::uint64_t seed) {
          return std::make_shared<CongestionGame>(sample_congestion_game(
              players, resources, k, ell, grid_log2, seed));
        },
        py::arg("players"), py::arg("resources"), py::arg("k") = 2,
        py::arg("ell") = 4, py::arg("grid_log2") = 30, py::arg("seed") = 0);
  m.def("congestion_potential", [](const std::shared_ptr<CongestionGame>& g,
                                   const CongestionProfile& p) {
    return to_fraction(congestion_potential(*g, p));
  });
  m.def("player_cost", [](const std::shared_ptr<CongestionGame>& g,
                          const CongestionProfile& p, int player) {
    return to_fraction(player_cost(*g, p, player));
  });
  m.def("is_congestion_pne", [](const std::shared_ptr<CongestionGame>& g,
                                const CongestionProfile& p) {
    return is_congestion_pne(*g, p);
  });

  py::class_<CongestionTrace, std::shared_ptr<CongestionTrace>>(
      m, "CongestionTrace")
      .def_property_readonly("moves",
                             [](const CongestionTrace& t) {
                               py::list out;
                               for (const auto& m_ : t.moves)
                                 out.append(py::make_tuple(m_.player, m_.strategy));
                               return out;
                             })
      .def_property_readonly("converged",
                             [](const CongestionTrace& t) {
                               return t.outcome == RunOutcome::kConvergedToPne;
                             })
      .def_property_readonly("length", &CongestionTrace::length)
      .def("to_json", [](const CongestionTrace& t) {
        return congestion_trace_to_json(t).dump();
      });

  m.def("run_bra_congestion",
        [](const std::shared_ptr<CongestionGame>& game,
           const CongestionProfile& initial, const std::string& rule,
           std::uint64_t step_cap, std::uint64_t seed) {
          return std::make_shared<CongestionTrace>(run_bra_congestion(
              game, initial, pivot_rule_from_name(rule), step_cap, seed));
        },
        py::arg("game"), py::arg("initial"), py::arg("rule") = "first",
        py::arg("step_cap") = 1000000, py::arg("seed") = 0);

  m.def("congestion_move_vector",
        [](const std::shared_ptr<CongestionGame>& game,
           const CongestionProfile& before, int player, int strategy) {
          py::dict out;
          for (const auto& [key, coeff] :
               congestion_move_vector(*game, before, Move{player, strategy}))
            out[py::make_tuple(key.first, key.second)] = coeff;
          return out;
        });

  // --- harness ---
  m.def("run_experiment_csv", [](const std::string& config_json) {
    const ExperimentConfig config =
        experiment_config_from_json(json::parse(config_json));
    std::ostringstream out;
    write_experiment_csv(out, config, run_experiment(config));
    return out.str();
  });
  m.def("verify",
        [](double scale, const std::vector<std::string>& checks,
           std::uint64_t seed) {
          VerifySuiteConfig config;
          config.checks = checks;
          config.scale = scale;
          config.seed = seed;
          return json_to_py(check_results_to_json(verify_suite(config)));
        },
        py::arg("scale") = 0.02, py::arg("checks") = std::vector<std::string>{},
        py::arg("seed") = 20240101);

  m.attr("__version__") = kToolVersion;
  m.attr("RNG_NAME") = std::string(kRngName);
}
