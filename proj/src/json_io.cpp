#include "netcoord/json_io.hpp"

#include <fstream>
#include <sstream>

#include "netcoord/errors.hpp"

namespace netcoord {

namespace {

json rational_pair(const Rational& q) {
  return json::array({rat_num_i64(q), rat_den_i64(q)});
}

Rational rational_from_pair(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("expected [num, den] pair");
  return rat(j[0].get<long>(), j[1].get<long>());
}

std::string outcome_name(RunOutcome outcome) {
  return outcome == RunOutcome::kConvergedToPne ? "converged-to-pne"
                                                : "step-cap-reached";
}

RunOutcome outcome_from_name(const std::string& name) {
  if (name == "converged-to-pne") return RunOutcome::kConvergedToPne;
  if (name == "step-cap-reached") return RunOutcome::kStepCapReached;
  throw InvalidInput("unknown outcome: " + name);
}

}  // namespace

json game_to_json(const GameInstance& game, const std::optional<json>& provenance) {
  // shared denominator = lcm over all entries
  BigInt den = 1;
  for (int e = 0; e < game.edge_count(); ++e)
    for (int i = 1; i <= game.strategy_count(); ++i)
      for (int j = 1; j <= game.strategy_count(); ++j)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                game.entry(e, i, j).get_den().get_mpz_t());
  if (!den.fits_slong_p()) throw InvalidInput("payoff denominators too large");

  json edges = json::array();
  const Rational common(den, BigInt(1));
  for (int e = 0; e < game.edge_count(); ++e) {
    json matrix = json::array();
    for (int i = 1; i <= game.strategy_count(); ++i) {
      json row = json::array();
      for (int j = 1; j <= game.strategy_count(); ++j) {
        Rational scaled = game.entry(e, i, j) * common;
        row.push_back(rat_num_i64(scaled));
      }
      matrix.push_back(std::move(row));
    }
    edges.push_back({{"u", game.edges()[e].first},
                     {"v", game.edges()[e].second},
                     {"matrix", std::move(matrix)}});
  }

  json j{{"n", game.player_count()},
         {"k", game.strategy_count()},
         {"payoff_denominator", den.get_si()},
         {"edges", std::move(edges)}};
  if (game.range_lo() != rat(-1) || game.range_hi() != rat(1))
    j["payoff_range"] = {rational_pair(game.range_lo()),
                         rational_pair(game.range_hi())};
  if (provenance) j["provenance"] = *provenance;
  return j;
}

GameInstance game_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int k = j.at("k").get<int>();
  const long den = j.at("payoff_denominator").get<long>();
  if (den <= 0) throw InvalidInput("payoff_denominator must be positive");

  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<Rational>> matrices;
  for (const auto& edge : j.at("edges")) {
    edges.emplace_back(edge.at("u").get<int>(), edge.at("v").get<int>());
    const auto& matrix = edge.at("matrix");
    if (static_cast<int>(matrix.size()) != k)
      throw InvalidInput("matrix must have k rows");
    std::vector<Rational> m;
    for (const auto& row : matrix) {
      if (static_cast<int>(row.size()) != k)
        throw InvalidInput("matrix row must have k entries");
      for (const auto& cell : row) m.push_back(rat(cell.get<long>(), den));
    }
    matrices.push_back(std::move(m));
  }

  Rational lo = rat(-1), hi = rat(1);
  if (j.contains("payoff_range")) {
    lo = rational_from_pair(j.at("payoff_range").at(0));
    hi = rational_from_pair(j.at("payoff_range").at(1));
  }
  return GameInstance(n, k, std::move(edges), std::move(matrices), lo, hi);
}

json spec_to_json(const PerturbationSpec& spec) {
  return {{"phi_num", rat_num_i64(spec.phi)},
          {"phi_den", rat_den_i64(spec.phi)},
          {"distribution", spec.distribution == NoiseModel::kUniformFull
                               ? "uniform_full"
                               : "uniform_window"},
          {"grid_log2", spec.grid_log2}};
}

PerturbationSpec spec_from_json(const json& j) {
  PerturbationSpec spec;
  spec.phi = rat(j.at("phi_num").get<long>(), j.at("phi_den").get<long>());
  const std::string dist = j.at("distribution").get<std::string>();
  if (dist == "uniform_full")
    spec.distribution = NoiseModel::kUniformFull;
  else if (dist == "uniform_window")
    spec.distribution = NoiseModel::kUniformWindow;
  else
    throw InvalidInput("unknown distribution: " + dist);
  spec.grid_log2 = j.at("grid_log2").get<int>();
  spec.validate();
  return spec;
}

json trace_to_json(const BRTrace& trace) {
  json moves = json::array();
  for (const auto& m : trace.moves)
    moves.push_back(json::array({m.player, m.strategy}));
  json deltas = json::array();
  for (const auto& d : trace.deltas) deltas.push_back(rational_pair(d));
  return {{"game", game_to_json(*trace.game)},
          {"initial", trace.initial},
          {"moves", std::move(moves)},
          {"deltas", std::move(deltas)},
          {"outcome", outcome_name(trace.outcome)},
          {"rule", trace.rule_name},
          {"seed", trace.seed}};
}

BRTrace trace_from_json(const json& j) {
  auto game = std::make_shared<GameInstance>(game_from_json(j.at("game")));
  StrategyProfile initial = j.at("initial").get<StrategyProfile>();
  std::vector<Move> moves;
  for (const auto& m : j.at("moves"))
    moves.push_back({m.at(0).get<int>(), m.at(1).get<int>()});

  // re-derive profiles and deltas; a trace file that disagrees is corrupt
  ReplayResult result = replay(game, initial, moves);
  if (!result.trace)
    throw InvalidInput("trace file contains a non-improving move at step " +
                       std::to_string(result.violation->step));
  BRTrace trace = std::move(*result.trace);
  const auto& deltas = j.at("deltas");
  if (deltas.size() != trace.deltas.size())
    throw InvalidInput("trace file delta count mismatch");
  for (std::size_t t = 0; t < trace.deltas.size(); ++t)
    if (rational_from_pair(deltas[t]) != trace.deltas[t])
      throw InvalidInput("trace file delta mismatch at step " + std::to_string(t));
  trace.outcome = outcome_from_name(j.at("outcome").get<std::string>());
  trace.rule_name = j.at("rule").get<std::string>();
  trace.seed = j.at("seed").get<std::uint64_t>();
  return trace;
}

json cut_instance_to_json(const CutInstance& inst) {
  json edges = json::array();
  for (const auto& e : inst.edges())
    edges.push_back(
        json::array({e.u, e.v, rat_num_i64(e.w), rat_den_i64(e.w)}));
  json j{{"vertices", inst.vertex_count()}, {"edges", std::move(edges)}};
  if (inst.terminals())
    j["terminals"] = {{"s", inst.terminals()->s}, {"t", inst.terminals()->t}};
  return j;
}

CutInstance cut_instance_from_json(const json& j) {
  std::vector<WeightedEdge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                     rat(e.at(2).get<long>(), e.at(3).get<long>())});
  std::optional<Terminals> terminals;
  if (j.contains("terminals") && !j.at("terminals").is_null())
    terminals = Terminals{j.at("terminals").at("s").get<int>(),
                          j.at("terminals").at("t").get<int>()};
  return CutInstance(j.at("vertices").get<int>(), std::move(edges), terminals);
}

std::string cut_instance_to_dimacs(const CutInstance& inst) {
  std::ostringstream out;
  out << "p mc " << inst.vertex_count() << " " << inst.edges().size() << "\n";
  if (inst.terminals())
    out << "t " << inst.terminals()->s << " " << inst.terminals()->t << "\n";
  for (const auto& e : inst.edges())
    out << "e " << e.u << " " << e.v << " " << rat_to_string(e.w) << "\n";
  return out.str();
}

CutInstance cut_instance_from_dimacs(std::istream& in) {
  std::string line;
  int vertices = -1;
  std::size_t edge_count = 0;
  std::optional<Terminals> terminals;
  std::vector<WeightedEdge> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string kind;
      ls >> kind >> vertices >> edge_count;
      if (kind != "mc") throw InvalidInput("expected 'p mc' header");
    } else if (tag == "t") {
      Terminals t;
      ls >> t.s >> t.t;
      terminals = t;
    } else if (tag == "e") {
      int u, v;
      std::string w;
      ls >> u >> v >> w;
      edges.push_back({u, v, rat_from_string(w)});
    } else {
      throw InvalidInput("unknown dimacs line tag: " + tag);
    }
  }
  if (vertices < 0) throw InvalidInput("missing 'p mc' header");
  if (edges.size() != edge_count)
    throw InvalidInput("edge count does not match header");
  return CutInstance(vertices, std::move(edges), terminals);
}

json cut_to_json(const VertexSet& s) {
  return {{"s_side", vertex_set_to_ids(s)}};
}

VertexSet cut_from_json(const json& j, int vertex_count) {
  return vertex_set_from_ids(vertex_count,
                             j.at("s_side").get<std::vector<int>>());
}

json flip_trace_to_json(const FlipTrace& trace) {
  json flips = json::array();
  for (const auto& f : trace.flips) flips.push_back(f);
  json deltas = json::array();
  for (const auto& d : trace.deltas) deltas.push_back(rational_pair(d));
  return {{"instance", cut_instance_to_json(*trace.instance)},
          {"flip_radius", trace.flip_radius},
          {"initial", cut_to_json(trace.initial)},
          {"flips", std::move(flips)},
          {"deltas", std::move(deltas)},
          {"final", cut_to_json(trace.states.back())},
          {"outcome", outcome_name(trace.outcome)},
          {"rule", trace.rule_name},
          {"seed", trace.seed}};
}

json profile_to_json(const StrategyProfile& profile) {
  return {{"strategies", profile}};
}

StrategyProfile profile_from_json(const json& j) {
  return j.at("strategies").get<StrategyProfile>();
}

json artifacts_to_json(const ReductionArtifacts& artifacts) {
  json j{{"variant", artifacts.variant == ReductionArtifacts::Variant::kTwoFlip
                         ? "k-to-2flip"
                         : "2-to-1flip"},
         {"game", game_to_json(*artifacts.game)},
         {"normalization",
          {{"scale", rational_pair(artifacts.normalization.scale)},
           {"offset", rational_pair(artifacts.normalization.offset)}}},
         {"cut", cut_instance_to_json(*artifacts.cut)}};
  if (artifacts.variant == ReductionArtifacts::Variant::kTwoFlip) {
    j["convention"] =
        artifacts.convention == WeightConvention::kEquationSystem
            ? "equation-system"
            : "claim-statement";
    json y = json::array(), w = json::array(), r = json::array();
    for (const auto& row : artifacts.aux.y) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(rational_pair(v));
      y.push_back(std::move(jr));
    }
    for (const auto& row : artifacts.aux.w) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(rational_pair(v));
      w.push_back(std::move(jr));
    }
    for (const auto& row : artifacts.aux.r) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(rational_pair(v));
      r.push_back(std::move(jr));
    }
    j["aux"] = {{"a0", rational_pair(artifacts.aux.a0)},
                {"y", std::move(y)},
                {"w", std::move(w)},
                {"r", std::move(r)}};
  } else {
    json w = json::array();
    for (const auto& v : artifacts.player_w) w.push_back(rational_pair(v));
    j["player_w"] = std::move(w);
  }
  return j;
}

ReductionArtifacts artifacts_from_json(const json& j) {
  auto game = std::make_shared<GameInstance>(game_from_json(j.at("game")));
  const std::string variant = j.at("variant").get<std::string>();
  // the construction is deterministic in (game, aux), so rebuild it
  if (variant == "k-to-2flip") {
    AuxRandomness aux;
    const auto& ja = j.at("aux");
    aux.a0 = rational_from_pair(ja.at("a0"));
    for (const auto& row : ja.at("y")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_from_pair(v));
      aux.y.push_back(std::move(r));
    }
    for (const auto& row : ja.at("w")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_from_pair(v));
      aux.w.push_back(std::move(r));
    }
    for (const auto& row : ja.at("r")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_from_pair(v));
      aux.r.push_back(std::move(r));
    }
    const WeightConvention convention =
        j.at("convention").get<std::string>() == "claim-statement"
            ? WeightConvention::kClaimStatement
            : WeightConvention::kEquationSystem;
    return reduce_k_to_2flip(game, aux, convention);
  }
  if (variant == "2-to-1flip") {
    std::vector<Rational> w;
    for (const auto& v : j.at("player_w")) w.push_back(rational_from_pair(v));
    return reduce_2_to_1flip(game, w);
  }
  throw InvalidInput("unknown reduction variant: " + variant);
}

json congestion_game_to_json(const CongestionGame& game) {
  BigInt den = 1;
  for (const auto& d : game.differentials())
    for (const auto& v : d)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  if (!den.fits_slong_p()) throw InvalidInput("differential denominators too large");
  const Rational common(den, BigInt(1));

  json players = json::array();
  for (int i = 0; i < game.player_count(); ++i) {
    json strategies = json::array();
    for (const auto& s : game.strategies(i)) strategies.push_back(s);
    players.push_back({{"strategies", std::move(strategies)}});
  }
  json differentials = json::object();
  for (int e = 0; e < game.resource_count(); ++e) {
    json nums = json::array();
    for (const auto& v : game.differentials()[e])
      nums.push_back(rat_num_i64(v * common));
    differentials[std::to_string(e)] = std::move(nums);
  }
  return {{"resources", game.resource_count()},
          {"k", game.k_cap()},
          {"ell", game.ell_cap()},
          {"players", std::move(players)},
          {"differentials", std::move(differentials)},
          {"denominator", den.get_si()}};
}

CongestionGame congestion_game_from_json(const json& j) {
  const int resources = j.at("resources").get<int>();
  const long den = j.at("denominator").get<long>();
  if (den <= 0) throw InvalidInput("denominator must be positive");

  std::vector<std::vector<std::vector<int>>> strategy_sets;
  for (const auto& p : j.at("players"))
    strategy_sets.push_back(p.at("strategies").get<std::vector<std::vector<int>>>());

  std::vector<std::vector<Rational>> differentials(resources);
  for (int e = 0; e < resources; ++e) {
    const auto& nums = j.at("differentials").at(std::to_string(e));
    for (const auto& v : nums)
      differentials[e].push_back(rat(v.get<long>(), den));
  }
  return CongestionGame(resources, j.at("k").get<int>(), j.at("ell").get<int>(),
                        std::move(strategy_sets), std::move(differentials));
}

json congestion_trace_to_json(const CongestionTrace& trace) {
  json moves = json::array();
  for (const auto& m : trace.moves)
    moves.push_back(json::array({m.player, m.strategy}));
  json deltas = json::array();
  for (const auto& d : trace.potential_deltas) deltas.push_back(rational_pair(d));
  return {{"game", congestion_game_to_json(*trace.game)},
          {"initial", trace.initial},
          {"moves", std::move(moves)},
          {"potential_deltas", std::move(deltas)},
          {"outcome", outcome_name(trace.outcome)},
          {"rule", trace.rule_name},
          {"seed", trace.seed}};
}

namespace {

json stats_to_json(const SequenceStats& stats) {
  return {{"p", stats.p},       {"p1", stats.p1}, {"p2", stats.p2},
          {"d", stats.d},       {"q0", stats.q0}, {"d1", stats.d1},
          {"length", stats.length}, {"log_repeating", stats.log_repeating}};
}

json rank_check_to_json(const RankCheck& check) {
  return {{"applicable", check.applicable},
          {"bound", check.bound},
          {"rank", check.rank},
          {"pass", check.pass}};
}

}  // namespace

json analysis_report(const BRTrace& trace, std::size_t begin, std::size_t end) {
  const MoveSequenceView view = view_of(trace);
  json report;
  report["range"] = {begin, end};
  report["stats"] = stats_to_json(classify(view, begin, end));

  bool delta_identity = true;
  for (std::size_t t = begin; t < end; ++t)
    if (inner_product(transformation_vector(trace, t), *trace.game) !=
        trace.deltas[t]) {
      delta_identity = false;
      break;
    }
  report["delta_identity"] = delta_identity;

  json blocks = json::array();
  for (const auto& block : separated_blocks(view, begin, end)) {
    json b{{"begin", block.begin}, {"end", block.end}};
    if (block.boundary)
      b["boundary"] = {{"player", block.boundary->player},
                       {"strategy", block.boundary->strategy}};
    else
      b["boundary"] = nullptr;
    blocks.push_back(std::move(b));
  }
  report["blocks"] = std::move(blocks);

  const CriticalCheck critical = check_critical(trace, begin, end);
  if (critical.applicable) {
    report["critical"] = {{"begin", critical.begin},
                          {"end", critical.end},
                          {"equality", critical.equality},
                          {"subranges_diverse", critical.subranges_diverse}};
  } else {
    report["critical"] = nullptr;
  }

  std::vector<TransformationVector> sums;
  for (auto& [u, v] : cyclic_sums(trace, begin, end)) sums.push_back(std::move(v));
  report["ranks"] = {
      {"transformation_set", rank_of(transformation_set(trace, begin, end))},
      {"cyclic_sums", rank_of(sums)}};

  report["lemma_checks"] = {
      {"rank_dq", rank_check_to_json(check_rank_dq(trace, begin, end))},
      {"all_active", rank_check_to_json(check_all_active(trace, begin, end))},
      {"rank_p2", rank_check_to_json(check_rank_p2(trace, begin, end))},
      {"critical_pass", critical.applicable ? critical.pass : true}};
  return report;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace netcoord
