#include "netcoord/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

#include "netcoord/congestion.hpp"
#include "netcoord/dynamics.hpp"
#include "netcoord/errors.hpp"
#include "netcoord/experiment.hpp"
#include "netcoord/game.hpp"
#include "netcoord/json_io.hpp"
#include "netcoord/rng.hpp"
#include "netcoord/sequence.hpp"
#include "netcoord/smoothing.hpp"

namespace netcoord {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PerturbationSpec full_spec() {
  return {rat(1, 2), NoiseModel::kUniformFull, 30};
}

GraphTopology pick_topology(RngStream& stream, int n) {
  switch (stream.next_below(3)) {
    case 0: return complete_graph(n);
    case 1: return path_graph(n);
    default: return erdos_renyi(n, rat(1, 2), stream.next_u64());
  }
}

StrategyProfile random_profile(RngStream& stream, int n, int k) {
  StrategyProfile profile(n);
  for (int u = 0; u < n; ++u)
    profile[u] = 1 + static_cast<int>(stream.next_below(k));
  return profile;
}

// The profile improvement graph is a DAG (potential strictly increases), so
// its longest path comes out of a linear DP in decreasing-potential order.
// This manufactures the long improving sequences the critical-subsequence
// claim quantifies over, which plain BRA runs rarely reach.
BRTrace longest_improving_trace(std::shared_ptr<const GameInstance> game) {
  const int n = game->player_count();
  const int k = game->strategy_count();
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(k);

  auto decode = [&](std::uint64_t id) {
    StrategyProfile p(n);
    for (int u = 0; u < n; ++u) {
      p[u] = 1 + static_cast<int>(id % k);
      id /= k;
    }
    return p;
  };
  auto encode = [&](const StrategyProfile& p) {
    std::uint64_t id = 0;
    for (int u = n - 1; u >= 0; --u) id = id * k + (p[u] - 1);
    return id;
  };

  std::vector<Rational> pot(count);
  for (std::uint64_t id = 0; id < count; ++id)
    pot[id] = potential(*game, decode(id));
  std::vector<std::uint64_t> order(count);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::uint64_t a, std::uint64_t b) { return pot[a] > pot[b]; });

  std::vector<int> dp(count, 0);  // moves achievable starting at each profile
  std::vector<std::pair<std::uint64_t, Move>> step(count, {0, {}});
  for (std::uint64_t id : order) {
    const StrategyProfile p = decode(id);
    for (int u = 0; u < n; ++u)
      for (int i = 1; i <= k; ++i) {
        if (i == p[u]) continue;
        StrategyProfile q = p;
        q[u] = i;
        const std::uint64_t qid = encode(q);
        if (pot[qid] > pot[id] && dp[qid] + 1 > dp[id]) {
          dp[id] = dp[qid] + 1;
          step[id] = {qid, Move{u, i}};
        }
      }
  }
  const std::uint64_t start = static_cast<std::uint64_t>(
      std::max_element(dp.begin(), dp.end()) - dp.begin());
  std::vector<Move> moves;
  for (std::uint64_t id = start; dp[id] > 0; id = step[id].first)
    moves.push_back(step[id].second);
  ReplayResult result = replay(game, decode(start), moves);
  return std::move(*result.trace);
}

struct Failure {
  std::uint64_t count = 0;
  std::uint64_t first_seed = 0;
  std::string note;

  void record(std::uint64_t seed, const std::string& what) {
    if (count == 0) {
      first_seed = seed;
      note = what;
    }
    ++count;
  }
};

CheckResult finish(const std::string& name, Clock::time_point start,
                   std::uint64_t cases, const Failure& failure,
                   std::string detail = {}) {
  CheckResult result;
  result.name = name;
  result.cases_run = cases;
  result.failures = failure.count;
  result.pass = failure.count == 0;
  result.replay_seed = failure.first_seed;
  result.seconds = seconds_since(start);
  result.detail = failure.count == 0 ? std::move(detail) : failure.note;
  return result;
}

}  // namespace

CheckResult check_potential_identity(std::uint64_t triples, int max_n, int max_k,
                                     std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  for (std::uint64_t c = 0; c < triples; ++c) {
    const std::uint64_t case_seed = hash_combine(seed, c);
    RngStream stream(case_seed, {hash_str("potential-identity")});
    const int n = 2 + static_cast<int>(stream.next_below(max_n - 1));
    const int k = 2 + static_cast<int>(stream.next_below(max_k - 1));
    const GameInstance game =
        sample_instance(pick_topology(stream, n), k, full_spec(), case_seed);

    const StrategyProfile profile = random_profile(stream, n, k);
    const int u = static_cast<int>(stream.next_below(n));
    int alt = 1 + static_cast<int>(stream.next_below(k - 1));
    if (alt >= profile[u]) ++alt;  // uniform over strategies != current

    StrategyProfile deviated = profile;
    deviated[u] = alt;
    const Rational pot_delta = potential(game, deviated) - potential(game, profile);
    const Rational pay_delta =
        player_payoff(game, deviated, u) - player_payoff(game, profile, u);
    if (pot_delta != pay_delta)
      failure.record(case_seed, "potential delta != payoff delta");
  }
  return finish("potential-identity", start, triples, failure);
}

CheckResult check_transformation_identity(std::uint64_t traces,
                                          std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  std::uint64_t steps_checked = 0;
  for (std::uint64_t c = 0; c < traces; ++c) {
    const std::uint64_t case_seed = hash_combine(seed, c);
    RngStream stream(case_seed, {hash_str("transformation-identity")});
    const int n = 3 + static_cast<int>(stream.next_below(4));
    const int k = 2 + static_cast<int>(stream.next_below(2));
    auto game = std::make_shared<GameInstance>(
        sample_instance(pick_topology(stream, n), k, full_spec(), case_seed));
    const BRTrace trace = run_bra(game, random_profile(stream, n, k),
                                  PivotRule::random(), 500, case_seed);
    for (std::size_t t = 0; t < trace.length(); ++t) {
      ++steps_checked;
      if (inner_product(transformation_vector(trace, t), *game) !=
          trace.deltas[t]) {
        failure.record(case_seed, "<L_t, A> != delta at step " + std::to_string(t));
        break;
      }
    }
  }
  return finish("transformation-identity", start, traces, failure,
                std::to_string(steps_checked) + " steps checked");
}

CheckResult check_bra_vs_oracle(std::uint64_t instances, std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  // k^n <= 3^5 keeps the oracle cheap
  static constexpr std::pair<int, int> kSizes[] = {
      {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}, {2, 3}, {3, 3}, {4, 3}, {5, 3}};
  static const PivotRule kRules[] = {PivotRule::first(), PivotRule::best(),
                                     PivotRule::random()};
  for (std::uint64_t c = 0; c < instances; ++c) {
    const std::uint64_t case_seed = hash_combine(seed, c);
    RngStream stream(case_seed, {hash_str("bra-vs-oracle")});
    const auto [n, k] = kSizes[stream.next_below(std::size(kSizes))];
    auto game = std::make_shared<GameInstance>(
        sample_instance(pick_topology(stream, n), k, full_spec(), case_seed));

    const auto pne = enumerate_pne(*game);
    if (pne.empty()) {
      failure.record(case_seed, "enumerate_pne returned an empty set");
      continue;
    }
    const BRTrace trace =
        run_bra(game, random_profile(stream, n, k),
                kRules[stream.next_below(std::size(kRules))], 1000000, case_seed);
    if (trace.outcome != RunOutcome::kConvergedToPne) {
      failure.record(case_seed, "BRA hit the step cap");
      continue;
    }
    if (std::find(pne.begin(), pne.end(), trace.profiles.back()) == pne.end())
      failure.record(case_seed, "converged profile not in the oracle PNE set");
  }
  return finish("bra-vs-oracle", start, instances, failure);
}

CheckResult check_critical_subsequence(std::uint64_t traces, std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  static constexpr std::pair<int, int> kSizes[] = {{10, 2}, {12, 2}, {6, 3}, {7, 3}};
  std::uint64_t produced = 0;
  std::uint64_t attempt = 0;
  const std::uint64_t attempt_cap = traces * 50;
  while (produced < traces && attempt < attempt_cap) {
    const std::uint64_t case_seed = hash_combine(seed, attempt++);
    RngStream stream(case_seed, {hash_str("critical-subsequence")});
    const auto [n, k] = kSizes[stream.next_below(std::size(kSizes))];
    const std::size_t want = 2 * static_cast<std::size_t>(n) * k;
    auto game = std::make_shared<GameInstance>(sample_instance(
        complete_graph(n), k, full_spec(), case_seed));
    BRTrace trace = longest_improving_trace(game);
    if (trace.length() < want) continue;  // landscape too shallow; resample
    ++produced;

    const CriticalCheck check = check_critical(trace, 0, want);
    if (!check.applicable)
      failure.record(case_seed, "no critical subsequence found in a 2nk range");
    else if (!check.equality)
      failure.record(case_seed, "critical subsequence misses the equality");
    else if (!check.subranges_diverse)
      failure.record(case_seed, "critical subsequence has a non-diverse subrange");
  }
  if (produced < traces)
    failure.record(seed, "could not generate enough 2nk-length traces");
  return finish("critical-subsequence", start, produced, failure);
}

CheckResult check_rank_lemmas(std::uint64_t traces_per_class, std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;

  // class 1: separated-block bound; complete graphs, >= 1 inactive player
  std::uint64_t produced = 0, attempt = 0;
  std::uint64_t attempt_cap = traces_per_class * 300;
  while (produced < traces_per_class && attempt < attempt_cap) {
    const std::uint64_t case_seed = hash_combine(hash_str("dq"), hash_combine(seed, attempt++));
    RngStream stream(case_seed, {hash_str("rank-dq")});
    const int n = 4 + static_cast<int>(stream.next_below(3));
    const int k = 2 + static_cast<int>(stream.next_below(2));
    auto game = std::make_shared<GameInstance>(
        sample_instance(complete_graph(n), k, full_spec(), case_seed));
    const BRTrace trace = run_bra(game, random_profile(stream, n, k),
                                  PivotRule::random(), 60, case_seed);
    // longest prefix that keeps someone inactive
    std::set<int> active;
    std::size_t prefix = 0;
    for (std::size_t t = 0; t < trace.length(); ++t) {
      active.insert(trace.moves[t].player);
      if (static_cast<int>(active.size()) == n) break;
      prefix = t + 1;
    }
    if (prefix < 3) continue;
    ++produced;
    const RankCheck check = check_rank_dq(trace, 0, prefix);
    if (!check.applicable || !check.pass)
      failure.record(case_seed, "rank < d1 + sum(d - q0) over separated blocks");
  }
  if (produced < traces_per_class)
    failure.record(seed, "could not generate enough inactive-player traces");

  // class 2: all-active corollary on complete graphs
  produced = attempt = 0;
  attempt_cap = traces_per_class * 300;
  while (produced < traces_per_class && attempt < attempt_cap) {
    const std::uint64_t case_seed = hash_combine(hash_str("aa"), hash_combine(seed, attempt++));
    RngStream stream(case_seed, {hash_str("rank-all-active")});
    const int n = 3 + static_cast<int>(stream.next_below(4));
    const int k = 2 + static_cast<int>(stream.next_below(2));
    auto game = std::make_shared<GameInstance>(
        sample_instance(complete_graph(n), k, full_spec(), case_seed));
    const BRTrace trace = run_bra(game, random_profile(stream, n, k),
                                  PivotRule::random(), 120, case_seed);
    const RankCheck check = check_all_active(trace, 0, trace.length());
    if (!check.applicable) continue;  // someone never moved; try again
    ++produced;
    if (!check.pass)
      failure.record(case_seed, "rank < ceil((1 - 1/n)(d - q0))");
  }
  if (produced < traces_per_class)
    failure.record(seed, "could not generate enough all-active traces");

  // class 3: cyclic sums on arbitrary topologies, p2 >= 1
  produced = attempt = 0;
  attempt_cap = traces_per_class * 300;
  while (produced < traces_per_class && attempt < attempt_cap) {
    const std::uint64_t case_seed = hash_combine(hash_str("p2"), hash_combine(seed, attempt++));
    RngStream stream(case_seed, {hash_str("rank-p2")});
    const int n = 4 + static_cast<int>(stream.next_below(4));
    const int k = 2 + static_cast<int>(stream.next_below(3));
    auto game = std::make_shared<GameInstance>(
        sample_instance(pick_topology(stream, n), k, full_spec(), case_seed));
    const BRTrace trace = run_bra(game, random_profile(stream, n, k),
                                  PivotRule::random(), 200, case_seed);
    const SequenceStats stats = classify(view_of(trace), 0, trace.length());
    if (stats.p2 < 1) continue;
    ++produced;

    const RankCheck check = check_rank_p2(trace, 0, trace.length());
    if (!check.pass) {
      failure.record(case_seed, "rank(cyclic sums) < ceil(p2/2)");
      continue;
    }
    // cyclic-sum sanity: nonzero vectors, zero rows for inactive players
    std::set<int> active;
    for (const auto& m : trace.moves) active.insert(m.player);
    for (const auto& [u, vec] : cyclic_sums(trace, 0, trace.length())) {
      bool nonzero = false;
      for (const auto& [key, coeff] : vec)
        if (coeff != 0) nonzero = true;
      if (!nonzero) {
        failure.record(case_seed, "cyclic sum V(u) is the zero vector");
        break;
      }
      for (const auto& [key, coeff] : vec)
        if (coeff != 0 && (!active.contains(key.u) || !active.contains(key.v))) {
          failure.record(case_seed, "cyclic sum touches an inactive player row");
          break;
        }
      // <V(u), A> must equal the summed step gains, hence be positive
      if (inner_product(vec, *game) <= 0)
        failure.record(case_seed, "<V(u), A> is not positive");
    }
  }
  if (produced < traces_per_class)
    failure.record(seed, "could not generate enough repeating-player traces");

  return finish("rank-lemmas", start, 3 * traces_per_class, failure);
}

ValueIdentityReport reduction_value_identity(const ReductionArtifacts& artifacts) {
  const GameInstance& game = *artifacts.game;
  const CutInstance& cut = *artifacts.cut;
  const int n = game.player_count();
  const int k = game.strategy_count();

  ValueIdentityReport report;
  // walk every valid cut = every extended profile
  const int lo = artifacts.variant == ReductionArtifacts::Variant::kTwoFlip ? 0 : 1;
  StrategyProfile profile(n, lo);
  const bool one_flip = artifacts.variant == ReductionArtifacts::Variant::kOneFlip;
  while (true) {
    VertexSet s(cut.vertex_count(), 0);
    s[0] = 1;
    for (int u = 0; u < n; ++u) {
      if (one_flip ? profile[u] == 1 : profile[u] >= 1)
        s[artifacts.node_of(u, profile[u])] = 1;
    }
    const Rational delta = cut_weight(cut, s);
    if (delta != 2 * extended_potential(artifacts, profile)) {
      report.pass = false;
      report.witness_cut = vertex_set_to_ids(s);
      return report;
    }
    int u = n - 1;
    for (; u >= 0; --u) {
      if (profile[u] < k) {
        ++profile[u];
        break;
      }
      profile[u] = lo;
    }
    if (u < 0) break;
  }
  return report;
}

namespace {

// Topologies with min degree >= 1 keep the Claim-2 system nondegenerate.
GraphTopology connected_topology(RngStream& stream, int n) {
  switch (stream.next_below(3)) {
    case 0: return complete_graph(n);
    case 1: return path_graph(n);
    default: {
      GraphTopology g = path_graph(n);  // spanning path, extra random chords
      for (int u = 0; u < n; ++u)
        for (int v = u + 2; v < n; ++v)
          if (stream.next_below(2) == 0) g.edges.emplace_back(u, v);
      return g;
    }
  }
}

}  // namespace

CheckResult check_reduction_k2(std::uint64_t instances, std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  // nk + 2 <= 16 permits full cut enumeration
  static constexpr std::pair<int, int> kSizes[] = {
      {2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {2, 4},
      {6, 2}, {4, 3}, {2, 5}, {7, 2}, {3, 4}, {2, 6}, {2, 7}};
  for (std::uint64_t c = 0; c < instances; ++c) {
    const std::uint64_t case_seed = hash_combine(seed, c);
    RngStream stream(case_seed, {hash_str("reduction-k2")});
    // bias toward small sizes; tail cases cover nk up to 14
    const auto [n, k] = kSizes[stream.next_below(c % 5 == 0 ? std::size(kSizes) : 7)];

    auto raw = sample_instance(connected_topology(stream, n), k, full_spec(),
                               case_seed);
    auto game = std::make_shared<GameInstance>(normalize_payoffs(raw));
    const AuxRandomness aux = sample_aux(n, k, 30, case_seed);
    const ReductionArtifacts artifacts = reduce_k_to_2flip(game, aux);
    const CutInstance& cut = *artifacts.cut;

    // (d) certificate
    const SmoothnessCertificate cert = check_weak_smoothness(artifacts);
    if (!cert.pass || !cert.triangular_after_row_ops) {
      failure.record(case_seed, "weak-smoothness certificate failed");
      continue;
    }

    // (b) value identity over all valid cuts
    if (!reduction_value_identity(artifacts).pass) {
      failure.record(case_seed, "delta(S) != 2 * potential(sigma(S))");
      continue;
    }

    // (a) + (c) + s-t separation over all 2^(nk) non-terminal subsets
    const int free_nodes = n * k;
    const auto pne = extended_enumerate_pne(artifacts);
    bool bad = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_nodes) && !bad;
         ++mask) {
      VertexSet s(cut.vertex_count(), 0);
      for (int b = 0; b < free_nodes; ++b)
        if (mask & (std::uint64_t{1} << b)) s[2 + b] = 1;

      // s-t separation: adding s strictly improves any s,t-free set
      if (cut_weight(cut, [&] {
            VertexSet with_s = s;
            with_s[0] = 1;
            return with_s;
          }()) <= cut_weight(cut, s)) {
        failure.record(case_seed, "delta(S + {s}) <= delta(S)");
        bad = true;
        break;
      }

      s[0] = 1;  // pinned terminal placement for the flip search
      if (!is_local_opt(cut, s, 1)) continue;
      if (!is_local_opt(cut, s, 2)) continue;

      const LiftedProfile lifted = map_cut_to_profile(artifacts, s);
      if (!lifted.valid) {
        failure.record(case_seed, "2-flip local optimum is not a valid cut");
        bad = true;
        break;
      }
      if (!extended_is_pne(artifacts, lifted.profile) ||
          std::find(pne.begin(), pne.end(), lifted.profile) == pne.end()) {
        failure.record(case_seed,
                       "2-flip local optimum does not lift to an extended PNE");
        bad = true;
        break;
      }
    }
  }
  return finish("reduction-k2", start, instances, failure);
}

CheckResult check_reduction_21(std::uint64_t instances, std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  for (std::uint64_t c = 0; c < instances; ++c) {
    const std::uint64_t case_seed = hash_combine(seed, c);
    RngStream stream(case_seed, {hash_str("reduction-21")});
    const int n = 2 + static_cast<int>(stream.next_below(11));  // n <= 12
    auto raw = sample_instance(connected_topology(stream, n), 2, full_spec(),
                               case_seed);
    auto game = std::make_shared<GameInstance>(normalize_payoffs(raw));
    const auto player_w = sample_player_weights(n, 30, case_seed);
    const ReductionArtifacts artifacts = reduce_2_to_1flip(game, player_w);
    const CutInstance& cut = *artifacts.cut;

    const SmoothnessCertificate cert = check_weak_smoothness(artifacts);
    if (!cert.pass) {
      failure.record(case_seed, "1-flip weight rows are not independent");
      continue;
    }
    if (!reduction_value_identity(artifacts).pass) {
      failure.record(case_seed, "delta(S) != 2 * potential(sigma(S))");
      continue;
    }

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      VertexSet s(cut.vertex_count(), 0);
      s[0] = 1;
      for (int u = 0; u < n; ++u)
        if (mask & (std::uint64_t{1} << u)) s[2 + u] = 1;
      if (!is_local_opt(cut, s, 1)) continue;
      const LiftedProfile lifted = map_cut_to_profile(artifacts, s);
      if (!is_pne(*game, lifted.profile)) {
        failure.record(case_seed, "1-flip local optimum does not lift to a PNE");
        break;
      }
    }
  }
  return finish("reduction-21", start, instances, failure);
}

CheckResult check_figure1(std::uint64_t graphs, std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  for (std::uint64_t c = 0; c < graphs; ++c) {
    const std::uint64_t case_seed = hash_combine(seed, c);
    RngStream stream(case_seed, {hash_str("figure1")});
    const int n = 2 + static_cast<int>(stream.next_below(11));  // n <= 12

    const GraphTopology topo = pick_topology(stream, n);
    std::vector<WeightedEdge> edges;
    const std::uint64_t res = std::uint64_t{1} << 20;
    for (std::size_t e = 0; e < topo.edges.size(); ++e) {
      RngStream ws(case_seed, {hash_str("figure1-w"), e});
      Rational w(static_cast<long>(ws.next_in_range(
                     -static_cast<std::int64_t>(res),
                     static_cast<std::int64_t>(res))),
                 1);
      w /= Rational(static_cast<unsigned long>(res));
      edges.push_back({topo.edges[e].first, topo.edges[e].second, std::move(w)});
    }
    const CutInstance graph(n, std::move(edges));
    const GameInstance game = from_maxcut(graph);

    StrategyProfile profile(n, 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      VertexSet s(n, 0);
      for (int u = 0; u < n; ++u) {
        const bool inside = mask & (std::uint64_t{1} << u);
        s[u] = inside ? 1 : 0;
        profile[u] = inside ? 1 : 2;
      }
      if (potential(game, profile) != cut_weight(graph, s)) {
        failure.record(case_seed, "potential != cut value");
        break;
      }
      if (is_local_opt(graph, s, 1) != is_pne(game, profile)) {
        failure.record(case_seed, "1-flip local optimality disagrees with PNE");
        break;
      }
    }
  }
  return finish("figure1-embedding", start, graphs, failure);
}

CheckResult check_congestion(std::uint64_t deviations, std::uint64_t moves,
                             std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;

  auto sample_case = [&](std::uint64_t case_seed, RngStream& stream) {
    const int n = 2 + static_cast<int>(stream.next_below(4));
    const int r = 3 + static_cast<int>(stream.next_below(4));
    const int k = 2 + static_cast<int>(stream.next_below(2));
    const int ell = std::max(2, static_cast<int>(stream.next_below(
                                    static_cast<std::uint64_t>(n) * k)) +
                                    1);
    return std::make_shared<CongestionGame>(
        sample_congestion_game(n, r, k, ell, 30, case_seed));
  };

  for (std::uint64_t c = 0; c < deviations; ++c) {
    const std::uint64_t case_seed = hash_combine(hash_str("cg-dev"), hash_combine(seed, c));
    RngStream stream(case_seed, {hash_str("congestion-deviation")});
    auto game = sample_case(case_seed, stream);

    // independent recount of the (k, ell) caps on the sampled instance
    std::vector<int> memberships(game->resource_count(), 0);
    for (int i = 0; i < game->player_count(); ++i) {
      if (static_cast<int>(game->strategies(i).size()) > game->k_cap())
        failure.record(case_seed, "player exceeds the k cap");
      for (const auto& s : game->strategies(i))
        for (int e : s) ++memberships[e];
    }
    for (int e = 0; e < game->resource_count(); ++e)
      if (memberships[e] > game->ell_cap())
        failure.record(case_seed, "resource exceeds the ell cap");

    CongestionProfile profile(game->player_count());
    for (int i = 0; i < game->player_count(); ++i)
      profile[i] =
          static_cast<int>(stream.next_below(game->strategies(i).size()));
    const int player = static_cast<int>(stream.next_below(game->player_count()));
    const int count = static_cast<int>(game->strategies(player).size());
    if (count < 2) continue;
    int alt = static_cast<int>(stream.next_below(count - 1));
    if (alt >= profile[player]) ++alt;

    CongestionProfile deviated = profile;
    deviated[player] = alt;
    const Rational cost_delta = player_cost(*game, deviated, player) -
                                player_cost(*game, profile, player);
    const Rational pot_delta = congestion_potential(*game, deviated) -
                               congestion_potential(*game, profile);
    if (cost_delta != pot_delta)
      failure.record(case_seed, "cost delta != potential delta");

    // move-vector identity, reusing the same deviation while moves remain
    if (c < moves) {
      const auto vec =
          congestion_move_vector(*game, profile, Move{player, alt});
      if (congestion_inner_product(vec, *game) != pot_delta)
        failure.record(case_seed, "<L, C> != potential delta");
    }

    // termination spot check on a shared subset of the sampled instances
    if (c % 20 == 0) {
      const CongestionTrace trace = run_bra_congestion(
          game, profile, PivotRule::random(), 1000000, case_seed);
      if (trace.outcome != RunOutcome::kConvergedToPne)
        failure.record(case_seed, "congestion BRA failed to terminate");
      for (const auto& d : trace.potential_deltas)
        if (d >= 0) failure.record(case_seed, "potential did not strictly drop");
    }
  }
  return finish("congestion-identities", start, deviations, failure);
}

CheckResult check_smoothed_convergence(std::uint64_t trials,
                                       const std::vector<int>& n_values,
                                       std::uint64_t step_cap,
                                       const std::optional<std::string>& csv_path,
                                       std::uint64_t seed) {
  const auto start = Clock::now();
  Failure failure;
  std::ostringstream csv;
  csv << "# netcoordlab " << kToolVersion << "\n";
  csv << "# rng=" << kRngName << "\n";
  csv << "# base_seed=" << seed << "\n";
  csv << "n,k,phi,trials,converged,median_steps,max_steps\n";

  std::string medians;
  for (int n : n_values) {
    std::vector<std::uint64_t> steps;
    std::uint64_t converged = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t case_seed =
          hash_combine(seed, hash_combine(std::uint64_t(n), trial));
      auto game = std::make_shared<GameInstance>(
          sample_instance(complete_graph(n), 2, full_spec(), case_seed));
      RngStream stream(case_seed, {hash_str("smoothed-convergence")});
      const BRTrace trace = run_bra(game, random_profile(stream, n, 2),
                                    PivotRule::first(), step_cap, case_seed);
      if (trace.outcome == RunOutcome::kConvergedToPne)
        ++converged;
      else
        failure.record(case_seed, "BRA hit the 10^6 step cap at n=" +
                                      std::to_string(n));
      steps.push_back(trace.length());
    }
    std::sort(steps.begin(), steps.end());
    const std::uint64_t median = steps[steps.size() / 2];
    csv << n << ",2,1/2," << trials << "," << converged << "," << median << ","
        << steps.back() << "\n";
    if (!medians.empty()) medians += " ";
    medians += "n=" + std::to_string(n) + ":" + std::to_string(median);
  }
  if (csv_path) {
    std::ofstream out(*csv_path);
    if (!out) throw InvalidInput("cannot write CSV: " + *csv_path);
    out << csv.str();
  }
  return finish("smoothed-convergence", start, trials * n_values.size(), failure,
                "median steps " + medians);
}

VerifySuiteConfig verify_config_from_json(const nlohmann::json& j) {
  VerifySuiteConfig config;
  if (j.contains("checks"))
    config.checks = j.at("checks").get<std::vector<std::string>>();
  config.scale = j.value("scale", 1.0);
  config.seed = j.value("seed", std::uint64_t{20240101});
  if (j.contains("convergence_csv"))
    config.convergence_csv = j.at("convergence_csv").get<std::string>();
  return config;
}

std::vector<std::string> verify_check_names() {
  return {"potential-identity", "transformation-identity", "bra-vs-oracle",
          "critical-subsequence", "rank-lemmas",
          "reduction-k2", "reduction-21", "figure1-embedding",
          "congestion-identities", "smoothed-convergence"};
}

std::vector<CheckResult> verify_suite(const VerifySuiteConfig& config) {
  auto scaled = [&](std::uint64_t base) {
    return std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(base * config.scale));
  };
  const std::uint64_t seed = config.seed;

  std::map<std::string, std::function<CheckResult()>> registry;
  registry["potential-identity"] = [&] {
    return check_potential_identity(scaled(1000), 8, 4, seed);
  };
  registry["transformation-identity"] = [&] {
    return check_transformation_identity(scaled(200), seed);
  };
  registry["bra-vs-oracle"] = [&] { return check_bra_vs_oracle(scaled(200), seed); };
  registry["critical-subsequence"] = [&] {
    return check_critical_subsequence(scaled(200), seed);
  };
  registry["rank-lemmas"] = [&] { return check_rank_lemmas(scaled(200), seed); };
  registry["reduction-k2"] = [&] { return check_reduction_k2(scaled(100), seed); };
  registry["reduction-21"] = [&] { return check_reduction_21(scaled(100), seed); };
  registry["figure1-embedding"] = [&] { return check_figure1(scaled(100), seed); };
  registry["congestion-identities"] = [&] {
    return check_congestion(scaled(1000), scaled(500), seed);
  };
  registry["smoothed-convergence"] = [&] {
    return check_smoothed_convergence(scaled(50), {4, 6, 8, 10, 12}, 1000000,
                                      config.convergence_csv, seed);
  };

  std::vector<std::string> names =
      config.checks.empty() ? verify_check_names() : config.checks;
  std::vector<CheckResult> results;
  for (const auto& name : names) {
    auto it = registry.find(name);
    if (it == registry.end()) throw InvalidInput("unknown check: " + name);
    results.push_back(it->second());
  }
  return results;
}

nlohmann::json check_results_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results)
    j.push_back({{"name", r.name},
                 {"pass", r.pass},
                 {"vacuous", r.vacuous},
                 {"cases_run", r.cases_run},
                 {"failures", r.failures},
                 {"replay_seed", r.replay_seed},
                 {"seconds", r.seconds},
                 {"detail", r.detail}});
  return j;
}

}  // namespace netcoord
