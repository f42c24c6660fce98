#include "netcoord/congestion.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "netcoord/errors.hpp"
#include "netcoord/rng.hpp"

namespace netcoord {

CongestionGame::CongestionGame(
    int resource_count, int k_cap, int ell_cap,
    std::vector<std::vector<std::vector<int>>> strategy_sets,
    std::vector<std::vector<Rational>> differentials)
    : r_(resource_count),
      k_(k_cap),
      ell_(ell_cap),
      strategy_sets_(std::move(strategy_sets)),
      differentials_(std::move(differentials)) {
  if (r_ < 0) throw InvalidInput("negative resource count");
  if (k_ < 1 || ell_ < 1) throw InvalidInput("k and ell caps must be >= 1");
  const int n = player_count();

  std::vector<int> memberships(r_, 0);
  for (auto& strategies : strategy_sets_) {
    if (strategies.empty() || static_cast<int>(strategies.size()) > k_)
      throw InvalidInput("player needs between 1 and k strategies");
    for (auto& s : strategies) {
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InvalidInput("strategy lists a resource twice");
      for (int e : s) {
        if (e < 0 || e >= r_) throw InvalidInput("resource id out of range");
        ++memberships[e];
      }
    }
  }
  for (int e = 0; e < r_; ++e)
    if (memberships[e] > ell_)
      throw InvalidInput("resource " + std::to_string(e) +
                         " belongs to more than ell strategies");

  if (static_cast<int>(differentials_.size()) != r_)
    throw InvalidInput("one differential vector required per resource");
  for (const auto& d : differentials_) {
    if (static_cast<int>(d.size()) != n + 1)
      throw InvalidInput("differential vector must cover loads 0..n");
    for (std::size_t i = 1; i < d.size(); ++i)
      if (d[i] < 0 || d[i] > 1)
        throw InvalidInput("differential outside [0,1] at load >= 1");
  }

  costs_.resize(r_);
  for (int e = 0; e < r_; ++e) {
    Rational running = 0;
    for (const auto& d : differentials_[e]) {
      running += d;
      costs_[e].push_back(running);
    }
  }
}

const std::vector<std::vector<int>>& CongestionGame::strategies(int player) const {
  if (player < 0 || player >= player_count())
    throw InvalidInput("player id out of range");
  return strategy_sets_[player];
}

const std::vector<int>& CongestionGame::strategy_resources(int player,
                                                           int s) const {
  const auto& all = strategies(player);
  if (s < 0 || s >= static_cast<int>(all.size()))
    throw InvalidInput("strategy index out of range");
  return all[s];
}

const Rational& CongestionGame::differential(int e, int load) const {
  if (e < 0 || e >= r_ || load < 0 || load > player_count())
    throw InvalidInput("differential index out of range");
  return differentials_[e][load];
}

const Rational& CongestionGame::cost(int e, int load) const {
  if (e < 0 || e >= r_ || load < 0 || load > player_count())
    throw InvalidInput("cost index out of range");
  return costs_[e][load];
}

void validate_congestion_profile(const CongestionGame& game,
                                 const CongestionProfile& profile) {
  if (static_cast<int>(profile.size()) != game.player_count())
    throw InvalidInput("profile length does not match player count");
  for (int i = 0; i < game.player_count(); ++i)
    if (profile[i] < 0 ||
        profile[i] >= static_cast<int>(game.strategies(i).size()))
      throw InvalidInput("strategy index out of range in profile");
}

std::vector<int> resource_loads(const CongestionGame& game,
                                const CongestionProfile& profile) {
  validate_congestion_profile(game, profile);
  std::vector<int> loads(game.resource_count(), 0);
  for (int i = 0; i < game.player_count(); ++i)
    for (int e : game.strategy_resources(i, profile[i])) ++loads[e];
  return loads;
}

Rational congestion_potential(const CongestionGame& game,
                              const CongestionProfile& profile) {
  const std::vector<int> loads = resource_loads(game, profile);
  Rational total = 0;
  for (int e = 0; e < game.resource_count(); ++e)
    for (int i = 0; i <= loads[e]; ++i) total += game.cost(e, i);
  return total;
}

Rational player_cost(const CongestionGame& game,
                     const CongestionProfile& profile, int player) {
  validate_congestion_profile(game, profile);
  if (player < 0 || player >= game.player_count())
    throw InvalidInput("player id out of range");
  const std::vector<int> loads = resource_loads(game, profile);
  Rational total = 0;
  for (int e : game.strategy_resources(player, profile[player]))
    total += game.cost(e, loads[e]);
  return total;
}

std::vector<std::pair<Move, Rational>> improving_deviations(
    const CongestionGame& game, const CongestionProfile& profile) {
  validate_congestion_profile(game, profile);
  std::vector<std::pair<Move, Rational>> result;
  for (int i = 0; i < game.player_count(); ++i) {
    const Rational current = player_cost(game, profile, i);
    CongestionProfile deviated = profile;
    for (int s = 0; s < static_cast<int>(game.strategies(i).size()); ++s) {
      if (s == profile[i]) continue;
      deviated[i] = s;
      Rational saving = current - player_cost(game, deviated, i);
      if (saving > 0) result.push_back({Move{i, s}, std::move(saving)});
    }
  }
  return result;
}

bool is_congestion_pne(const CongestionGame& game,
                       const CongestionProfile& profile) {
  return improving_deviations(game, profile).empty();
}

CongestionTrace run_bra_congestion(std::shared_ptr<const CongestionGame> game,
                                   const CongestionProfile& initial,
                                   const PivotRule& rule,
                                   std::uint64_t step_cap, std::uint64_t seed) {
  if (!game) throw InvalidInput("null game");
  validate_congestion_profile(*game, initial);

  CongestionTrace trace;
  trace.game = game;
  trace.initial = initial;
  trace.profiles.push_back(initial);
  trace.rule_name = rule.name();
  trace.seed = seed;

  CongestionProfile profile = initial;
  RngStream rng(seed, {hash_str("congestion-pivot")});

  if (rule.kind == PivotKind::kAdversarialScript) {
    for (std::size_t t = 0; t < rule.script.size(); ++t) {
      if (trace.length() >= step_cap) {
        trace.outcome = RunOutcome::kStepCapReached;
        return trace;
      }
      const Move& move = rule.script[t];
      if (move.player < 0 || move.player >= game->player_count() ||
          move.strategy < 0 ||
          move.strategy >=
              static_cast<int>(game->strategies(move.player).size()))
        throw ScriptInvalid(t, "scripted move out of range at step " +
                                   std::to_string(t));
      if (profile[move.player] == move.strategy)
        throw ScriptInvalid(
            t, "scripted move repeats the current strategy at step " +
                   std::to_string(t));
      const Rational before = congestion_potential(*game, profile);
      profile[move.player] = move.strategy;
      Rational delta = congestion_potential(*game, profile) - before;
      if (delta >= 0)
        throw ScriptInvalid(t, "scripted move does not decrease cost at step " +
                                   std::to_string(t));
      trace.moves.push_back(move);
      trace.profiles.push_back(profile);
      trace.potential_deltas.push_back(std::move(delta));
    }
    trace.outcome = is_congestion_pne(*game, profile)
                        ? RunOutcome::kConvergedToPne
                        : RunOutcome::kStepCapReached;
    return trace;
  }

  while (true) {
    auto options = improving_deviations(*game, profile);
    if (options.empty()) {
      trace.outcome = RunOutcome::kConvergedToPne;
      return trace;
    }
    if (trace.length() >= step_cap) {
      trace.outcome = RunOutcome::kStepCapReached;
      return trace;
    }
    std::size_t pick = 0;
    switch (rule.kind) {
      case PivotKind::kFirstImproving:
        break;
      case PivotKind::kBestImproving:
        for (std::size_t i = 1; i < options.size(); ++i)
          if (options[i].second > options[pick].second) pick = i;
        break;
      case PivotKind::kRandomImproving:
        pick = static_cast<std::size_t>(rng.next_below(options.size()));
        break;
      case PivotKind::kAdversarialScript:
        break;  // handled above
    }
    const auto& [move, saving] = options[pick];
    profile[move.player] = move.strategy;
    trace.moves.push_back(move);
    trace.profiles.push_back(profile);
    trace.potential_deltas.push_back(-saving);  // cost delta = potential delta
  }
}

CongestionMoveVector congestion_move_vector(const CongestionGame& game,
                                            const CongestionProfile& before,
                                            const Move& move) {
  validate_congestion_profile(game, before);
  if (move.player < 0 || move.player >= game.player_count())
    throw InvalidInput("player id out of range");
  if (move.strategy < 0 ||
      move.strategy >= static_cast<int>(game.strategies(move.player).size()))
    throw InvalidInput("strategy index out of range");
  if (before[move.player] == move.strategy)
    throw InvalidInput("degenerate move: player already plays that strategy");

  const std::vector<int> loads = resource_loads(game, before);
  const auto& old_set = game.strategy_resources(move.player, before[move.player]);
  const auto& new_set = game.strategy_resources(move.player, move.strategy);
  const std::set<int> old_resources(old_set.begin(), old_set.end());
  const std::set<int> new_resources(new_set.begin(), new_set.end());

  CongestionMoveVector vec;
  auto bump = [&](int e, int load, int delta) {
    if (load > game.ell_cap())
      throw InvalidInput("load exceeds ell; (k,ell) caps violated");
    auto key = CongestionRowKey{e, load};
    vec[key] += delta;
    if (vec[key] == 0) vec.erase(key);
  };
  for (int e : old_resources) {
    if (new_resources.contains(e)) continue;  // load unchanged
    bump(e, loads[e] - 1, +1);
    bump(e, loads[e], -1);
  }
  for (int e : new_resources) {
    if (old_resources.contains(e)) continue;
    bump(e, loads[e] + 1, +1);
    bump(e, loads[e], -1);
  }
  return vec;
}

Rational congestion_inner_product(const CongestionMoveVector& vec,
                                  const CongestionGame& game) {
  // C((e,i)) = sum_{j<=i} c_e(j)
  Rational total = 0;
  for (const auto& [key, coeff] : vec) {
    if (coeff == 0) continue;
    Rational c_sum = 0;
    for (int j = 0; j <= key.second; ++j) c_sum += game.cost(key.first, j);
    total += coeff * c_sum;
  }
  return total;
}

std::vector<std::pair<int, CongestionMoveVector>> congestion_cyclic_sums(
    const CongestionTrace& trace, std::size_t begin, std::size_t end,
    CyclicConvention convention) {
  if (begin > end || end > trace.length())
    throw InvalidInput("move range out of bounds");
  const CongestionProfile& ref = trace.profiles[begin];

  std::vector<std::pair<int, CongestionMoveVector>> sums;
  std::set<int> done;
  for (std::size_t t = begin; t < end; ++t) {
    const int u = trace.moves[t].player;
    if (done.contains(u)) continue;

    // earliest completed repeat of some (u, strategy) pair; a move back to
    // the range-start strategy completes a virtual first occurrence that
    // precedes every move
    std::optional<std::pair<std::size_t, std::size_t>> window;  // [t_first, t_second]
    bool virtual_first = false;
    std::map<int, std::size_t> first_seen;
    for (std::size_t s = begin; s < end && !window; ++s) {
      if (trace.moves[s].player != u) continue;
      const int strategy = trace.moves[s].strategy;
      if (strategy == ref[u]) {
        window = {begin, s};
        virtual_first = true;
        break;
      }
      auto [it, inserted] = first_seen.emplace(strategy, s);
      if (!inserted) window = {it->second, s};
    }
    if (!window) continue;
    done.insert(u);

    std::size_t from = window->first;
    if (!virtual_first && convention == CyclicConvention::kExcludeFirstMove)
      from += 1;

    CongestionMoveVector v;
    for (std::size_t s = from; s <= window->second; ++s) {
      const auto step = congestion_move_vector(*trace.game, trace.profiles[s],
                                               trace.moves[s]);
      for (const auto& [key, coeff] : step) {
        v[key] += coeff;
        if (v[key] == 0) v.erase(key);
      }
    }
    sums.emplace_back(u, std::move(v));
  }
  return sums;
}

CongestionGame sample_congestion_game(int players, int resources, int k_cap,
                                      int ell_cap, int grid_log2,
                                      std::uint64_t seed) {
  if (players < 1 || resources < 1) throw InvalidInput("need players and resources");
  if (grid_log2 < 1 || grid_log2 > 62) throw InvalidInput("grid_log2 out of range");
  const std::uint64_t res = std::uint64_t{1} << grid_log2;

  std::vector<int> remaining(resources, ell_cap);
  std::vector<std::vector<std::vector<int>>> strategy_sets(players);
  for (int i = 0; i < players; ++i) {
    for (int s = 0; s < k_cap; ++s) {
      RngStream stream(seed, {hash_str("congestion-strategy"), std::uint64_t(i),
                              std::uint64_t(s)});
      std::vector<int> open;
      for (int e = 0; e < resources; ++e)
        if (remaining[e] > 0) open.push_back(e);
      std::vector<int> chosen;
      const int want =
          1 + static_cast<int>(stream.next_below(std::min<std::uint64_t>(3, resources)));
      for (int pick = 0; pick < want && !open.empty(); ++pick) {
        const std::size_t at =
            static_cast<std::size_t>(stream.next_below(open.size()));
        chosen.push_back(open[at]);
        --remaining[open[at]];
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(at));
      }
      strategy_sets[i].push_back(std::move(chosen));  // may be empty; legal
    }
  }

  std::vector<std::vector<Rational>> differentials(resources);
  for (int e = 0; e < resources; ++e) {
    differentials[e].push_back(rat(0));  // c_e(0) = 0 unless specified
    for (int load = 1; load <= players; ++load) {
      RngStream stream(seed, {hash_str("congestion-diff"), std::uint64_t(e),
                              std::uint64_t(load)});
      Rational d(static_cast<long>(stream.next_in_range(
                     0, static_cast<std::int64_t>(res))),
                 1);
      d /= Rational(static_cast<unsigned long>(res));
      differentials[e].push_back(std::move(d));
    }
  }
  return CongestionGame(resources, k_cap, ell_cap, std::move(strategy_sets),
                        std::move(differentials));
}

}  // namespace netcoord
