#include "netcoord/dynamics.hpp"

#include <algorithm>
#include <utility>

#include "netcoord/errors.hpp"
#include "netcoord/rng.hpp"

namespace netcoord {

std::string PivotRule::name() const {
  switch (kind) {
    case PivotKind::kFirstImproving: return "first";
    case PivotKind::kBestImproving: return "best";
    case PivotKind::kRandomImproving: return "random";
    case PivotKind::kAdversarialScript: return "script";
  }
  return "?";
}

PivotRule pivot_rule_from_name(const std::string& name) {
  if (name == "first") return PivotRule::first();
  if (name == "best") return PivotRule::best();
  if (name == "random") return PivotRule::random();
  throw InvalidInput("unknown pivot rule: " + name);
}

namespace {

// improving_moves returns (player, strategy)-sorted moves, so "first" is the
// front and "best" resolves ties by taking the earliest maximum.
std::size_t select_move(const std::vector<std::pair<Move, Rational>>& options,
                        PivotKind kind, RngStream& rng) {
  switch (kind) {
    case PivotKind::kFirstImproving:
      return 0;
    case PivotKind::kBestImproving: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < options.size(); ++i)
        if (options[i].second > options[best].second) best = i;
      return best;
    }
    case PivotKind::kRandomImproving:
      return static_cast<std::size_t>(rng.next_below(options.size()));
    case PivotKind::kAdversarialScript:
      break;
  }
  throw InvalidInput("scripted rule has no selection order");
}

}  // namespace

BRTrace run_bra(std::shared_ptr<const GameInstance> game,
                const StrategyProfile& initial, const PivotRule& rule,
                std::uint64_t step_cap, std::uint64_t seed) {
  if (!game) throw InvalidInput("null game");
  validate_profile(*game, initial);

  BRTrace trace;
  trace.game = game;
  trace.initial = initial;
  trace.profiles.push_back(initial);
  trace.rule_name = rule.name();
  trace.seed = seed;

  StrategyProfile profile = initial;
  RngStream rng(seed, {hash_str("bra-pivot")});

  if (rule.kind == PivotKind::kAdversarialScript) {
    for (std::size_t t = 0; t < rule.script.size(); ++t) {
      if (trace.length() >= step_cap) {
        trace.outcome = RunOutcome::kStepCapReached;
        return trace;
      }
      const Move& move = rule.script[t];
      if (move.player < 0 || move.player >= game->player_count() ||
          move.strategy < 1 || move.strategy > game->strategy_count())
        throw ScriptInvalid(t, "scripted move out of range at step " +
                                   std::to_string(t));
      if (profile[move.player] == move.strategy)
        throw ScriptInvalid(
            t, "scripted move repeats the current strategy at step " +
                   std::to_string(t));
      Rational before = player_payoff(*game, profile, move.player);
      StrategyProfile next = profile;
      next[move.player] = move.strategy;
      Rational delta = player_payoff(*game, next, move.player) - before;
      if (delta <= 0)
        throw ScriptInvalid(t, "scripted move is not improving at step " +
                                   std::to_string(t));
      profile = std::move(next);
      trace.moves.push_back(move);
      trace.profiles.push_back(profile);
      trace.deltas.push_back(std::move(delta));
    }
    // a script that stops short of a PNE is a truncated run, not a failure
    trace.outcome = is_pne(*game, profile) ? RunOutcome::kConvergedToPne
                                           : RunOutcome::kStepCapReached;
    return trace;
  }

  while (true) {
    auto options = improving_moves(*game, profile);
    if (options.empty()) {
      trace.outcome = RunOutcome::kConvergedToPne;
      return trace;
    }
    if (trace.length() >= step_cap) {
      trace.outcome = RunOutcome::kStepCapReached;
      return trace;
    }
    auto& [move, delta] = options[select_move(options, rule.kind, rng)];
    profile[move.player] = move.strategy;
    trace.moves.push_back(move);
    trace.profiles.push_back(profile);
    trace.deltas.push_back(std::move(delta));
  }
}

ReplayResult replay(std::shared_ptr<const GameInstance> game,
                    const StrategyProfile& initial,
                    const std::vector<Move>& moves) {
  if (!game) throw InvalidInput("null game");
  validate_profile(*game, initial);

  BRTrace trace;
  trace.game = game;
  trace.initial = initial;
  trace.profiles.push_back(initial);
  trace.rule_name = "replay";

  StrategyProfile profile = initial;
  for (std::size_t t = 0; t < moves.size(); ++t) {
    const Move& move = moves[t];
    if (move.player < 0 || move.player >= game->player_count() ||
        move.strategy < 1 || move.strategy > game->strategy_count())
      throw InvalidInput("replay move out of range at step " + std::to_string(t));
    if (profile[move.player] == move.strategy)
      throw InvalidInput("replay move repeats the current strategy at step " +
                         std::to_string(t));
    Rational before = player_payoff(*game, profile, move.player);
    StrategyProfile next = profile;
    next[move.player] = move.strategy;
    Rational delta = player_payoff(*game, next, move.player) - before;
    if (delta <= 0) return {std::nullopt, ReplayViolation{t, std::move(delta)}};
    profile = std::move(next);
    trace.moves.push_back(move);
    trace.profiles.push_back(profile);
    trace.deltas.push_back(std::move(delta));
  }
  trace.outcome = is_pne(*game, profile) ? RunOutcome::kConvergedToPne
                                         : RunOutcome::kStepCapReached;
  return {std::move(trace), std::nullopt};
}

Rational min_improvement(const BRTrace& trace, std::size_t window) {
  if (window < 1 || window > trace.length())
    throw InvalidInput("window must satisfy 1 <= N <= trace length");
  // prefix sums of the step gains
  std::vector<Rational> prefix(trace.length() + 1, rat(0));
  for (std::size_t t = 0; t < trace.length(); ++t)
    prefix[t + 1] = prefix[t] + trace.deltas[t];
  Rational best = prefix[window] - prefix[0];
  for (std::size_t start = 1; start + window <= trace.length(); ++start) {
    Rational gain = prefix[start + window] - prefix[start];
    if (gain < best) best = std::move(gain);
  }
  return best;
}

}  // namespace netcoord
