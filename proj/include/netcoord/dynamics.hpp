#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netcoord/game.hpp"
#include "netcoord/rational.hpp"

namespace netcoord {

enum class PivotKind {
  kFirstImproving,    // lowest (player, strategy) lexicographically
  kBestImproving,     // maximum gain, ties by (player, strategy)
  kRandomImproving,   // uniform over improving moves, seeded
  kAdversarialScript  // externally supplied move list
};

struct PivotRule {
  PivotKind kind = PivotKind::kFirstImproving;
  std::vector<Move> script;  // used only by kAdversarialScript

  static PivotRule first() { return {PivotKind::kFirstImproving, {}}; }
  static PivotRule best() { return {PivotKind::kBestImproving, {}}; }
  static PivotRule random() { return {PivotKind::kRandomImproving, {}}; }
  static PivotRule adversarial(std::vector<Move> moves) {
    return {PivotKind::kAdversarialScript, std::move(moves)};
  }
  std::string name() const;
};

PivotRule pivot_rule_from_name(const std::string& name);

enum class RunOutcome { kConvergedToPne, kStepCapReached };

// A recorded better-response sequence. Profiles are cached at every step so
// the sequence-analysis machinery can read sigma^t directly.
struct BRTrace {
  std::shared_ptr<const GameInstance> game;
  StrategyProfile initial;
  std::vector<Move> moves;
  std::vector<StrategyProfile> profiles;  // profiles[t] after move t; [0] == initial
  std::vector<Rational> deltas;           // strictly positive potential gains
  RunOutcome outcome = RunOutcome::kConvergedToPne;
  std::string rule_name;
  std::uint64_t seed = 0;

  std::size_t length() const { return moves.size(); }
  const StrategyProfile& profile_at(std::size_t t) const { return profiles[t]; }
};

// Runs better-response dynamics from `initial` until a PNE or `step_cap`
// moves. Deterministic given (rule, seed). A script supplying a non-improving
// or degenerate move throws ScriptInvalid with the offending step.
BRTrace run_bra(std::shared_ptr<const GameInstance> game,
                const StrategyProfile& initial, const PivotRule& rule,
                std::uint64_t step_cap, std::uint64_t seed);

struct ReplayViolation {
  std::size_t step = 0;  // 0-based index of the first non-improving move
  Rational delta;
};

struct ReplayResult {
  std::optional<BRTrace> trace;           // set iff every step strictly improves
  std::optional<ReplayViolation> violation;
};

// Validates an externally generated move list. A move that repeats the
// player's current strategy throws InvalidInput; a non-improving move is
// reported, not thrown.
ReplayResult replay(std::shared_ptr<const GameInstance> game,
                    const StrategyProfile& initial,
                    const std::vector<Move>& moves);

// Minimum over all length-`window` contiguous windows of the potential gained
// across the window. Requires 1 <= window <= trace length.
Rational min_improvement(const BRTrace& trace, std::size_t window);

}  // namespace netcoord
