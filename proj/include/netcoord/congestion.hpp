#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "netcoord/dynamics.hpp"
#include "netcoord/rational.hpp"

namespace netcoord {

// (k,l)-congestion game: at most k strategies per player, every resource in
// at most l strategies overall. Costs are given through nonnegative
// differentials d_e(i) in [0,1] for i >= 1 (d_e(0) = c_e(0) is free), which
// forces the cumulative costs c_e(i) to be monotone.
class CongestionGame {
public:
  CongestionGame(int resource_count, int k_cap, int ell_cap,
                 std::vector<std::vector<std::vector<int>>> strategy_sets,
                 std::vector<std::vector<Rational>> differentials);

  int player_count() const { return static_cast<int>(strategy_sets_.size()); }
  int resource_count() const { return r_; }
  int k_cap() const { return k_; }
  int ell_cap() const { return ell_; }
  const std::vector<std::vector<int>>& strategies(int player) const;
  const std::vector<int>& strategy_resources(int player, int s) const;
  const Rational& differential(int e, int load) const;
  const Rational& cost(int e, int load) const;  // c_e(load)
  const std::vector<std::vector<Rational>>& differentials() const {
    return differentials_;
  }

private:
  int r_;
  int k_;
  int ell_;
  std::vector<std::vector<std::vector<int>>> strategy_sets_;
  std::vector<std::vector<Rational>> differentials_;  // [resource][0..n]
  std::vector<std::vector<Rational>> costs_;          // prefix sums of the above
};

// choice[i] indexes into player i's strategy set.
using CongestionProfile = std::vector<int>;

void validate_congestion_profile(const CongestionGame& game,
                                 const CongestionProfile& profile);

std::vector<int> resource_loads(const CongestionGame& game,
                                const CongestionProfile& profile);

// Rosenthal potential: sum over resources of sum_{i=0..n_e} c_e(i).
Rational congestion_potential(const CongestionGame& game,
                              const CongestionProfile& profile);

Rational player_cost(const CongestionGame& game,
                     const CongestionProfile& profile, int player);

// Strictly cost-decreasing deviations, ordered by (player, strategy index).
std::vector<std::pair<Move, Rational>> improving_deviations(
    const CongestionGame& game, const CongestionProfile& profile);

bool is_congestion_pne(const CongestionGame& game,
                       const CongestionProfile& profile);

struct CongestionTrace {
  std::shared_ptr<const CongestionGame> game;
  CongestionProfile initial;
  std::vector<Move> moves;  // strategy field = 0-based strategy index
  std::vector<CongestionProfile> profiles;
  std::vector<Rational> potential_deltas;  // strictly negative (cost minimized)
  RunOutcome outcome = RunOutcome::kConvergedToPne;
  std::string rule_name;
  std::uint64_t seed = 0;

  std::size_t length() const { return moves.size(); }
};

// Better-response dynamics minimizing cost directly; each step strictly
// decreases the Rosenthal potential.
CongestionTrace run_bra_congestion(std::shared_ptr<const CongestionGame> game,
                                   const CongestionProfile& initial,
                                   const PivotRule& rule,
                                   std::uint64_t step_cap, std::uint64_t seed);

// Rows are (resource, load) with load in 0..l.
using CongestionRowKey = std::pair<int, int>;
using CongestionMoveVector = std::map<CongestionRowKey, int>;

// Move vector L: +1 where a resource's load arrives, -1 where it leaves.
// <L, C> with the cumulative-cost vector C((e,i)) = sum_{j<=i} c_e(j) equals
// the potential change of the move.
CongestionMoveVector congestion_move_vector(const CongestionGame& game,
                                            const CongestionProfile& before,
                                            const Move& move);

Rational congestion_inner_product(const CongestionMoveVector& vec,
                                  const CongestionGame& game);

// The appendix's V(u) sums every move vector between the two occurrences of a
// repeated (player, strategy) pair; whether the first occurrence's own vector
// is included differs between the two constructions in the source material,
// so both are available.
enum class CyclicConvention { kIncludeFirstMove, kExcludeFirstMove };

std::vector<std::pair<int, CongestionMoveVector>> congestion_cyclic_sums(
    const CongestionTrace& trace, std::size_t begin, std::size_t end,
    CyclicConvention convention);

// Random (k,l)-instance: strategy sets respect both caps by construction,
// differentials uniform on [0,1] over the 1/2^grid_log2 grid, d_e(0) = 0.
CongestionGame sample_congestion_game(int players, int resources, int k_cap,
                                      int ell_cap, int grid_log2,
                                      std::uint64_t seed);

}  // namespace netcoord
