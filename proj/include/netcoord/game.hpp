#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "netcoord/rational.hpp"

namespace netcoord {

// One better-response step: `player` switches to `strategy`.
// Strategies are 1-based; 0 is reserved for the reduction module's dummy.
struct Move {
  int player = 0;
  int strategy = 0;
  friend auto operator<=>(const Move&, const Move&) = default;
};

// strategies[u] in 1..k (0..k only in the reduction's extended profiles).
using StrategyProfile = std::vector<int>;

// A k-strategy network coordination game: an undirected graph whose edges
// carry shared k x k payoff matrices. Both endpoints of an edge read the same
// entry, keyed by (lower-id endpoint's strategy, higher-id endpoint's
// strategy). Immutable after construction.
class GameInstance {
public:
  // matrices[e] is row-major k*k: entry(i,j) at (i-1)*k + (j-1).
  GameInstance(int n, int k, std::vector<std::pair<int, int>> edges,
               std::vector<std::vector<Rational>> matrices,
               Rational range_lo = rat(-1), Rational range_hi = rat(1));

  int player_count() const { return n_; }
  int strategy_count() const { return k_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // i is the strategy of the lower-id endpoint, j of the higher-id one.
  const Rational& entry(int edge_idx, int i, int j) const;
  // Orders (u,i) / (v,j) internally; requires the edge to exist.
  const Rational& payoff_on_edge(int u, int i, int v, int j) const;

  int edge_index(int u, int v) const;  // -1 if absent
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  // (neighbor, edge index) pairs for u.
  const std::vector<std::pair<int, int>>& incident(int u) const;
  int degree(int u) const { return static_cast<int>(incident(u).size()); }

  const Rational& range_lo() const { return range_lo_; }
  const Rational& range_hi() const { return range_hi_; }

private:
  int n_;
  int k_;
  std::vector<std::pair<int, int>> edges_;         // u < v, no duplicates
  std::vector<std::vector<Rational>> matrices_;    // per edge, k*k row-major
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  Rational range_lo_, range_hi_;
};

void validate_profile(const GameInstance& game, const StrategyProfile& profile);

// Sum over edges of the selected payoff entries (the potential function).
Rational potential(const GameInstance& game, const StrategyProfile& profile);

Rational player_payoff(const GameInstance& game, const StrategyProfile& profile,
                       int u);

// All strictly improving unilateral deviations with their exact payoff gains,
// ordered by (player, strategy). Empty iff `profile` is a PNE.
std::vector<std::pair<Move, Rational>> improving_moves(
    const GameInstance& game, const StrategyProfile& profile);

bool is_pne(const GameInstance& game, const StrategyProfile& profile);

inline constexpr std::uint64_t kDefaultOracleCap = 1000000;

// Brute-force oracle over all k^n profiles, in lexicographic order.
// Throws CapExceeded if k^n > profile_cap. Never returns an empty set.
std::vector<StrategyProfile> enumerate_pne(
    const GameInstance& game, std::uint64_t profile_cap = kDefaultOracleCap);

}  // namespace netcoord
