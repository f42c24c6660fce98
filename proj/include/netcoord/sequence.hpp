#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "netcoord/dynamics.hpp"
#include "netcoord/game.hpp"
#include "netcoord/linalg.hpp"
#include "netcoord/rational.hpp"

namespace netcoord {

// Row index of a payoff entry: ((u,i)(v,j)) with u < v, lexicographic order.
struct PayoffRowKey {
  int u = 0;
  int i = 0;
  int v = 0;
  int j = 0;
  friend auto operator<=>(const PayoffRowKey&, const PayoffRowKey&) = default;
};

PayoffRowKey payoff_row(int u, int i, int v, int j);

// Sparse {-1,0,+1} vector over payoff entries; cyclic sums reuse the type
// with general integer values.
using TransformationVector = std::map<PayoffRowKey, int>;

// Classification of a move range per the sequence notation:
//   p active players = p1 non-repeating + p2 repeating,
//   d distinct (player,strategy) pairs, q0 distinct players with a return
//   move (relative to the range's start profile), d1 moves by non-repeating
//   players.
struct SequenceStats {
  int p = 0;
  int p1 = 0;
  int p2 = 0;
  int d = 0;
  int q0 = 0;
  int d1 = 0;
  std::size_t length = 0;
  bool log_repeating = false;
};

struct SeparatedBlock {
  std::size_t begin = 0;  // half-open move-index range within the trace
  std::size_t end = 0;
  std::optional<Move> boundary;  // move at the block's left endpoint; none for S_0
};

// Game-agnostic view of a recorded move sequence: works for coordination
// traces (strategies 1..k) and congestion traces (strategy indices) alike.
struct MoveSequenceView {
  const std::vector<Move>* moves = nullptr;
  const std::vector<std::vector<int>>* profiles = nullptr;  // profiles[t], t in 0..moves
  int player_count = 0;
  int strategy_count = 0;  // k, for the log-repeating threshold
};

MoveSequenceView view_of(const BRTrace& trace);

SequenceStats classify(const MoveSequenceView& view, std::size_t begin,
                       std::size_t end);

// Blocks S_0..S_m between consecutive moves of non-repeating players
// (non-repeating relative to [begin,end)); together with those boundary moves
// they partition the range.
std::vector<SeparatedBlock> separated_blocks(const MoveSequenceView& view,
                                             std::size_t begin, std::size_t end);

// Leftmost (then shortest) inclusion-minimal contiguous subrange B with
// l(B) >= 2(d(B) - q0(B)), stats relative to B's own start profile. The
// returned range always satisfies the equality l(B) = 2(d(B) - q0(B)).
// Throws NoCriticalSubsequence if the whole range fails the precondition.
std::pair<std::size_t, std::size_t> find_critical_subsequence(
    const MoveSequenceView& view, std::size_t begin, std::size_t end);

// --- transformation machinery (needs the game for edge structure) ---

TransformationVector transformation_vector(const BRTrace& trace, std::size_t t);

std::vector<TransformationVector> transformation_set(const BRTrace& trace,
                                                     std::size_t begin,
                                                     std::size_t end);

// <L, A>: applies the sparse vector to the game's payoff entries.
Rational inner_product(const TransformationVector& vec, const GameInstance& game);

// One cyclic sum V(u) per repeating player, summing u's own transformation
// vectors from just after the first occurrence of the earliest-completed
// repeated pair through its second occurrence.
std::vector<std::pair<int, TransformationVector>> cyclic_sums(
    const BRTrace& trace, std::size_t begin, std::size_t end);

long rank_of(const std::vector<TransformationVector>& vectors);

// --- rank lemma checks ---

struct RankCheck {
  bool applicable = false;
  long bound = 0;
  long rank = 0;
  bool pass = true;  // vacuously true when not applicable
};

// rank(L) >= d1 + sum over separated blocks of (d - q0); needs an inactive
// player (and is stated for complete game graphs).
RankCheck check_rank_dq(const BRTrace& trace, std::size_t begin, std::size_t end);

// rank(L) >= ceil((1 - 1/n)(d - q0)) when every player is active.
RankCheck check_all_active(const BRTrace& trace, std::size_t begin,
                           std::size_t end);

// rank(cyclic sums) >= ceil(p2 / 2).
RankCheck check_rank_p2(const BRTrace& trace, std::size_t begin, std::size_t end);

struct CriticalCheck {
  bool applicable = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool equality = false;        // l(B) == 2(d(B) - q0(B))
  bool subranges_diverse = false;  // every strict contiguous subrange fails it
  bool pass = true;
};

CriticalCheck check_critical(const BRTrace& trace, std::size_t begin,
                             std::size_t end);

}  // namespace netcoord
