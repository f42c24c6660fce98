#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "netcoord/game.hpp"
#include "netcoord/linalg.hpp"
#include "netcoord/maxcut.hpp"
#include "netcoord/rational.hpp"

namespace netcoord {

// Auxiliary randomness for the k-strategy -> 2-FlipMaxCut reduction:
//   a0, y(u,i) on [0, 1/2);  w(u,i) on [-1, 0);  r(u,i<j) strictly negative.
//
// R's magnitude is what makes duplicate (u,*) nodes worth removing from a
// cut. Removing a duplicate (u,j) gains, per selected co-strategy of u,
//   |E|*A0 + deg(u)(Y(u,j)+Y(u,l)) - 2deg(u)*A0 - R(u,jl)
// minus at most deg(u)/2 + (3/2)k*deg(u) collected back through cross edges,
// so R < -2(k+1)(n-1) makes every invalid cut improvable by one flip. Values
// in [-1,0) do not: cuts holding several nodes of one player can then beat
// every valid cut outright.
struct AuxRandomness {
  Rational a0;
  std::vector<std::vector<Rational>> y;  // [player][strategy-1]
  std::vector<std::vector<Rational>> w;  // [player][strategy-1]
  std::vector<std::vector<Rational>> r;  // [player][pair index for i<j]

  void validate(int n, int k) const;
};

// Flattened index of an (i,j) strategy pair with 1 <= i < j <= k.
int strategy_pair_index(int i, int j, int k);

// kValidityEnforcing draws R from [-(B+1), -B), B = 2(k+1)(n-1), which
// provably leaves no invalid cut locally optimal; kLiteralUnit draws R from
// [-1, 0), under which invalid 2-flip local optima occur routinely.
enum class AuxRangePolicy { kValidityEnforcing, kLiteralUnit };

AuxRandomness sample_aux(int n, int k, int grid_log2, std::uint64_t seed,
                         AuxRangePolicy policy = AuxRangePolicy::kValidityEnforcing);
// Per-player W values on [-1, 0) for the 2-strategy reduction.
std::vector<Rational> sample_player_weights(int n, int grid_log2,
                                            std::uint64_t seed);

// Which sign convention the (u,i)-(v,j) weights follow. The equation system
// in the construction uses Y(u,i) + Y(v,j) - A - A0; the claim statement's
// differing signs are kept behind a toggle for auditing.
enum class WeightConvention { kEquationSystem, kClaimStatement };

struct ReductionArtifacts {
  enum class Variant { kTwoFlip, kOneFlip };

  Variant variant = Variant::kTwoFlip;
  std::shared_ptr<const GameInstance> game;  // the normalized game reduced from
  std::shared_ptr<const CutInstance> cut;
  AuxRandomness aux;                  // kTwoFlip
  std::vector<Rational> player_w;     // kOneFlip
  WeightConvention convention = WeightConvention::kEquationSystem;

  // Affine map that was applied to reach [1/2,1]: a' = a*scale + offset.
  struct Normalization {
    Rational scale = rat(1);
    Rational offset = rat(0);
  } normalization;

  // Node layout: 0 = s, 1 = t, then (u,i) nodes (kTwoFlip) or players (kOneFlip).
  int node_of(int player, int strategy) const;  // strategy ignored for kOneFlip
  int s_node() const { return 0; }
  int t_node() const { return 1; }

  // Integer linear system expressing every edge weight over the input
  // variables, rows in cut-edge order groups, columns in variable order
  // (A entries, R, Y, A0, W).
  IntMatrix system;
  std::vector<std::string> row_labels;
  std::vector<std::string> var_labels;
};

// a -> (a+3)/4, mapping [-1,1] onto [1/2,1]. Throws on out-of-range entries.
GameInstance normalize_payoffs(const GameInstance& game);

// The k-strategy reduction on nk+2 nodes. Requires payoffs in [1/2,1], k >= 2.
ReductionArtifacts reduce_k_to_2flip(
    std::shared_ptr<const GameInstance> normalized, const AuxRandomness& aux,
    WeightConvention convention = WeightConvention::kEquationSystem);

// The 2-strategy reduction on n+2 nodes. Requires payoffs in [1/2,1], k == 2.
ReductionArtifacts reduce_2_to_1flip(
    std::shared_ptr<const GameInstance> normalized,
    const std::vector<Rational>& player_w);

struct LiftedProfile {
  StrategyProfile profile;  // entries 0..k (0 = dummy) for kTwoFlip, 1..2 for kOneFlip
  bool valid = true;        // false iff some player has two nodes on the s side
};

// Reads the strategy profile off a cut. Requires s in S, t not in S.
LiftedProfile map_cut_to_profile(const ReductionArtifacts& artifacts,
                                 const VertexSet& s_side);

// --- extended game: original payoffs plus dummy-strategy entries ---
// A((u,i)(v,0)) = Y(u,i), A((u,0)(v,0)) = A0. Profiles take entries 0..k.

Rational extended_potential(const ReductionArtifacts& artifacts,
                            const StrategyProfile& profile);
Rational extended_player_payoff(const ReductionArtifacts& artifacts,
                                const StrategyProfile& profile, int u);
bool extended_is_pne(const ReductionArtifacts& artifacts,
                     const StrategyProfile& profile);
std::vector<StrategyProfile> extended_enumerate_pne(
    const ReductionArtifacts& artifacts,
    std::uint64_t profile_cap = kDefaultOracleCap);

// Weak-smoothness certificate: the edge weights as integer linear
// combinations of the inputs. For the 2-flip variant this verifies Claim 2's
// square, integer, full-rank system and the block-triangular witness after
// the w-hat row operation on the (u,i)-t rows; for the 1-flip variant it
// certifies integrality and row linear-independence.
struct SmoothnessCertificate {
  bool square = false;
  bool integral = false;
  long rank = 0;
  long rows = 0;
  long dimension = 0;  // number of input variables
  bool full_rank = false;
  bool triangular_after_row_ops = false;
  std::vector<std::string> diagonal_blocks;  // witness description
  bool pass = false;
  std::string detail;
};

SmoothnessCertificate check_weak_smoothness(const ReductionArtifacts& artifacts);

}  // namespace netcoord
