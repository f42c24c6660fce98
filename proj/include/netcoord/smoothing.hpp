#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netcoord/game.hpp"
#include "netcoord/maxcut.hpp"
#include "netcoord/rational.hpp"

namespace netcoord {

enum class NoiseModel {
  kUniformFull,    // uniform on [-1,1]; density 1/2, so requires phi >= 1/2
  kUniformWindow,  // base + uniform noise of half-width 1/(2 phi), clipped
};

// Bounded-density perturbation model. Samples land on integer multiples of
// 1/2^grid_log2 so downstream arithmetic stays exact-rational.
struct PerturbationSpec {
  Rational phi = rat(1, 2);
  NoiseModel distribution = NoiseModel::kUniformFull;
  int grid_log2 = 30;

  std::uint64_t grid_resolution() const { return std::uint64_t{1} << grid_log2; }
  void validate() const;
};

struct GraphTopology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

GraphTopology complete_graph(int n);
GraphTopology path_graph(int n);
// Each pair kept independently with exact probability p (a rational in [0,1]).
GraphTopology erdos_renyi(int n, const Rational& p, std::uint64_t seed);

// Every payoff entry drawn independently from the spec's distribution on the
// declared grid; stream keyed by (seed, edge index, i, j), so the result is
// bit-identical regardless of sampling order.
GameInstance sample_instance(const GraphTopology& graph, int k,
                             const PerturbationSpec& spec, std::uint64_t seed);

// base entry + independent window noise, clipped to [-1,1]; topology and
// matrices' shape unchanged. Requires distribution == kUniformWindow.
GameInstance perturb_instance(const GameInstance& base,
                              const PerturbationSpec& spec, std::uint64_t seed);

// Figure-1 embedding: each weight-w edge becomes a 2-strategy coordination
// game [[0,w],[w,0]], so the potential of any profile equals the crossing
// weight of the bipartition {u : sigma_u = 1} vs {u : sigma_u = 2}.
GameInstance from_maxcut(const CutInstance& graph);

}  // namespace netcoord
