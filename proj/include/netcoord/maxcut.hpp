#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "netcoord/dynamics.hpp"
#include "netcoord/rational.hpp"

namespace netcoord {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Rational w;
};

struct Terminals {
  int s = 0;
  int t = 0;
};

// Weighted undirected graph for d-flip local max cut. Terminals, when
// present, are pinned: s stays inside the cut set, t outside, and neither is
// ever flipped.
class CutInstance {
public:
  CutInstance(int vertex_count, std::vector<WeightedEdge> edges,
              std::optional<Terminals> terminals = std::nullopt);

  int vertex_count() const { return m_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const std::optional<Terminals>& terminals() const { return terminals_; }
  // (neighbor, edge index) pairs.
  const std::vector<std::pair<int, int>>& incident(int v) const;
  bool is_terminal(int v) const;

private:
  int m_;
  std::vector<WeightedEdge> edges_;
  std::optional<Terminals> terminals_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// members[v] != 0 means v is on the s side.
using VertexSet = std::vector<char>;

VertexSet vertex_set_from_ids(int vertex_count, const std::vector<int>& ids);
std::vector<int> vertex_set_to_ids(const VertexSet& s);

// Crossing weight of an arbitrary bipartition; one-sided partitions score 0.
// This is the evaluation the flip neighborhood uses internally.
Rational cut_weight(const CutInstance& inst, const VertexSet& s);

// Public cut evaluation: requires a non-empty proper subset with correct
// terminal placement. Throws InvalidInput otherwise.
Rational cut_value(const CutInstance& inst, const VertexSet& s);

void validate_cut(const CutInstance& inst, const VertexSet& s);

// All flip sets F (|F| <= d, no terminals) with cut_weight(S xor F) strictly
// above cut_weight(S), each with its exact gain. Order: singletons by vertex
// id, then pairs lexicographically. d must be 1 or 2.
std::vector<std::pair<std::vector<int>, Rational>> improving_flips(
    const CutInstance& inst, const VertexSet& s, int d);

bool is_local_opt(const CutInstance& inst, const VertexSet& s, int d);

struct FlipTrace {
  std::shared_ptr<const CutInstance> instance;
  int flip_radius = 1;
  VertexSet initial;
  std::vector<std::vector<int>> flips;
  std::vector<VertexSet> states;  // states[0] == initial
  std::vector<Rational> deltas;   // strictly positive
  RunOutcome outcome = RunOutcome::kConvergedToPne;
  std::string rule_name;
  std::uint64_t seed = 0;

  std::size_t length() const { return flips.size(); }
};

// FLIP / 2-FLIP local search. Adversarial scripts are not supported here.
FlipTrace run_flip(std::shared_ptr<const CutInstance> instance, int d,
                   VertexSet initial, const PivotRule& rule,
                   std::uint64_t step_cap, std::uint64_t seed);

}  // namespace netcoord
