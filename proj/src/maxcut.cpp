#include "netcoord/maxcut.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "netcoord/errors.hpp"
#include "netcoord/rng.hpp"

namespace netcoord {

CutInstance::CutInstance(int vertex_count, std::vector<WeightedEdge> edges,
                         std::optional<Terminals> terminals)
    : m_(vertex_count), edges_(std::move(edges)), terminals_(terminals) {
  if (m_ < 0) throw InvalidInput("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.u == e.v) throw InvalidInput("self-loop in cut graph");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= m_) throw InvalidInput("edge endpoint out of range");
    if (!seen.insert({e.u, e.v}).second)
      throw InvalidInput("duplicate cut edge");
  }
  if (terminals_) {
    if (terminals_->s == terminals_->t)
      throw InvalidInput("terminals must be distinct");
    for (int v : {terminals_->s, terminals_->t})
      if (v < 0 || v >= m_) throw InvalidInput("terminal out of range");
  }
  adjacency_.assign(m_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].emplace_back(edges_[e].v, static_cast<int>(e));
    adjacency_[edges_[e].v].emplace_back(edges_[e].u, static_cast<int>(e));
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

const std::vector<std::pair<int, int>>& CutInstance::incident(int v) const {
  if (v < 0 || v >= m_) throw InvalidInput("vertex id out of range");
  return adjacency_[v];
}

bool CutInstance::is_terminal(int v) const {
  return terminals_ && (terminals_->s == v || terminals_->t == v);
}

VertexSet vertex_set_from_ids(int vertex_count, const std::vector<int>& ids) {
  VertexSet s(vertex_count, 0);
  for (int v : ids) {
    if (v < 0 || v >= vertex_count) throw InvalidInput("vertex id out of range");
    s[v] = 1;
  }
  return s;
}

std::vector<int> vertex_set_to_ids(const VertexSet& s) {
  std::vector<int> ids;
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v]) ids.push_back(static_cast<int>(v));
  return ids;
}

Rational cut_weight(const CutInstance& inst, const VertexSet& s) {
  if (static_cast<int>(s.size()) != inst.vertex_count())
    throw InvalidInput("vertex set size mismatch");
  Rational total = 0;
  for (const auto& e : inst.edges())
    if (bool(s[e.u]) != bool(s[e.v])) total += e.w;
  return total;
}

void validate_cut(const CutInstance& inst, const VertexSet& s) {
  if (static_cast<int>(s.size()) != inst.vertex_count())
    throw InvalidInput("vertex set size mismatch");
  int members = 0;
  for (char c : s) members += c ? 1 : 0;
  if (members == 0) throw InvalidInput("cut set must be non-empty");
  if (members == inst.vertex_count())
    throw InvalidInput("cut set must be a proper subset");
  if (inst.terminals()) {
    if (!s[inst.terminals()->s]) throw InvalidInput("terminal s must be inside");
    if (s[inst.terminals()->t]) throw InvalidInput("terminal t must be outside");
  }
}

Rational cut_value(const CutInstance& inst, const VertexSet& s) {
  validate_cut(inst, s);
  return cut_weight(inst, s);
}

namespace {

// Gain of flipping v alone: edges to the other side stop crossing, edges to
// the same side start crossing.
Rational single_flip_gain(const CutInstance& inst, const VertexSet& s, int v) {
  Rational gain = 0;
  for (const auto& [nbr, e] : inst.incident(v)) {
    if (bool(s[nbr]) == bool(s[v]))
      gain += inst.edges()[e].w;
    else
      gain -= inst.edges()[e].w;
  }
  return gain;
}

}  // namespace

std::vector<std::pair<std::vector<int>, Rational>> improving_flips(
    const CutInstance& inst, const VertexSet& s, int d) {
  if (d != 1 && d != 2) throw InvalidInput("flip radius must be 1 or 2");
  if (static_cast<int>(s.size()) != inst.vertex_count())
    throw InvalidInput("vertex set size mismatch");

  const int m = inst.vertex_count();
  std::vector<Rational> gain(m);
  std::vector<int> movable;
  for (int v = 0; v < m; ++v)
    if (!inst.is_terminal(v)) {
      gain[v] = single_flip_gain(inst, s, v);
      movable.push_back(v);
    }

  std::vector<std::pair<std::vector<int>, Rational>> result;
  for (int v : movable)
    if (gain[v] > 0) result.push_back({{v}, gain[v]});

  if (d == 2) {
    auto connecting_edge = [&inst](int v, int w) {
      for (const auto& [nbr, idx] : inst.incident(v))
        if (nbr == w) return idx;
      return -1;
    };
    for (std::size_t a = 0; a < movable.size(); ++a)
      for (std::size_t b = a + 1; b < movable.size(); ++b) {
        const int v = movable[a], w = movable[b];
        Rational delta = gain[v] + gain[w];
        // a shared edge's crossing status is unchanged when both ends flip
        if (int e = connecting_edge(v, w); e >= 0) {
          const Rational& wvw = inst.edges()[e].w;
          delta += bool(s[v]) == bool(s[w]) ? -2 * wvw : 2 * wvw;
        }
        if (delta > 0) result.push_back({{v, w}, std::move(delta)});
      }
  }
  return result;
}

bool is_local_opt(const CutInstance& inst, const VertexSet& s, int d) {
  return improving_flips(inst, s, d).empty();
}

FlipTrace run_flip(std::shared_ptr<const CutInstance> instance, int d,
                   VertexSet initial, const PivotRule& rule,
                   std::uint64_t step_cap, std::uint64_t seed) {
  if (!instance) throw InvalidInput("null cut instance");
  if (rule.kind == PivotKind::kAdversarialScript)
    throw InvalidInput("scripted pivoting is not supported for cut search");
  if (instance->terminals()) {
    if (!initial[instance->terminals()->s] || initial[instance->terminals()->t])
      throw InvalidInput("initial cut violates terminal placement");
  }

  FlipTrace trace;
  trace.instance = instance;
  trace.flip_radius = d;
  trace.initial = initial;
  trace.states.push_back(initial);
  trace.rule_name = rule.name();
  trace.seed = seed;

  VertexSet state = std::move(initial);
  RngStream rng(seed, {hash_str("flip-pivot")});
  while (true) {
    auto options = improving_flips(*instance, state, d);
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
        break;  // rejected above
    }
    auto& [flip, delta] = options[pick];
    for (int v : flip) state[v] = state[v] ? 0 : 1;
    trace.flips.push_back(flip);
    trace.states.push_back(state);
    trace.deltas.push_back(std::move(delta));
  }
}

}  // namespace netcoord
