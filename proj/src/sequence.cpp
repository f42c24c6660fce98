#include "netcoord/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "netcoord/errors.hpp"

namespace netcoord {

PayoffRowKey payoff_row(int u, int i, int v, int j) {
  return u < v ? PayoffRowKey{u, i, v, j} : PayoffRowKey{v, j, u, i};
}

MoveSequenceView view_of(const BRTrace& trace) {
  return {&trace.moves, &trace.profiles, trace.game->player_count(),
          trace.game->strategy_count()};
}

namespace {

void validate_range(const MoveSequenceView& view, std::size_t begin,
                    std::size_t end) {
  if (begin > end || end > view.moves->size())
    throw InvalidInput("move range out of bounds");
}

struct RangeStats {
  int d = 0;
  int q0 = 0;
};

// d and q0 of [begin,end) relative to the profile at `begin`.
RangeStats range_d_q0(const MoveSequenceView& view, std::size_t begin,
                      std::size_t end) {
  const auto& ref = (*view.profiles)[begin];
  std::set<std::pair<int, int>> pairs;
  std::set<int> returners;
  for (std::size_t t = begin; t < end; ++t) {
    const Move& m = (*view.moves)[t];
    pairs.insert({m.player, m.strategy});
    if (m.strategy == ref[m.player]) returners.insert(m.player);
  }
  return {static_cast<int>(pairs.size()), static_cast<int>(returners.size())};
}

// Players that repeat a pair or return to their range-start strategy.
std::set<int> repeating_players(const MoveSequenceView& view, std::size_t begin,
                                std::size_t end) {
  const auto& ref = (*view.profiles)[begin];
  std::set<int> repeating;
  std::set<std::pair<int, int>> seen;
  for (std::size_t t = begin; t < end; ++t) {
    const Move& m = (*view.moves)[t];
    if (m.strategy == ref[m.player] || !seen.insert({m.player, m.strategy}).second)
      repeating.insert(m.player);
  }
  return repeating;
}

}  // namespace

SequenceStats classify(const MoveSequenceView& view, std::size_t begin,
                       std::size_t end) {
  validate_range(view, begin, end);
  const auto& ref = (*view.profiles)[begin];

  std::set<int> active;
  std::set<std::pair<int, int>> pairs;
  std::set<int> returners;
  const std::set<int> repeating = repeating_players(view, begin, end);

  std::size_t repeat_occurrences = 0;
  std::set<std::pair<int, int>> seen;
  for (std::size_t t = begin; t < end; ++t) {
    const Move& m = (*view.moves)[t];
    active.insert(m.player);
    pairs.insert({m.player, m.strategy});
    const bool is_return = m.strategy == ref[m.player];
    if (is_return) returners.insert(m.player);
    if (is_return || !seen.insert({m.player, m.strategy}).second)
      ++repeat_occurrences;
  }

  SequenceStats stats;
  stats.p = static_cast<int>(active.size());
  stats.p2 = static_cast<int>(repeating.size());
  stats.p1 = stats.p - stats.p2;
  stats.d = static_cast<int>(pairs.size());
  stats.q0 = static_cast<int>(returners.size());
  stats.length = end - begin;

  int d1 = 0;
  for (std::size_t t = begin; t < end; ++t)
    if (!repeating.contains((*view.moves)[t].player)) ++d1;
  stats.d1 = d1;

  const double nk = static_cast<double>(view.player_count) * view.strategy_count;
  stats.log_repeating =
      nk > 1 && static_cast<double>(repeat_occurrences) >=
                    static_cast<double>(stats.length) / (5.0 * std::log(nk));
  return stats;
}

std::vector<SeparatedBlock> separated_blocks(const MoveSequenceView& view,
                                             std::size_t begin,
                                             std::size_t end) {
  validate_range(view, begin, end);
  const std::set<int> repeating = repeating_players(view, begin, end);

  std::vector<SeparatedBlock> blocks;
  std::size_t block_begin = begin;
  std::optional<Move> boundary;
  for (std::size_t t = begin; t < end; ++t) {
    const Move& m = (*view.moves)[t];
    if (!repeating.contains(m.player)) {
      blocks.push_back({block_begin, t, boundary});
      block_begin = t + 1;
      boundary = m;
    }
  }
  blocks.push_back({block_begin, end, boundary});
  return blocks;
}

std::pair<std::size_t, std::size_t> find_critical_subsequence(
    const MoveSequenceView& view, std::size_t begin, std::size_t end) {
  validate_range(view, begin, end);

  auto satisfied = [](std::size_t len, const RangeStats& s) {
    return len >= 2 * static_cast<std::size_t>(s.d - s.q0);
  };
  if (!satisfied(end - begin, range_d_q0(view, begin, end)))
    throw NoCriticalSubsequence(
        "range violates l >= 2(d - q0); no critical subsequence exists");

  // earliest(b | start a) such that [a,b) satisfies the condition; the
  // incremental d/q0 update makes each start a single left-to-right sweep
  const std::size_t len = end - begin;
  std::vector<std::size_t> first_end(len, end + 1);  // sentinel: none
  for (std::size_t a = begin; a < end; ++a) {
    const auto& ref = (*view.profiles)[a];
    std::set<std::pair<int, int>> pairs;
    std::set<int> returners;
    for (std::size_t b = a + 1; b <= end; ++b) {
      const Move& m = (*view.moves)[b - 1];
      pairs.insert({m.player, m.strategy});
      if (m.strategy == ref[m.player]) returners.insert(m.player);
      const std::size_t bound = 2 * (pairs.size() - returners.size());
      if (b - a >= bound) {
        first_end[a - begin] = b;
        break;
      }
    }
  }

  // a candidate [a, first_end[a]) is inclusion-minimal iff no later start
  // yields a candidate nested inside it
  for (std::size_t a = begin; a < end; ++a) {
    const std::size_t b = first_end[a - begin];
    if (b > end) continue;
    bool minimal = true;
    for (std::size_t a2 = a + 1; a2 < b && minimal; ++a2)
      if (first_end[a2 - begin] <= b) minimal = false;
    if (minimal) return {a, b};
  }
  throw NoCriticalSubsequence("no critical subsequence found");
}

TransformationVector transformation_vector(const BRTrace& trace, std::size_t t) {
  if (t >= trace.length()) throw InvalidInput("step index out of range");
  const GameInstance& game = *trace.game;
  const Move& move = trace.moves[t];
  const StrategyProfile& before = trace.profiles[t];
  const StrategyProfile& after = trace.profiles[t + 1];

  TransformationVector vec;
  for (const auto& [v, e] : game.incident(move.player)) {
    vec[payoff_row(move.player, after[move.player], v, after[v])] += 1;
    vec[payoff_row(move.player, before[move.player], v, before[v])] -= 1;
  }
  return vec;
}

std::vector<TransformationVector> transformation_set(const BRTrace& trace,
                                                     std::size_t begin,
                                                     std::size_t end) {
  if (begin > end || end > trace.length())
    throw InvalidInput("move range out of bounds");
  std::vector<TransformationVector> set;
  set.reserve(end - begin);
  for (std::size_t t = begin; t < end; ++t)
    set.push_back(transformation_vector(trace, t));
  return set;
}

Rational inner_product(const TransformationVector& vec,
                       const GameInstance& game) {
  Rational total = 0;
  for (const auto& [key, coeff] : vec) {
    if (coeff == 0) continue;
    total += coeff * game.payoff_on_edge(key.u, key.i, key.v, key.j);
  }
  return total;
}

std::vector<std::pair<int, TransformationVector>> cyclic_sums(
    const BRTrace& trace, std::size_t begin, std::size_t end) {
  if (begin > end || end > trace.length())
    throw InvalidInput("move range out of bounds");
  const auto& ref = trace.profiles[begin];

  // per player: move indices within the range
  std::map<int, std::vector<std::size_t>> player_moves;
  for (std::size_t t = begin; t < end; ++t)
    player_moves[trace.moves[t].player].push_back(t);

  std::vector<std::pair<int, TransformationVector>> sums;
  for (const auto& [u, indices] : player_moves) {
    // Earliest completed repeat of u decides the summation window
    // [from_pos, to_pos] over u's own moves. A move back to the range-start
    // strategy completes a virtual first occurrence at the range start, so
    // the window then opens at u's first move.
    std::optional<std::pair<std::size_t, std::size_t>> window;
    std::map<int, std::size_t> first_seen;
    for (std::size_t pos = 0; pos < indices.size() && !window; ++pos) {
      const int strategy = trace.moves[indices[pos]].strategy;
      if (strategy == ref[u]) {
        window = {std::size_t{0}, pos};
        break;
      }
      auto [it, inserted] = first_seen.emplace(strategy, pos);
      if (!inserted) window = {it->second + 1, pos};
    }
    if (!window) continue;  // u never repeats within the range

    TransformationVector v;
    for (std::size_t pos = window->first; pos <= window->second; ++pos) {
      for (const auto& [key, coeff] :
           transformation_vector(trace, indices[pos])) {
        v[key] += coeff;
        if (v[key] == 0) v.erase(key);
      }
    }
    sums.emplace_back(u, std::move(v));
  }
  return sums;
}

long rank_of(const std::vector<TransformationVector>& vectors) {
  return exact_rank(rows_from_sparse(vectors));
}

RankCheck check_rank_dq(const BRTrace& trace, std::size_t begin,
                        std::size_t end) {
  const MoveSequenceView view = view_of(trace);
  const SequenceStats stats = classify(view, begin, end);
  RankCheck check;
  check.applicable = stats.p < trace.game->player_count();
  if (!check.applicable) return check;

  long bound = stats.d1;
  for (const auto& block : separated_blocks(view, begin, end)) {
    const SequenceStats bs = classify(view, block.begin, block.end);
    bound += bs.d - bs.q0;
  }
  check.bound = bound;
  check.rank = rank_of(transformation_set(trace, begin, end));
  check.pass = check.rank >= check.bound;
  return check;
}

RankCheck check_all_active(const BRTrace& trace, std::size_t begin,
                           std::size_t end) {
  const MoveSequenceView view = view_of(trace);
  const SequenceStats stats = classify(view, begin, end);
  const long n = trace.game->player_count();
  RankCheck check;
  check.applicable = n > 0 && stats.p == n;
  if (!check.applicable) return check;

  check.bound = ceil_div((n - 1) * (stats.d - stats.q0), n);
  check.rank = rank_of(transformation_set(trace, begin, end));
  check.pass = check.rank >= check.bound;
  return check;
}

RankCheck check_rank_p2(const BRTrace& trace, std::size_t begin,
                        std::size_t end) {
  const MoveSequenceView view = view_of(trace);
  const SequenceStats stats = classify(view, begin, end);
  RankCheck check;
  check.applicable = true;
  check.bound = ceil_div(stats.p2, 2);

  std::vector<TransformationVector> vectors;
  for (auto& [u, v] : cyclic_sums(trace, begin, end))
    vectors.push_back(std::move(v));
  check.rank = rank_of(vectors);
  check.pass = check.rank >= check.bound;
  return check;
}

CriticalCheck check_critical(const BRTrace& trace, std::size_t begin,
                             std::size_t end) {
  const MoveSequenceView view = view_of(trace);
  CriticalCheck check;
  std::size_t b = 0, e = 0;
  try {
    std::tie(b, e) = find_critical_subsequence(view, begin, end);
  } catch (const NoCriticalSubsequence&) {
    check.applicable = false;
    return check;
  }
  check.applicable = true;
  check.begin = b;
  check.end = e;

  const SequenceStats stats = classify(view, b, e);
  check.equality =
      e - b == 2 * static_cast<std::size_t>(stats.d - stats.q0);

  check.subranges_diverse = true;
  for (std::size_t a = b; a < e && check.subranges_diverse; ++a)
    for (std::size_t z = a + 1; z <= e && check.subranges_diverse; ++z) {
      if (a == b && z == e) continue;
      const SequenceStats sub = classify(view, a, z);
      if (z - a >= 2 * static_cast<std::size_t>(sub.d - sub.q0))
        check.subranges_diverse = false;
    }
  check.pass = check.equality && check.subranges_diverse;
  return check;
}

}  // namespace netcoord
