#include "netcoord/game.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "netcoord/errors.hpp"

namespace netcoord {

GameInstance::GameInstance(int n, int k, std::vector<std::pair<int, int>> edges,
                           std::vector<std::vector<Rational>> matrices,
                           Rational range_lo, Rational range_hi)
    : n_(n),
      k_(k),
      edges_(std::move(edges)),
      matrices_(std::move(matrices)),
      range_lo_(std::move(range_lo)),
      range_hi_(std::move(range_hi)) {
  if (n_ < 0) throw InvalidInput("negative player count");
  if (k_ < 1) throw InvalidInput("strategy count must be >= 1");
  if (matrices_.size() != edges_.size())
    throw InvalidInput("one payoff matrix required per edge");
  if (range_lo_ > range_hi_) throw InvalidInput("empty payoff range");

  std::set<std::pair<int, int>> seen;
  for (auto& [u, v] : edges_) {
    if (u == v) throw InvalidInput("self-loop in game graph");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_) throw InvalidInput("edge endpoint out of range");
    if (!seen.insert({u, v}).second) throw InvalidInput("duplicate game edge");
  }
  const std::size_t entries = static_cast<std::size_t>(k_) * k_;
  for (const auto& m : matrices_) {
    if (m.size() != entries)
      throw InvalidInput("payoff matrix is not k x k");
    for (const auto& a : m)
      if (a < range_lo_ || a > range_hi_)
        throw InvalidInput("payoff entry outside declared range [" +
                           rat_to_string(range_lo_) + ", " +
                           rat_to_string(range_hi_) + "]: " + rat_to_string(a));
  }

  adjacency_.assign(n_, {});
  for (int e = 0; e < edge_count(); ++e) {
    adjacency_[edges_[e].first].emplace_back(edges_[e].second, e);
    adjacency_[edges_[e].second].emplace_back(edges_[e].first, e);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

const Rational& GameInstance::entry(int edge_idx, int i, int j) const {
  return matrices_[edge_idx][static_cast<std::size_t>(i - 1) * k_ + (j - 1)];
}

const Rational& GameInstance::payoff_on_edge(int u, int i, int v, int j) const {
  const int e = edge_index(u, v);
  if (e < 0) throw InvalidInput("no such game edge");
  return u < v ? entry(e, i, j) : entry(e, j, i);
}

int GameInstance::edge_index(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  for (const auto& [nbr, e] : adjacency_[u])
    if (nbr == v) return e;
  return -1;
}

const std::vector<std::pair<int, int>>& GameInstance::incident(int u) const {
  if (u < 0 || u >= n_) throw InvalidInput("player id out of range");
  return adjacency_[u];
}

void validate_profile(const GameInstance& game, const StrategyProfile& profile) {
  if (static_cast<int>(profile.size()) != game.player_count())
    throw InvalidInput("profile length does not match player count");
  for (int s : profile)
    if (s < 1 || s > game.strategy_count())
      throw InvalidInput("strategy out of range in profile");
}

Rational potential(const GameInstance& game, const StrategyProfile& profile) {
  validate_profile(game, profile);
  Rational total = 0;
  const auto& edges = game.edges();
  for (int e = 0; e < game.edge_count(); ++e) {
    const auto& [u, v] = edges[e];
    total += game.entry(e, profile[u], profile[v]);
  }
  return total;
}

namespace {
// Payoff of u if it played strategy i, everyone else per `profile`.
Rational payoff_if(const GameInstance& game, const StrategyProfile& profile,
                   int u, int i) {
  Rational total = 0;
  for (const auto& [v, e] : game.incident(u))
    total += game.payoff_on_edge(u, i, v, profile[v]);
  return total;
}
}  // namespace

Rational player_payoff(const GameInstance& game, const StrategyProfile& profile,
                       int u) {
  validate_profile(game, profile);
  if (u < 0 || u >= game.player_count())
    throw InvalidInput("player id out of range");
  return payoff_if(game, profile, u, profile[u]);
}

std::vector<std::pair<Move, Rational>> improving_moves(
    const GameInstance& game, const StrategyProfile& profile) {
  validate_profile(game, profile);
  std::vector<std::pair<Move, Rational>> result;
  for (int u = 0; u < game.player_count(); ++u) {
    const Rational current = payoff_if(game, profile, u, profile[u]);
    for (int i = 1; i <= game.strategy_count(); ++i) {
      if (i == profile[u]) continue;
      Rational delta = payoff_if(game, profile, u, i) - current;
      if (delta > 0) result.push_back({Move{u, i}, std::move(delta)});
    }
  }
  return result;
}

bool is_pne(const GameInstance& game, const StrategyProfile& profile) {
  return improving_moves(game, profile).empty();
}

std::vector<StrategyProfile> enumerate_pne(const GameInstance& game,
                                           std::uint64_t profile_cap) {
  const int n = game.player_count();
  const int k = game.strategy_count();
  std::uint64_t count = 1;
  for (int u = 0; u < n; ++u) {
    if (count > profile_cap / static_cast<std::uint64_t>(k))
      throw CapExceeded("k^n exceeds the oracle cap of " +
                        std::to_string(profile_cap));
    count *= static_cast<std::uint64_t>(k);
  }

  std::vector<StrategyProfile> result;
  StrategyProfile profile(n, 1);
  for (std::uint64_t it = 0; it < count; ++it) {
    if (is_pne(game, profile)) result.push_back(profile);
    for (int u = n - 1; u >= 0; --u) {
      if (profile[u] < k) {
        ++profile[u];
        break;
      }
      profile[u] = 1;
    }
  }
  return result;
}

}  // namespace netcoord
