#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "netcoord/errors.hpp"
#include "netcoord/game.hpp"
#include "netcoord/rng.hpp"
#include "netcoord/smoothing.hpp"
#include "test_helpers.hpp"

using namespace netcoord;
using netcoord::testing::g1;
using netcoord::testing::g2;

TEST_CASE("potential on the two-player matching game") {
  auto game = g1();
  CHECK(potential(*game, {1, 1}) == rat(0));
  CHECK(potential(*game, {1, 2}) == rat(1));
  CHECK(potential(*game, {2, 1}) == rat(1));
}

TEST_CASE("potential sums both edges of the path game") {
  auto game = g2();
  // oracle: A(1,2) + A(2,1) = 1 + 1
  CHECK(potential(*game, {1, 2, 1}) == rat(2));
}

TEST_CASE("potential rejects mismatched profiles") {
  auto game = g1();
  CHECK_THROWS_AS(potential(*game, {1}), InvalidInput);
  CHECK_THROWS_AS(potential(*game, {1, 3}), InvalidInput);
  CHECK_THROWS_AS(potential(*game, {0, 1}), InvalidInput);
}

TEST_CASE("player payoffs") {
  auto game = g1();
  CHECK(player_payoff(*game, {1, 2}, 0) == rat(1));
  auto path = g2();
  CHECK(player_payoff(*path, {1, 2, 1}, 1) == rat(2));  // two incident edges
  CHECK_THROWS_AS(player_payoff(*game, {1, 2}, 5), InvalidInput);

  // isolated player: empty sum
  GameInstance lonely(3, 2, {{0, 1}},
                      {{rat(0), rat(1), rat(1), rat(0)}});
  CHECK(player_payoff(lonely, {1, 1, 2}, 2) == rat(0));
}

TEST_CASE("improving moves and their gains") {
  auto game = g1();
  CHECK(improving_moves(*game, {1, 2}).empty());
  const auto moves = improving_moves(*game, {1, 1});
  REQUIRE(moves.size() == 2);
  CHECK(moves[0].first == Move{0, 2});
  CHECK(moves[0].second == rat(1));
  CHECK(moves[1].first == Move{1, 2});
  CHECK(moves[1].second == rat(1));

  GameInstance lonely(1, 3, {}, {});
  CHECK(improving_moves(lonely, {2}).empty());
}

TEST_CASE("pne detection and enumeration") {
  auto game = g1();
  CHECK(is_pne(*game, {1, 2}));
  CHECK_FALSE(is_pne(*game, {1, 1}));
  CHECK(enumerate_pne(*game) ==
        std::vector<StrategyProfile>{{1, 2}, {2, 1}});

  auto path = g2();
  CHECK(enumerate_pne(*path) ==
        std::vector<StrategyProfile>{{1, 2, 1}, {2, 1, 2}});

  GameInstance empty(2, 2, {}, {});
  CHECK(is_pne(empty, {1, 1}));
  CHECK(enumerate_pne(empty).size() == 4);  // every profile
}

TEST_CASE("oracle cap is enforced") {
  GameInstance big(30, 2, {}, {});
  CHECK_THROWS_AS(enumerate_pne(big, 1000), CapExceeded);
}

TEST_CASE("game construction validates its inputs") {
  const std::vector<Rational> m{rat(0), rat(1), rat(1), rat(0)};
  CHECK_THROWS_AS(GameInstance(2, 2, {{0, 0}}, {m}), InvalidInput);
  CHECK_THROWS_AS(GameInstance(2, 2, {{0, 1}, {1, 0}}, {m, m}), InvalidInput);
  CHECK_THROWS_AS(GameInstance(2, 2, {{0, 2}}, {m}), InvalidInput);
  CHECK_THROWS_AS(GameInstance(2, 2, {{0, 1}}, {{rat(0)}}), InvalidInput);
  CHECK_THROWS_AS(GameInstance(2, 2, {{0, 1}},
                               {{rat(0), rat(2), rat(1), rat(0)}}),
                  InvalidInput);  // outside [-1,1]
}

TEST_CASE("potential-delta identity over random deviations") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RngStream stream(seed, {hash_str("test-triples")});
    const int n = 2 + static_cast<int>(stream.next_below(5));
    const int k = 2 + static_cast<int>(stream.next_below(3));
    const GameInstance game = sample_instance(complete_graph(n), k, spec, seed);

    StrategyProfile profile(n);
    for (int u = 0; u < n; ++u)
      profile[u] = 1 + static_cast<int>(stream.next_below(k));
    const int u = static_cast<int>(stream.next_below(n));
    int alt = 1 + static_cast<int>(stream.next_below(k - 1));
    if (alt >= profile[u]) ++alt;

    StrategyProfile deviated = profile;
    deviated[u] = alt;
    CHECK(potential(game, deviated) - potential(game, profile) ==
          player_payoff(game, deviated, u) - player_payoff(game, profile, u));
  }
}

TEST_CASE("improving moves strictly increase the potential") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GameInstance game = sample_instance(complete_graph(4), 2, spec, seed);
    const StrategyProfile profile{1, 2, 1, 2};
    for (const auto& [move, delta] : improving_moves(game, profile)) {
      CHECK(delta > 0);
      StrategyProfile next = profile;
      next[move.player] = move.strategy;
      CHECK(potential(game, next) - potential(game, profile) == delta);
    }
  }
}

TEST_CASE("potential is invariant under player relabeling") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 5, k = 3;
    const GameInstance game = sample_instance(complete_graph(n), k, spec, seed);

    // random permutation of players
    RngStream stream(seed, {hash_str("perm")});
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[static_cast<int>(stream.next_below(i + 1))]);

    // remap edges; transpose matrices whose endpoint order flips
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<Rational>> matrices;
    for (int e = 0; e < game.edge_count(); ++e) {
      const auto& [u, v] = game.edges()[e];
      const int pu = perm[u], pv = perm[v];
      std::vector<Rational> m(static_cast<std::size_t>(k) * k);
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
          if (pu < pv)
            m[(i - 1) * k + (j - 1)] = game.entry(e, i, j);
          else
            m[(j - 1) * k + (i - 1)] = game.entry(e, i, j);
        }
      edges.emplace_back(pu, pv);
      matrices.push_back(std::move(m));
    }
    const GameInstance relabeled(n, k, std::move(edges), std::move(matrices));

    StrategyProfile profile(n), mapped(n);
    for (int u = 0; u < n; ++u)
      profile[u] = 1 + static_cast<int>(stream.next_below(k));
    for (int u = 0; u < n; ++u) mapped[perm[u]] = profile[u];
    CHECK(potential(game, profile) == potential(relabeled, mapped));
  }
}

TEST_CASE("enumerate_pne is never empty on random instances") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GameInstance game =
        sample_instance(erdos_renyi(5, rat(1, 2), seed), 2, spec, seed);
    CHECK_FALSE(enumerate_pne(game).empty());
  }
}
