#include <doctest.h>

#include <algorithm>

#include "netcoord/dynamics.hpp"
#include "netcoord/errors.hpp"
#include "netcoord/rng.hpp"
#include "netcoord/smoothing.hpp"
#include "test_helpers.hpp"

using namespace netcoord;
using netcoord::testing::g1;

TEST_CASE("bra converges in one step from the diagonal") {
  const BRTrace trace = run_bra(g1(), {1, 1}, PivotRule::first(), 100, 0);
  CHECK(trace.outcome == RunOutcome::kConvergedToPne);
  CHECK(trace.length() == 1);
  CHECK(trace.moves[0] == Move{0, 2});  // lowest (player, strategy)
  CHECK(trace.deltas[0] == rat(1));
  CHECK(is_pne(*trace.game, trace.profiles.back()));
}

TEST_CASE("bra from a pne makes zero moves") {
  const BRTrace trace = run_bra(g1(), {1, 2}, PivotRule::best(), 100, 0);
  CHECK(trace.outcome == RunOutcome::kConvergedToPne);
  CHECK(trace.length() == 0);
}

TEST_CASE("a zero step cap binds immediately") {
  const BRTrace trace = run_bra(g1(), {1, 1}, PivotRule::first(), 0, 0);
  CHECK(trace.outcome == RunOutcome::kStepCapReached);
  CHECK(trace.length() == 0);
}

TEST_CASE("scripted runs validate every move") {
  auto game = g1();
  const BRTrace ok =
      run_bra(game, {1, 1}, PivotRule::adversarial({{0, 2}}), 100, 0);
  CHECK(ok.length() == 1);
  CHECK(ok.outcome == RunOutcome::kConvergedToPne);

  CHECK_THROWS_AS(
      run_bra(game, {1, 2}, PivotRule::adversarial({{0, 1}}), 100, 0),
      ScriptInvalid);  // worsens
  CHECK_THROWS_AS(
      run_bra(game, {1, 2}, PivotRule::adversarial({{0, 2}}), 100, 0),
      ScriptInvalid);  // already playing 2
  try {
    run_bra(game, {1, 2}, PivotRule::adversarial({{0, 1}}), 100, 0);
  } catch (const ScriptInvalid& err) {
    CHECK(err.step == 0);
  }
}

TEST_CASE("replay reports the first violation instead of throwing") {
  auto game = g1();
  const ReplayResult ok = replay(game, {1, 1}, {{0, 2}});
  REQUIRE(ok.trace.has_value());
  CHECK(ok.trace->deltas[0] == rat(1));

  const ReplayResult bad = replay(game, {1, 2}, {{0, 1}});
  CHECK_FALSE(bad.trace.has_value());
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->step == 0);
  CHECK(bad.violation->delta == rat(-1));

  CHECK_THROWS_AS(replay(game, {1, 2}, {{0, 2}}), InvalidInput);  // degenerate
}

TEST_CASE("min improvement over sliding windows") {
  // manufacture a trace with gains 1, 1/4, 1/2
  GameInstance game(2, 4, {{0, 1}},
                    {{rat(0), rat(1), rat(5, 4), rat(7, 4), rat(0), rat(0),
                      rat(0), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0),
                      rat(0), rat(0), rat(0)}},
                    rat(0), rat(7, 4));
  auto shared = std::make_shared<GameInstance>(game);
  const ReplayResult result =
      replay(shared, {1, 1}, {{1, 2}, {1, 3}, {1, 4}});
  REQUIRE(result.trace.has_value());
  const BRTrace& trace = *result.trace;
  REQUIRE(trace.deltas ==
          std::vector<Rational>{rat(1), rat(1, 4), rat(1, 2)});

  CHECK(min_improvement(trace, 1) == rat(1, 4));
  CHECK(min_improvement(trace, 2) == rat(3, 4));   // min(5/4, 3/4)
  CHECK(min_improvement(trace, 3) == rat(7, 4));   // whole trace
  CHECK_THROWS_AS(min_improvement(trace, 0), InvalidInput);
  CHECK_THROWS_AS(min_improvement(trace, 4), InvalidInput);
}

TEST_CASE("first and best rules are deterministic") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto game = std::make_shared<GameInstance>(
        sample_instance(complete_graph(5), 3, spec, seed));
    for (const PivotRule& rule : {PivotRule::first(), PivotRule::best()}) {
      const BRTrace a = run_bra(game, {1, 1, 1, 1, 1}, rule, 100000, 1);
      const BRTrace b = run_bra(game, {1, 1, 1, 1, 1}, rule, 100000, 2);
      CHECK(a.moves == b.moves);  // seed only matters for the random rule
    }
  }
}

TEST_CASE("every recorded delta is a strict potential increase") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto game = std::make_shared<GameInstance>(
        sample_instance(complete_graph(4), 3, spec, seed));
    const BRTrace trace =
        run_bra(game, {1, 2, 3, 1}, PivotRule::random(), 100000, seed);
    CHECK(trace.outcome == RunOutcome::kConvergedToPne);
    for (std::size_t t = 0; t < trace.length(); ++t) {
      CHECK(trace.deltas[t] > 0);
      CHECK(potential(*game, trace.profiles[t + 1]) -
                potential(*game, trace.profiles[t]) ==
            trace.deltas[t]);
    }
  }
}

TEST_CASE("the coarse step cap 2 n^2 k^n is never reached") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 3, k = 2;
    const std::uint64_t cap = 2 * n * n * 8;  // 2 n^2 k^n
    auto game = std::make_shared<GameInstance>(
        sample_instance(complete_graph(n), k, spec, seed));
    const BRTrace trace =
        run_bra(game, {2, 1, 2}, PivotRule::random(), cap, seed);
    CHECK(trace.outcome == RunOutcome::kConvergedToPne);
  }
}

TEST_CASE("converged traces end in the oracle pne set") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 20};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto game = std::make_shared<GameInstance>(
        sample_instance(erdos_renyi(4, rat(1, 2), seed), 2, spec, seed));
    const BRTrace trace =
        run_bra(game, {1, 1, 1, 1}, PivotRule::best(), 100000, seed);
    REQUIRE(trace.outcome == RunOutcome::kConvergedToPne);
    const auto pne = enumerate_pne(*game);
    CHECK(std::find(pne.begin(), pne.end(), trace.profiles.back()) != pne.end());
  }
}
