#include <doctest.h>

#include "netcoord/errors.hpp"
#include "netcoord/game.hpp"
#include "netcoord/smoothing.hpp"
#include "test_helpers.hpp"

using namespace netcoord;

namespace {
bool on_grid(const Rational& v, std::uint64_t res) {
  Rational scaled = v * Rational(static_cast<unsigned long>(res));
  return scaled.get_den() == 1;
}
}  // namespace

TEST_CASE("spec validation") {
  PerturbationSpec ok{rat(1, 2), NoiseModel::kUniformFull, 20};
  CHECK_NOTHROW(ok.validate());
  PerturbationSpec low_phi{rat(1, 4), NoiseModel::kUniformFull, 20};
  CHECK_THROWS_AS(low_phi.validate(), InvalidInput);  // density of U[-1,1] is 1/2
  PerturbationSpec window{rat(1, 4), NoiseModel::kUniformWindow, 20};
  CHECK_NOTHROW(window.validate());
  PerturbationSpec coarse{rat(4), NoiseModel::kUniformWindow, 2};
  CHECK_THROWS_AS(coarse.validate(), InvalidInput);  // grid_resolution < 2 phi
  PerturbationSpec bad_phi{rat(0), NoiseModel::kUniformWindow, 20};
  CHECK_THROWS_AS(bad_phi.validate(), InvalidInput);
}

TEST_CASE("sampling is deterministic and grid-supported") {
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 16};
  const GraphTopology graph = complete_graph(3);
  const GameInstance a = sample_instance(graph, 2, spec, 99);
  const GameInstance b = sample_instance(graph, 2, spec, 99);
  const GameInstance c = sample_instance(graph, 2, spec, 100);

  CHECK(a.edge_count() == 3);
  bool identical = true, differs = false;
  for (int e = 0; e < 3; ++e)
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        identical = identical && a.entry(e, i, j) == b.entry(e, i, j);
        differs = differs || a.entry(e, i, j) != c.entry(e, i, j);
        CHECK(a.entry(e, i, j) >= rat(-1));
        CHECK(a.entry(e, i, j) <= rat(1));
        CHECK(on_grid(a.entry(e, i, j), spec.grid_resolution()));
      }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("perturbation stays within the window and preserves topology") {
  auto base = netcoord::testing::g2();
  const PerturbationSpec spec{rat(2), NoiseModel::kUniformWindow, 16};
  const GameInstance noisy = perturb_instance(*base, spec, 5);
  CHECK(noisy.edges() == base->edges());
  const Rational half_width = rat(1, 4);  // 1/(2 phi)
  for (int e = 0; e < noisy.edge_count(); ++e)
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const Rational diff = noisy.entry(e, i, j) - base->entry(e, i, j);
        const bool clipped =
            noisy.entry(e, i, j) == rat(1) || noisy.entry(e, i, j) == rat(-1);
        CHECK((clipped || (diff <= half_width && diff >= -half_width)));
      }
  // determinism
  const GameInstance again = perturb_instance(*base, spec, 5);
  for (int e = 0; e < noisy.edge_count(); ++e)
    CHECK(noisy.entry(e, 1, 2) == again.entry(e, 1, 2));
}

TEST_CASE("a huge phi emulates zero noise") {
  auto base = netcoord::testing::g1();
  // half-width 1/(2 phi) below one grid step floors to zero offset
  const PerturbationSpec spec{rat(1 << 16), NoiseModel::kUniformWindow, 16};
  const GameInstance out = perturb_instance(*base, spec, 3);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      CHECK(out.entry(0, i, j) == base->entry(0, i, j));
}

TEST_CASE("perturb rejects the uniform-full model") {
  auto base = netcoord::testing::g1();
  const PerturbationSpec spec{rat(1, 2), NoiseModel::kUniformFull, 16};
  CHECK_THROWS_AS(perturb_instance(*base, spec, 1), InvalidInput);
}

TEST_CASE("all-zero base with phi=1 lands in [-1/2, 1/2]") {
  GameInstance base(2, 2, {{0, 1}},
                    {{rat(0), rat(0), rat(0), rat(0)}});
  const PerturbationSpec spec{rat(1), NoiseModel::kUniformWindow, 16};
  const GameInstance out = perturb_instance(base, spec, 11);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      CHECK(out.entry(0, i, j) <= rat(1, 2));
      CHECK(out.entry(0, i, j) >= rat(-1, 2));
    }
}

TEST_CASE("figure-1 embedding: single edge gives the matching game") {
  const CutInstance graph(2, {{0, 1, rat(1)}});
  const GameInstance game = from_maxcut(graph);
  CHECK(game.strategy_count() == 2);
  CHECK(game.entry(0, 1, 1) == rat(0));
  CHECK(game.entry(0, 1, 2) == rat(1));
  CHECK(game.entry(0, 2, 1) == rat(1));
  CHECK(game.entry(0, 2, 2) == rat(0));
}

TEST_CASE("figure-1 embedding: potential equals cut value on a triangle") {
  const CutInstance graph(3, {{0, 1, rat(1)}, {0, 2, rat(1)}, {1, 2, rat(1)}});
  const GameInstance game = from_maxcut(graph);
  // sigma = (1,1,2): vertices 0,1 on one side
  CHECK(potential(game, {1, 1, 2}) == rat(2));
  CHECK(cut_weight(graph, {1, 1, 0}) == rat(2));

  for (unsigned mask = 0; mask < 8; ++mask) {
    VertexSet s(3, 0);
    StrategyProfile profile(3);
    for (int u = 0; u < 3; ++u) {
      s[u] = (mask >> u) & 1;
      profile[u] = s[u] ? 1 : 2;
    }
    CHECK(potential(game, profile) == cut_weight(graph, s));
  }
}

TEST_CASE("figure-1 embedding of an empty graph") {
  const CutInstance graph(4, {});
  const GameInstance game = from_maxcut(graph);
  CHECK(game.edge_count() == 0);
  CHECK(potential(game, {1, 2, 1, 2}) == rat(0));
}

TEST_CASE("erdos-renyi topology is deterministic in the seed") {
  const GraphTopology a = erdos_renyi(6, rat(1, 2), 17);
  const GraphTopology b = erdos_renyi(6, rat(1, 2), 17);
  CHECK(a.edges == b.edges);
  CHECK(erdos_renyi(6, rat(0), 17).edges.empty());
  CHECK(erdos_renyi(6, rat(1), 17).edges.size() == 15);
}
