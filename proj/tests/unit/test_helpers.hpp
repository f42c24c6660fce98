#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "netcoord/game.hpp"
#include "netcoord/rational.hpp"

namespace netcoord::testing {

// G1: two players, one edge, k=2, A=[[0,1],[1,0]]. PNE = {(1,2),(2,1)}.
inline std::shared_ptr<GameInstance> g1() {
  return std::make_shared<GameInstance>(
      2, 2, std::vector<std::pair<int, int>>{{0, 1}},
      std::vector<std::vector<Rational>>{{rat(0), rat(1), rat(1), rat(0)}});
}

// G2: three-player path 0-1-2, both edges A=[[0,1],[1,0]].
inline std::shared_ptr<GameInstance> g2() {
  const std::vector<Rational> m{rat(0), rat(1), rat(1), rat(0)};
  return std::make_shared<GameInstance>(
      3, 2, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}},
      std::vector<std::vector<Rational>>{m, m});
}

// The reduction module's worked example: one edge, payoffs [[1/2,1],[1,1/2]].
inline std::shared_ptr<GameInstance> g1_normalized_range() {
  return std::make_shared<GameInstance>(
      2, 2, std::vector<std::pair<int, int>>{{0, 1}},
      std::vector<std::vector<Rational>>{
          {rat(1, 2), rat(1), rat(1), rat(1, 2)}},
      rat(1, 2), rat(1));
}

}  // namespace netcoord::testing
