#pragma once

#include <map>
#include <vector>

#include "netcoord/rational.hpp"

namespace netcoord {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Rank over the rationals via fraction-free Bareiss elimination with full
// pivoting; exact on arbitrary integer matrices.
long exact_rank(IntMatrix m);

// Lays sparse integer vectors out as matrix rows over the union of their keys
// (keys in sorted order, for determinism).
template <typename Key>
IntMatrix rows_from_sparse(const std::vector<std::map<Key, int>>& vectors) {
  std::map<Key, std::size_t> columns;
  for (const auto& vec : vectors)
    for (const auto& [key, value] : vec)
      if (value != 0) columns.emplace(key, 0);
  std::size_t idx = 0;
  for (auto& [key, col] : columns) col = idx++;

  IntMatrix m(vectors.size(), std::vector<BigInt>(columns.size(), 0));
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (const auto& [key, value] : vectors[r])
      if (value != 0) m[r][columns.at(key)] = value;
  return m;
}

}  // namespace netcoord
