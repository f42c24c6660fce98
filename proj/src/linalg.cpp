#include "netcoord/linalg.hpp"

#include <utility>

namespace netcoord {

// Fraction-free elimination (Bareiss). Every division below is exact by
// Sylvester's identity, so entries stay integral and the rank is exact.
long exact_rank(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  long rank = 0;
  BigInt prev_pivot = 1;

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // full pivoting: pull any nonzero from the remaining block into (r, c)
    std::size_t pr = rows, pc = cols;
    for (std::size_t j = c; j < cols && pr == rows; ++j)
      for (std::size_t i = r; i < rows; ++i)
        if (m[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == rows) break;
    if (pr != r) std::swap(m[pr], m[r]);
    if (pc != c)
      for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][pc], m[i][c]);

    const BigInt pivot = m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt t = pivot * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(),
                     prev_pivot.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev_pivot = pivot;
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace netcoord
