#include <doctest.h>

#include <set>

#include "netcoord/errors.hpp"
#include "netcoord/rational.hpp"
#include "netcoord/rng.hpp"

using namespace netcoord;

TEST_CASE("rationals are canonical and exact") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-2, 4) == rat(-1, 2));
  CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
  CHECK(rat_to_string(rat(-7, 20)) == "-7/20");
  CHECK(rat_to_string(rat(4, 2)) == "2");
  CHECK(rat_from_string("-7/20") == rat(-7, 20));
  CHECK(rat_from_string("3") == rat(3));
  CHECK_THROWS_AS(rat(1, 0), InvalidInput);
  CHECK_THROWS_AS(rat_from_string("x/y"), InvalidInput);
}

TEST_CASE("snap_to_grid rounds to nearest multiple, ties away from zero") {
  CHECK(snap_to_grid(rat(1, 3), 4) == rat(1, 4));
  CHECK(snap_to_grid(rat(3, 8), 4) == rat(1, 2));   // tie, away from zero
  CHECK(snap_to_grid(rat(-3, 8), 4) == rat(-1, 2));
  CHECK(snap_to_grid(rat(5, 4), 4) == rat(5, 4));   // already on grid
  CHECK(snap_to_grid(rat(0), 1024) == rat(0));
}

TEST_CASE("rng streams are deterministic and order-independent") {
  RngStream a(42, {1, 2, 3});
  RngStream b(42, {1, 2, 3});
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c(42, {1, 2, 4});
  CHECK(RngStream(42, {1, 2, 3}).next_u64() != c.next_u64());
}

TEST_CASE("next_below stays in range and hits every residue") {
  RngStream s(7, {hash_str("bounds")});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t v = s.next_below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(s.next_below(1) == 0);
  CHECK_THROWS_AS(s.next_below(0), InvalidInput);
}

TEST_CASE("next_in_range covers closed intervals") {
  RngStream s(9, {hash_str("range")});
  std::set<std::int64_t> seen;
  for (int i = 0; i < 200; ++i) {
    const std::int64_t v = s.next_in_range(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}
