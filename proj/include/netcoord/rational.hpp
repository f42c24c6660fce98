#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace netcoord {

// Exact rational carrier for every payoff, potential, and cut weight.
// mpq_class keeps values canonical (reduced, denominator > 0), so equality
// and the strictly-improving predicate are decidable with no tolerance.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational rat(long num, long den = 1);

// Parses "p/q" or "p". Throws InvalidInput on garbage or zero denominator.
Rational rat_from_string(const std::string& s);
std::string rat_to_string(const Rational& q);

// int64 views of the canonical numerator/denominator; throw if they do not fit.
std::int64_t rat_num_i64(const Rational& q);
std::int64_t rat_den_i64(const Rational& q);

// Nearest multiple of 1/resolution, ties rounded away from zero.
Rational snap_to_grid(const Rational& v, std::uint64_t resolution);

// ceil(num/den) for integers, den > 0.
long ceil_div(long num, long den);

}  // namespace netcoord
