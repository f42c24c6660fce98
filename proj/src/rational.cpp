#include "netcoord/rational.hpp"

#include <limits>

#include "netcoord/errors.hpp"

namespace netcoord {

Rational rat(long num, long den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rat_from_string(const std::string& s) {
  try {
    Rational q(s);
    if (q.get_den() == 0) throw InvalidInput("zero denominator: " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("unparseable rational: " + s);
  }
}

std::string rat_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {
std::int64_t to_i64(const BigInt& z, const char* what) {
  if (!z.fits_slong_p()) throw InvalidInput(std::string(what) + " exceeds int64");
  long v = z.get_si();
  return static_cast<std::int64_t>(v);
}
}  // namespace

std::int64_t rat_num_i64(const Rational& q) {
  return to_i64(q.get_num(), "numerator");
}

std::int64_t rat_den_i64(const Rational& q) {
  return to_i64(q.get_den(), "denominator");
}

Rational snap_to_grid(const Rational& v, std::uint64_t resolution) {
  if (resolution == 0) throw InvalidInput("zero grid resolution");
  Rational scaled = v * Rational(static_cast<unsigned long>(resolution));
  BigInt num = scaled.get_num();
  BigInt den = scaled.get_den();
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigInt twice_r = r * 2;
  if (twice_r > den || (twice_r == den && sgn(scaled) > 0)) q += 1;
  Rational snapped(q, BigInt(static_cast<unsigned long>(resolution)));
  snapped.canonicalize();
  return snapped;
}

long ceil_div(long num, long den) {
  return (num + den - 1) / den;
}

}  // namespace netcoord
