#include "netcoord/rng.hpp"

#include <limits>

#include "netcoord/errors.hpp"

namespace netcoord {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

std::uint64_t hash_str(std::string_view s) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed,
                     std::initializer_list<std::uint64_t> key_parts) {
  std::uint64_t key = mix64(seed);
  for (std::uint64_t part : key_parts) key = hash_combine(key, part);
  key_ = key;
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("next_below with zero bound");
  if (bound == 1) return 0;
  // largest multiple of bound representable; reject draws beyond it
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() / bound * bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

std::int64_t RngStream::next_in_range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidInput("next_in_range with lo > hi");
  std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<std::int64_t>(next_below(span));
}

}  // namespace netcoord
