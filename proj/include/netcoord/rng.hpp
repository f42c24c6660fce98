#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace netcoord {

// Counter-based deterministic generator ("splitmix64-ctr").
//
// A logical stream is keyed by a 64-bit seed plus a sequence of domain tags;
// draw t of a stream is the splitmix64 finalizer applied to (key, t).
// Streams are independent of draw order, so per-payoff-entry sampling is
// order-independent and safe to parallelise across trials.
inline constexpr std::string_view kRngName = "splitmix64-ctr";

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);
std::uint64_t hash_str(std::string_view s);

class RngStream {
public:
  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key_parts);

  std::uint64_t next_u64();
  // Uniform in [0, bound), bound >= 1. Rejection sampling, exactly uniform.
  std::uint64_t next_below(std::uint64_t bound);
  // Uniform in [lo, hi], inclusive.
  std::int64_t next_in_range(std::int64_t lo, std::int64_t hi);

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace netcoord
