#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netcoord {

// Input validation failures (bad dimensions, out-of-range ids, malformed JSON).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Brute-force oracle asked to enumerate more profiles than its configured cap.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An adversarial script supplied a non-improving move; `step` is 0-based.
class ScriptInvalid : public std::runtime_error {
public:
  ScriptInvalid(std::size_t step, const std::string& what)
      : std::runtime_error(what), step(step) {}
  std::size_t step;
};

// The critical-subsequence precondition l >= 2(d - q0) fails for the range.
class NoCriticalSubsequence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace netcoord
