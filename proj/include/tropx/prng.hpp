#pragma once

// Deterministic PRNG for seeded property tests and searches. mt19937_64 is
// fully specified by the standard; we avoid std distributions because their
// outputs are implementation-defined.

#include <cstdint>
#include <random>

namespace tropx {

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], inclusive. Modulo bias is irrelevant for test data.
  long below(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tropx
