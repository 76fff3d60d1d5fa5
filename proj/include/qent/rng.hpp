#pragma once

#include <cstdint>
#include <random>

namespace qent {

// Seeded generator with hand-rolled distributions so that streams are
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform double in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // ±1 with equal probability
  int rademacher() { return (engine_() & 1u) ? 1 : -1; }

  // derive an independent stream seed
  std::uint64_t fork_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qent
