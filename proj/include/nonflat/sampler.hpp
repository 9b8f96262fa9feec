#pragma once

#include <cstdint>
#include <random>

namespace nonflat {

/// Seeded integer source shared by every randomized routine. Draws are taken
/// directly from the engine output so sequences are identical across
/// standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [-bound, bound]; always 0 when bound is 0.
  long long coefficient(long long bound) {
    if (bound <= 0) return 0;
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    return static_cast<long long>(engine_() % span) - bound;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nonflat
