#pragma once

#include <cstdint>
#include <random>

namespace crowdnav {

/// Seeded random stream with platform-independent draws.
///
/// The standard distributions are implementation-defined, so uniform reals
/// are built directly from the 64-bit engine output. The same seed yields the
/// same sequence on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n). n must be positive.
  std::size_t index(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Seed for episode `index` of stream `stream` under `base`.
/// Streams separate e.g. evaluation environments; episode seeds are consecutive.
constexpr std::uint64_t episode_seed(std::uint64_t base, std::uint64_t stream,
                                     std::uint64_t index) {
  return base + stream * 1'000'000ULL + index;
}

}  // namespace crowdnav
