#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace dynregret {

/// splitmix64 finalizer applied to (seed, counter); a pure function used for
/// counter-based draws such as per-batch adversary coins.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) noexcept;

/// Uniform bit derived from mix_seed(seed, counter).
inline bool counter_coin(std::uint64_t seed, std::uint64_t counter) noexcept {
  return (mix_seed(seed, counter) >> 63) != 0;
}

/// Independent sub-streams split off one master seed at fixed offsets.
enum class Stream : std::uint64_t {
  kAdversary = 0x0adu,
  kNoise = 0x0b5u,
  kDirection = 0x0d1u,
};

std::uint64_t derive_seed(std::uint64_t master, Stream stream) noexcept;

/// Sequential random stream with platform-stable draws.
///
/// The engine (mt19937_64) is fully specified by the standard; the
/// conversions to uniform, normal and bounded integers are done here because
/// std:: distributions differ between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace dynregret
