#pragma once

#include <array>
#include <cstdint>

namespace govsim {

// SplitMix64 finalizer: golden-ratio increment followed by two
// xor-shift-multiply rounds. Used for seed derivation and for expanding a
// 64-bit seed into xoshiro256** state.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Maps one (scenario, level, replicate) grid coordinate to its run seed.
// The multipliers are coprime and large enough that no two coordinates of
// the experiment grid collide before mixing; arithmetic wraps mod 2^64.
inline constexpr std::uint64_t derive_run_seed(std::uint64_t base_seed,
                                               unsigned scenario_index,
                                               unsigned level_index,
                                               unsigned replicate) noexcept {
  return splitmix64_mix(base_seed + 1000003ull * scenario_index +
                        10007ull * level_index + replicate);
}

// xoshiro256** — the single PRNG used by every simulation run. One instance
// per run, never shared; identical seeds produce bit-identical streams on
// every platform.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) noexcept {
    // Repeated SplitMix64 expansion of the 64-bit seed into 256-bit state.
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n). n must be >= 1.
  std::size_t next_index(std::size_t n) noexcept {
    return static_cast<std::size_t>(next_u64() % n);
  }

  bool next_bernoulli(double p) noexcept { return next_unit() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace govsim
