#pragma once

#include <array>
#include <cstdint>

namespace herder {

// splitmix64 step (Vigna). Used for seeding and key mixing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds additional words into a seed so that every (seed, word...) tuple
// yields a well-separated stream.
inline std::uint64_t mix_seed(std::uint64_t seed) { return seed; }

template <typename... Rest>
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word, Rest... rest) {
  std::uint64_t s = seed ^ (word + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  return mix_seed(splitmix64(s), rest...);
}

// xoshiro256** (Blackman & Vigna, public domain reference implementation).
// Hand-rolled rather than <random> so that draws are bit-identical across
// standard libraries; std::uniform_*_distribution output is
// implementation-defined and would break reproducible run records.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  // Stream keyed by a tuple, e.g. (run_seed, state, iteration, ant).
  template <typename... Words>
  static Rng stream(std::uint64_t seed, Words... words) {
    return Rng(mix_seed(seed, static_cast<std::uint64_t>(words)...));
  }

  std::uint64_t next() {
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

  // Uniform in [0,1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo,hi).
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0,bound). Fixed-point multiply keeps the draw
  // deterministic; bias is < bound/2^64.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform integer in [lo,hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace herder
