#pragma once

#include <cstdint>

#include "radiosim/bitstring.hpp"

namespace radiosim {

// Counter-based randomness: every value is a pure function of
// (root seed, node, round, draw index), so replays and thread schedules
// cannot change what any node draws.
namespace rng {

constexpr uint64_t fmix64(uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

constexpr uint64_t mix2(uint64_t a, uint64_t b) {
  return fmix64(fmix64(a + 0x9e3779b97f4a7c15ULL) ^ (b + 0xbf58476d1ce4e5b9ULL));
}

constexpr uint64_t mix3(uint64_t a, uint64_t b, uint64_t c) { return mix2(mix2(a, b), c); }

constexpr uint64_t mix4(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  return mix2(mix3(a, b, c), d);
}

}  // namespace rng

// Sequential stream of draws derived from a fixed base key.
class DrawStream {
 public:
  explicit DrawStream(uint64_t base) : base_(base) {}

  uint64_t next_u64() { return rng::mix2(base_, counter_++); }

  // True with probability exactly 2^-i (1 <= i <= 63).
  bool bernoulli_pow2(int i) { return (next_u64() >> (64 - i)) == 0; }

  // Uniform in [0, n), unbiased via rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

  // True with probability exactly num/den.
  bool bernoulli_rational(uint64_t num, uint64_t den) {
    if (num >= den) return true;
    return below(den) < num;
  }

  Bitstring bits(int len) {
    Bitstring b = Bitstring::zeros(len);
    uint64_t word = 0;
    for (int i = 0; i < len; ++i) {
      if (i % 64 == 0) word = next_u64();
      b.set_bit(i, static_cast<int>((word >> (i % 64)) & 1));
    }
    return b;
  }

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

// Uniform bitstring of `length` bits with exactly `weight` ones, drawn by a
// partial Fisher-Yates shuffle of the positions.
Bitstring sample_constant_weight_id(DrawStream& rng, int length, int weight);

}  // namespace radiosim
