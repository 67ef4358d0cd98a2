#pragma once

#include <cstdint>

namespace icts::rng {

// splitmix64, used for seeding and for counter-based stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). Small, fast, and the output sequence is
// fully specified, so scan results stay bit-identical across platforms and
// standard libraries.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Deterministic per-point stream: the same (seed, coarse, fine) triple yields
// the same stream regardless of evaluation order or thread count.
inline Xoshiro256 stream_for(std::uint64_t seed, std::uint64_t coarse,
                             std::uint64_t fine) {
  std::uint64_t sm = seed;
  std::uint64_t k = splitmix64(sm);
  sm = k ^ (coarse * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  k = splitmix64(sm);
  sm = k ^ (fine * 0xda942042e4dd58b5ULL + 0x9e3779b97f4a7c15ULL);
  return Xoshiro256(splitmix64(sm));
}

// Exact Poisson sampling. Sequential inversion for small means, Hormann's
// PTRS transformed-rejection for large ones (O(1) per draw).
std::uint64_t poisson(Xoshiro256& gen, double mean);

}  // namespace icts::rng
