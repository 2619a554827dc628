#pragma once

#include <bit>
#include <cstdint>

namespace atlas {

// pcg64 (setseq variant): 128-bit LCG state with xsl-rr output, as published
// by O'Neill. Chosen for O(1) seeding of independent substreams: every
// 64-bit stream id selects a distinct increment, so workers and samples can
// each own a stream without overlap. Satisfies uniform_random_bit_generator.
class Pcg64 {
 public:
  using result_type = std::uint64_t;

  Pcg64() : Pcg64(0xcafef00dd15ea5e5ULL, 0) {}

  Pcg64(std::uint64_t seed, std::uint64_t stream) {
    inc_ = (static_cast<u128>(stream) << 1u) | 1u;
    state_ = 0u;
    step();
    state_ += static_cast<u128>(seed);
    step();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    step();
    const auto rot = static_cast<int>(state_ >> 122u);
    const auto xored = static_cast<std::uint64_t>(state_ >> 64u) ^ static_cast<std::uint64_t>(state_);
    return std::rotr(xored, rot);
  }

 private:
  using u128 = unsigned __int128;

  static constexpr u128 kMultiplier =
      (static_cast<u128>(2549297995355413924ULL) << 64u) | 4865540595714422341ULL;

  void step() { state_ = state_ * kMultiplier + inc_; }

  u128 state_ = 0;
  u128 inc_ = 1;
};

using RandomStream = Pcg64;

// splitmix64 finalizer; the standard 64-bit avalanche mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30u)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27u)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31u);
}

// Folds salts into a master seed; used to give every (n_a, n_b) sweep point
// its own seed domain while sample indices select the substream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt_a,
                                 std::uint64_t salt_b) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ salt_a);
  h = mix64(h ^ salt_b);
  return h;
}

}  // namespace atlas
