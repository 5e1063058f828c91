#pragma once

#include <array>
#include <cstdint>

#include "secprec/common.hpp"

namespace secprec {

// Counter-based Philox4x32-10 generator. Chosen over std::mt19937 because the
// output for a given (seed, stream, counter) triple is pinned by this file
// alone: no hidden state, identical sequences on every platform, and disjoint
// streams are cheap (a stream is just a second 64-bit key word). All
// randomness in the library flows through (master seed, purpose, index)
// triples; see the `streams` namespace below for the purpose registry.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream);

  // Raw 128-bit block for a given counter value; pure function of
  // (seed, stream, counter).
  std::array<std::uint32_t, 4> block(std::uint64_t counter) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller (second deviate cached).
  double gaussian();
  // Circularly symmetric CN(0, 1): real and imaginary parts N(0, 1/2).
  cd cgaussian();

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
  double spare_gaussian_ = 0.0;
  bool has_spare_gaussian_ = false;
};

// Purpose tags for derived streams. A stream id is (purpose << 32) | index,
// so entity `index` under one purpose never collides with another purpose.
// Keeping per-entity streams (rather than one stream consumed in sequence)
// makes draws independent of loop order and lets eavesdropper sets nest:
// eavesdropper m sees the same randomness whether M = 1 or M = 8.
namespace streams {
inline constexpr std::uint64_t kUserPosition = 1;
inline constexpr std::uint64_t kEvePosition = 2;
inline constexpr std::uint64_t kUserShadowing = 3;
inline constexpr std::uint64_t kEveShadowing = 4;
inline constexpr std::uint64_t kUserFading = 5;
inline constexpr std::uint64_t kEveFading = 6;
inline constexpr std::uint64_t kDrop = 7;
inline constexpr std::uint64_t kOracle = 8;

inline constexpr std::uint64_t id(std::uint64_t purpose, std::uint64_t index) {
  return (purpose << 32) | (index & 0xffffffffu);
}
}  // namespace streams

// Stable seed for a child generator, e.g. one Monte-Carlo drop of an
// experiment: child = derive_seed(master, streams::kDrop, drop_index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose, std::uint64_t index);

}  // namespace secprec
