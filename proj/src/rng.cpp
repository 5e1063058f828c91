#include "secprec/rng.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <set>

namespace secprec {

void warn_once(const std::string& msg) {
  static std::mutex mu;
  static std::set<std::string> seen;
  std::lock_guard<std::mutex> lock(mu);
  if (seen.insert(msg).second) std::cerr << "warning: " << msg << "\n";
}

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kW1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

std::array<std::uint32_t, 4> Philox::block(std::uint64_t counter) const {
  std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(counter),
                                      static_cast<std::uint32_t>(counter >> 32), stream_[0],
                                      stream_[1]};
  std::array<std::uint32_t, 2> key = key_;
  for (int round = 0; round < 10; ++round) {
    philox_round(ctr, key);
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

std::uint32_t Philox::next_u32() {
  if (buffer_pos_ >= 4) {
    buffer_ = block(counter_++);
    buffer_pos_ = 0;
  }
  return buffer_[buffer_pos_++];
}

std::uint64_t Philox::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double Philox::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Philox::gaussian() {
  if (has_spare_gaussian_) {
    has_spare_gaussian_ = false;
    return spare_gaussian_;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double theta = 2.0 * kPi * uniform();
  spare_gaussian_ = r * std::sin(theta);
  has_spare_gaussian_ = true;
  return r * std::cos(theta);
}

cd Philox::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return cd(re * M_SQRT1_2, im * M_SQRT1_2);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose, std::uint64_t index) {
  const auto b = Philox(master, streams::id(purpose, index)).block(0);
  return (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
}

}  // namespace secprec
