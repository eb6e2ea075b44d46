// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/random.hpp"

#include <bit>
#include <stdexcept>

namespace paprlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t trial) {
  // For a fixed seed the map trial -> key is injective (odd multiplier),
  // giving each trial its own stream.
  std::uint64_t key = seed ^ (0xA24BAED4963EE407ULL + 0x9E3779B97F4A7C15ULL * (trial + 1));
  for (auto& s : state_) s = splitmix64(key);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t RandomStream::uniform_pow2(std::uint32_t count) {
  if (count == 0 || (count & (count - 1)) != 0) {
    throw std::invalid_argument("uniform_pow2 requires a power-of-two count");
  }
  const int bits = std::countr_zero(count);
  return static_cast<std::uint32_t>(next_u64() >> (64 - bits));
}

}  // namespace paprlab
