// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <array>
#include <cstdint>

namespace paprlab {

// Counter-keyed deterministic stream: the generator state is derived from
// (seed, trial) through a splitmix64 chain and then advanced with
// xoshiro256++. For a fixed seed, distinct trials map to distinct keys, so
// Monte Carlo workers can consume trials in any order without sharing state.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01();

  // Uniform index in [0, count); count must be a power of two.
  std::uint32_t uniform_pow2(std::uint32_t count);

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace paprlab
