// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <cstdint>
#include <functional>

namespace paprlab {

// Resolves a worker count: requested == 0 means "auto". The PAPRLAB_THREADS
// environment variable, when set to a positive value, caps the result.
unsigned resolve_thread_count(unsigned requested);

// Runs body(worker, begin, end) over contiguous blocks partitioning
// [0, count). Blocks depend only on (count, threads), never on timing, so a
// caller that writes results indexed by trial gets identical output for any
// worker count.
void parallel_blocks(std::int64_t count, unsigned threads,
                     const std::function<void(unsigned, std::int64_t, std::int64_t)>& body);

}  // namespace paprlab
