// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace paprlab {

unsigned resolve_thread_count(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("PAPRLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cap = static_cast<unsigned>(v);
  }
  if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
  return requested == 0 ? cap : std::min(requested, cap);
}

void parallel_blocks(std::int64_t count, unsigned threads,
                     const std::function<void(unsigned, std::int64_t, std::int64_t)>& body) {
  if (count <= 0) return;
  const unsigned n = std::min<std::int64_t>(resolve_thread_count(threads), count);
  if (n <= 1) {
    body(0, 0, count);
    return;
  }
  const std::int64_t chunk = (count + n - 1) / n;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) {
    const std::int64_t begin = std::min<std::int64_t>(count, w * chunk);
    const std::int64_t end = std::min<std::int64_t>(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace paprlab
