// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/papr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "paprlab/parallel.hpp"

namespace paprlab {

PaprSample measure_papr(const SampledSignal& frame, double average_power) {
  if (frame.samples.empty()) throw std::invalid_argument("measure_papr: empty frame");
  if (!(average_power > 0.0)) throw std::invalid_argument("measure_papr: zero average power");
  double peak = 0.0;
  for (const auto& z : frame.samples) {
    peak = std::max(peak, std::norm(z));
  }
  PaprSample s;
  s.gamma = peak / average_power;
  s.gamma_db = 10.0 * std::log10(s.gamma);
  return s;
}

std::vector<PaprSample> run_monte_carlo(const SystemLayout& layout, std::int64_t trials,
                                        std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
  std::vector<PaprSample> samples(static_cast<std::size_t>(trials));
  parallel_blocks(trials, threads, [&](unsigned, std::int64_t begin, std::int64_t end) {
    FrameSynthesizer synth(layout);
    for (std::int64_t t = begin; t < end; ++t) {
      RandomStream stream(seed, static_cast<std::uint64_t>(t));
      const SampledSignal frame = synth.synthesize(stream);
      samples[static_cast<std::size_t>(t)] = measure_papr(frame);
    }
  });
  return samples;
}

CcdfCurve empirical_ccdf(std::span<const PaprSample> samples,
                         std::span<const double> gamma_db_grid) {
  if (samples.empty()) throw std::invalid_argument("empirical_ccdf: no samples");
  for (std::size_t g = 1; g < gamma_db_grid.size(); ++g) {
    if (!(gamma_db_grid[g] > gamma_db_grid[g - 1])) {
      throw std::invalid_argument("empirical_ccdf: grid must be ascending");
    }
  }
  std::vector<double> sorted;
  sorted.reserve(samples.size());
  for (const auto& s : samples) sorted.push_back(s.gamma_db);
  std::sort(sorted.begin(), sorted.end());

  CcdfCurve curve;
  curve.kind = "empirical";
  curve.trials = static_cast<std::int64_t>(samples.size());
  curve.gamma_db_grid.assign(gamma_db_grid.begin(), gamma_db_grid.end());
  curve.prob.reserve(gamma_db_grid.size());
  for (const double g : gamma_db_grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), g);
    curve.prob.push_back(static_cast<double>(above) / static_cast<double>(sorted.size()));
  }
  return curve;
}

std::int64_t count_level_upcrossings(const SampledSignal& frame, double level) {
  std::int64_t count = 0;
  const auto& z = frame.samples;
  const double level_sq = level * level;
  for (std::size_t m = 0; m + 1 < z.size(); ++m) {
    if (std::norm(z[m]) < level_sq && std::norm(z[m + 1]) >= level_sq) ++count;
  }
  return count;
}

std::vector<double> default_gamma_grid_db() {
  std::vector<double> grid;
  grid.reserve(91);
  for (int i = 40; i <= 130; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  return grid;
}

double curve_crossing_db(const CcdfCurve& curve, double prob) {
  const auto& g = curve.gamma_db_grid;
  const auto& p = curve.prob;
  if (g.empty() || !(prob > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (p.front() < prob) return std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] <= prob) {
      if (p[i] == p[i - 1]) return g[i];
      if (p[i] <= 0.0) {
        // Linear fallback where the log interpolation degenerates.
        const double t = (p[i - 1] - prob) / (p[i - 1] - p[i]);
        return g[i - 1] + t * (g[i] - g[i - 1]);
      }
      const double t = (std::log(p[i - 1]) - std::log(prob)) / (std::log(p[i - 1]) - std::log(p[i]));
      return g[i - 1] + t * (g[i] - g[i - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace paprlab
