// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paprlab/config.hpp"
#include "paprlab/waveform.hpp"

namespace paprlab {

struct PaprSample {
  double gamma = 0.0;     // linear peak-to-average ratio
  double gamma_db = 0.0;  // 10 log10(gamma)
};

// Peak instantaneous power over the frame (CP samples included) divided by
// average_power. The default normalizes by the analytical ensemble power 1
// rather than the frame's own empirical power.
PaprSample measure_papr(const SampledSignal& frame, double average_power = 1.0);

// Seeded campaign: trial t draws its frame from the sub-stream keyed by
// (seed, t), so the returned samples (indexed by trial) are identical for
// any worker count. threads == 0 selects automatically; PAPRLAB_THREADS
// caps the count.
std::vector<PaprSample> run_monte_carlo(const SystemLayout& layout, std::int64_t trials,
                                        std::uint64_t seed, unsigned threads = 0);

struct CcdfCurve {
  std::vector<double> gamma_db_grid;  // ascending
  std::vector<double> prob;           // non-increasing, same length
  std::string kind;                   // empirical, proposed, ochiai, ...
  std::int64_t trials = 0;            // empirical curves only
};

// prob[g] = #(samples with gamma_db > grid[g]) / #samples.
CcdfCurve empirical_ccdf(std::span<const PaprSample> samples,
                         std::span<const double> gamma_db_grid);

// Number of indices m with |z[m]| < level <= |z[m+1]| over the frame.
std::int64_t count_level_upcrossings(const SampledSignal& frame, double level);

// 4.0 .. 13.0 dB in 0.1 dB steps — covers the analytic validity range used
// by every reported curve.
std::vector<double> default_gamma_grid_db();

// Abscissa where the curve crosses the given probability, interpolated
// log-linearly between grid points. NaN when the curve never crosses.
double curve_crossing_db(const CcdfCurve& curve, double prob);

}  // namespace paprlab
