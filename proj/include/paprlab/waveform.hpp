// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "paprlab/config.hpp"
#include "paprlab/random.hpp"

namespace paprlab {

// Complex information symbols with unit average constellation power.
struct InfoSymbolBlock {
  std::vector<std::complex<double>> symbols;
  int constellation_order = 0;
};

// I.i.d. uniform draws from the unit-average-power QAM constellation
// (order 4, 16 or 64). Reproducible given the stream state.
InfoSymbolBlock draw_info_symbols(int order, std::int64_t count, RandomStream& stream);

// The unit-power constellation table for an order (exposed for tests).
std::vector<std::complex<double>> qam_constellation(int order);

struct SampledSignal {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz = 0.0;
  double duration_s = 0.0;
};

// Renders oversampled composite frames for one layout. Owns per-subband
// inverse-FFT plans and phase-ramp tables, so reuse one instance per worker
// thread. Synthesis is pure given (layout, stream): a frame depends only on
// the trial key behind the stream.
class FrameSynthesizer {
 public:
  explicit FrameSynthesizer(const SystemLayout& layout);
  ~FrameSynthesizer();
  FrameSynthesizer(const FrameSynthesizer&) = delete;
  FrameSynthesizer& operator=(const FrameSynthesizer&) = delete;

  const SystemLayout& layout() const { return layout_; }

  // One LCM frame: n_i symbols per subband summed sample-wise (synchronized
  // mode), or ceil(n_i)+1 symbols with an independent uniform start offset
  // per subband, cropped to the window (asynchronous mode).
  SampledSignal synthesize(RandomStream& stream);

  // Same draws, but each subband rendered into its own buffer.
  std::vector<SampledSignal> synthesize_per_subband(RandomStream& stream);

  // Spectrum-confinement variants: raised-cosine edge taper per symbol, or
  // per-subband windowed-sinc filtering before summation.
  SampledSignal synthesize_windowed(RandomStream& stream, int rolloff_samples);
  SampledSignal synthesize_filtered(RandomStream& stream, int filter_order = 512);

 private:
  struct SubbandEngine;
  void render_subband(std::size_t index, RandomStream& stream, std::complex<double>* out,
                      int rolloff_samples);

  SystemLayout layout_;
  std::vector<std::unique_ptr<SubbandEngine>> engines_;
};

// One OFDM symbol of subband `subband` (CP + one useful period) from given
// information symbols, on the layout's oversampled grid.
SampledSignal synthesize_subband_symbol(const SystemLayout& layout, int subband,
                                        const InfoSymbolBlock& block);

// One composite LCM frame (convenience wrapper over FrameSynthesizer).
SampledSignal synthesize_lcm_frame(const SystemLayout& layout, RandomStream& stream);

// Complex FIR for one subband: Hann-windowed sinc lowpass of the given
// order, shifted to the subband center, passband = subband bandwidth plus
// one spacing of transition on each side, normalized to unit gain at the
// center frequency.
struct FirFilter {
  std::vector<std::complex<double>> taps;
};

FirFilter design_subband_filter(const SystemLayout& layout, int subband, int order = 512);

// Linear convolution with group-delay compensation, cropped to the input's
// window. Throws if the filter is longer than the frame.
SampledSignal apply_subband_filter(const SampledSignal& signal, const FirFilter& filter);

// Raised-cosine taper on the first/last rolloff_samples of one symbol;
// interior samples are untouched. Requires 2*rolloff <= CP samples.
SampledSignal apply_edge_window(const SampledSignal& symbol, const SystemLayout& layout,
                                int subband, int rolloff_samples);

// Debug/golden-test dump: 24-byte header (magic "MNPL", version u32, sample
// count u64, sample rate f64) followed by little-endian float64 (re, im)
// pairs.
void write_signal_dump(const SampledSignal& signal, const std::string& path);
SampledSignal read_signal_dump(const std::string& path);

}  // namespace paprlab
