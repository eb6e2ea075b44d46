// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/waveform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace paprlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_planning_mutex() {
  static std::mutex m;
  return m;
}

// Unnormalized inverse transform: out[l] = sum_k in[k] e^{+j 2 pi k l / n}.
struct InverseFft {
  int size = 0;
  std::complex<double>* in = nullptr;
  std::complex<double>* out = nullptr;
  fftw_plan plan = nullptr;

  explicit InverseFft(int n) : size(n) {
    in = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    out = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!in || !out) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(fftw_planning_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in),
                            reinterpret_cast<fftw_complex*>(out), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
  }

  ~InverseFft() {
    std::lock_guard<std::mutex> lock(fftw_planning_mutex());
    if (plan) fftw_destroy_plan(plan);
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }

  InverseFft(const InverseFft&) = delete;
  InverseFft& operator=(const InverseFft&) = delete;

  void execute() { fftw_execute(plan); }
};

const std::vector<std::complex<double>>& constellation_table(int order) {
  static const std::vector<std::complex<double>> qpsk = [] {
    std::vector<std::complex<double>> pts;
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 4; ++i) pts.emplace_back((i & 1 ? s : -s), (i & 2 ? s : -s));
    return pts;
  }();
  static const std::vector<std::complex<double>> qam16 = [] {
    std::vector<std::complex<double>> pts;
    const double levels[4] = {-3, -1, 1, 3};
    const double s = 1.0 / std::sqrt(10.0);
    for (int i = 0; i < 16; ++i) pts.emplace_back(levels[i & 3] * s, levels[(i >> 2) & 3] * s);
    return pts;
  }();
  static const std::vector<std::complex<double>> qam64 = [] {
    std::vector<std::complex<double>> pts;
    const double levels[8] = {-7, -5, -3, -1, 1, 3, 5, 7};
    const double s = 1.0 / std::sqrt(42.0);
    for (int i = 0; i < 64; ++i) pts.emplace_back(levels[i & 7] * s, levels[(i >> 3) & 7] * s);
    return pts;
  }();
  switch (order) {
    case 4:
      return qpsk;
    case 16:
      return qam16;
    case 64:
      return qam64;
    default:
      throw std::invalid_argument("unsupported constellation order " + std::to_string(order));
  }
}

double raised_cosine_edge(std::int64_t position, std::int64_t span, int rolloff) {
  if (rolloff <= 0) return 1.0;
  const std::int64_t from_end = span - 1 - position;
  const std::int64_t edge = std::min(position, from_end);
  if (edge >= rolloff) return 1.0;
  return 0.5 * (1.0 - std::cos(std::numbers::pi * (static_cast<double>(edge) + 0.5) /
                               static_cast<double>(rolloff)));
}

}  // namespace

std::vector<std::complex<double>> qam_constellation(int order) { return constellation_table(order); }

InfoSymbolBlock draw_info_symbols(int order, std::int64_t count, RandomStream& stream) {
  if (count < 1) throw std::invalid_argument("draw_info_symbols: count must be >= 1");
  const auto& table = constellation_table(order);
  InfoSymbolBlock block;
  block.constellation_order = order;
  block.symbols.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    block.symbols.push_back(table[stream.uniform_pow2(static_cast<std::uint32_t>(order))]);
  }
  return block;
}

// Per-subband synthesis state. The data part of a symbol is one period of
// the size-U inverse FFT with bins at multiples of f_i; the subband offset
// delta_i is applied as a per-sample phase ramp so it does not need to sit
// on that bin grid. The ramp repeats symbol-to-symbol because the phase
// reference is the symbol's own CP-end instant.
struct FrameSynthesizer::SubbandEngine {
  InverseFft fft;
  std::vector<std::complex<double>> ramp;  // indexed by (sample - symbol start)
  std::int64_t useful = 0;                 // U_i
  std::int64_t cp = 0;                     // CP samples
  int symbols = 0;                         // symbols rendered per frame
  double scale = 0.0;                      // sqrt(eta_i / N_i)
  int data_count = 0;                      // N_i

  explicit SubbandEngine(int fft_size) : fft(fft_size) {}
};

FrameSynthesizer::FrameSynthesizer(const SystemLayout& layout) : layout_(layout) {
  const bool async = layout_.spec.mode == NumerologyMode::asynchronous;
  const std::int64_t oversample = layout_.spec.oversample;
  const std::int64_t grid_span = oversample * layout_.grid_bins;
  for (const auto& sub : layout_.subbands) {
    auto eng = std::make_unique<SubbandEngine>(static_cast<int>(sub.useful_samples));
    eng->useful = sub.useful_samples;
    eng->cp = sub.cp_samples;
    eng->data_count = sub.subcarrier_count;
    eng->scale = std::sqrt(sub.power / static_cast<double>(sub.subcarrier_count));
    eng->symbols = async ? static_cast<int>(std::ceil(sub.symbols_per_frame)) + 1
                         : static_cast<int>(std::llround(sub.symbols_per_frame));

    // Longest per-symbol sample span that boundary rounding can produce.
    const std::int64_t max_span =
        oversample * (static_cast<std::int64_t>(std::ceil(sub.base_symbol_span)) + 2);
    eng->ramp.resize(static_cast<std::size_t>(max_span));
    const double delta = sub.offset;  // in f_1 units
    for (std::int64_t t = 0; t < max_span; ++t) {
      const double turns =
          std::fmod(delta * static_cast<double>(t - eng->cp), static_cast<double>(grid_span)) /
          static_cast<double>(grid_span);
      eng->ramp[static_cast<std::size_t>(t)] =
          std::polar(1.0, kTwoPi * turns);
    }
    engines_.push_back(std::move(eng));
  }
}

FrameSynthesizer::~FrameSynthesizer() = default;

void FrameSynthesizer::render_subband(std::size_t index, RandomStream& stream,
                                      std::complex<double>* out, int rolloff_samples) {
  const SubbandLayout& sub = layout_.subbands[index];
  SubbandEngine& eng = *engines_[index];
  const bool async = layout_.spec.mode == NumerologyMode::asynchronous;
  const std::int64_t oversample = layout_.spec.oversample;
  const std::int64_t total = layout_.frame_samples;
  const auto& table = constellation_table(layout_.spec.qam_order);
  const auto order = static_cast<std::uint32_t>(layout_.spec.qam_order);

  if (rolloff_samples > 0 && 2 * static_cast<std::int64_t>(rolloff_samples) > eng.cp) {
    throw std::invalid_argument("edge window rolloff exceeds half the CP length");
  }

  // Symbol boundaries are rounded on the base (J = 1) grid and scaled by J,
  // so a frame at oversampling J' | J is an exact subsampling of the J one.
  double start_offset = 0.0;
  if (async) start_offset = stream.uniform01();
  auto boundary = [&](int v) -> std::int64_t {
    if (async) {
      return oversample *
             std::llround((static_cast<double>(v) - start_offset) * sub.base_symbol_span);
    }
    const double base = static_cast<double>(layout_.base_frame_samples) *
                        static_cast<double>(v) / sub.symbols_per_frame;
    return oversample * std::llround(base);
  };

  for (int v = 0; v < eng.symbols; ++v) {
    // Fixed draw count per symbol, consumed even when the symbol falls
    // outside the cropped window, so the stream position stays aligned.
    for (int k = 0; k < eng.data_count; ++k) {
      eng.fft.in[k] = eng.scale * table[stream.uniform_pow2(order)];
    }
    std::fill(eng.fft.in + eng.data_count, eng.fft.in + eng.useful, std::complex<double>());

    const std::int64_t begin = boundary(v);
    const std::int64_t end = boundary(v + 1);
    const std::int64_t lo = std::max<std::int64_t>(0, begin);
    const std::int64_t hi = std::min<std::int64_t>(total, end);
    if (lo >= hi) continue;

    eng.fft.execute();
    const std::int64_t span = end - begin;
    std::int64_t phase = ((lo - begin - eng.cp) % eng.useful + eng.useful) % eng.useful;
    for (std::int64_t m = lo; m < hi; ++m) {
      const std::int64_t local = m - begin;
      std::complex<double> value = eng.ramp[static_cast<std::size_t>(local)] *
                                   eng.fft.out[static_cast<std::size_t>(phase)];
      if (rolloff_samples > 0) value *= raised_cosine_edge(local, span, rolloff_samples);
      out[m] += value;
      if (++phase == eng.useful) phase = 0;
    }
  }
}

SampledSignal FrameSynthesizer::synthesize(RandomStream& stream) {
  SampledSignal sig;
  sig.samples.assign(static_cast<std::size_t>(layout_.frame_samples), {});
  sig.sample_rate_hz = layout_.sample_rate_hz;
  sig.duration_s = static_cast<double>(layout_.frame_samples) * layout_.sample_interval_s;
  for (std::size_t i = 0; i < engines_.size(); ++i) {
    render_subband(i, stream, sig.samples.data(), 0);
  }
  return sig;
}

std::vector<SampledSignal> FrameSynthesizer::synthesize_per_subband(RandomStream& stream) {
  std::vector<SampledSignal> result;
  result.reserve(engines_.size());
  for (std::size_t i = 0; i < engines_.size(); ++i) {
    SampledSignal sig;
    sig.samples.assign(static_cast<std::size_t>(layout_.frame_samples), {});
    sig.sample_rate_hz = layout_.sample_rate_hz;
    sig.duration_s = static_cast<double>(layout_.frame_samples) * layout_.sample_interval_s;
    render_subband(i, stream, sig.samples.data(), 0);
    result.push_back(std::move(sig));
  }
  return result;
}

SampledSignal FrameSynthesizer::synthesize_windowed(RandomStream& stream, int rolloff_samples) {
  SampledSignal sig;
  sig.samples.assign(static_cast<std::size_t>(layout_.frame_samples), {});
  sig.sample_rate_hz = layout_.sample_rate_hz;
  sig.duration_s = static_cast<double>(layout_.frame_samples) * layout_.sample_interval_s;
  for (std::size_t i = 0; i < engines_.size(); ++i) {
    render_subband(i, stream, sig.samples.data(), rolloff_samples);
  }
  return sig;
}

SampledSignal FrameSynthesizer::synthesize_filtered(RandomStream& stream, int filter_order) {
  auto parts = synthesize_per_subband(stream);
  SampledSignal sig;
  sig.samples.assign(static_cast<std::size_t>(layout_.frame_samples), {});
  sig.sample_rate_hz = layout_.sample_rate_hz;
  sig.duration_s = static_cast<double>(layout_.frame_samples) * layout_.sample_interval_s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const FirFilter fir = design_subband_filter(layout_, static_cast<int>(i), filter_order);
    const SampledSignal filtered = apply_subband_filter(parts[i], fir);
    for (std::size_t m = 0; m < sig.samples.size(); ++m) sig.samples[m] += filtered.samples[m];
  }
  return sig;
}

SampledSignal synthesize_subband_symbol(const SystemLayout& layout, int subband,
                                        const InfoSymbolBlock& block) {
  const SubbandLayout& sub = layout.subbands.at(static_cast<std::size_t>(subband));
  if (static_cast<std::int64_t>(block.symbols.size()) != sub.subcarrier_count) {
    throw std::invalid_argument("synthesize_subband_symbol: block length mismatch (want " +
                                std::to_string(sub.subcarrier_count) + ", got " +
                                std::to_string(block.symbols.size()) + ")");
  }
  const std::int64_t useful = sub.useful_samples;
  const std::int64_t cp = sub.cp_samples;
  const double scale = std::sqrt(sub.power / static_cast<double>(sub.subcarrier_count));
  const double grid_span = static_cast<double>(layout.spec.oversample * layout.grid_bins);

  InverseFft fft(static_cast<int>(useful));
  for (std::int64_t k = 0; k < useful; ++k) {
    fft.in[k] = k < sub.subcarrier_count ? scale * block.symbols[static_cast<std::size_t>(k)]
                                         : std::complex<double>();
  }
  fft.execute();

  SampledSignal sig;
  sig.sample_rate_hz = layout.sample_rate_hz;
  sig.duration_s = static_cast<double>(cp + useful) * layout.sample_interval_s;
  sig.samples.resize(static_cast<std::size_t>(cp + useful));
  for (std::int64_t m = 0; m < cp + useful; ++m) {
    const std::int64_t l = m - cp;  // phase reference at the CP end
    const double turns = std::fmod(sub.offset * static_cast<double>(l), grid_span) / grid_span;
    sig.samples[static_cast<std::size_t>(m)] =
        std::polar(1.0, kTwoPi * turns) *
        fft.out[static_cast<std::size_t>(((l % useful) + useful) % useful)];
  }
  return sig;
}

SampledSignal synthesize_lcm_frame(const SystemLayout& layout, RandomStream& stream) {
  FrameSynthesizer synth(layout);
  return synth.synthesize(stream);
}

FirFilter design_subband_filter(const SystemLayout& layout, int subband, int order) {
  if (order < 2) throw std::invalid_argument("filter order must be >= 2");
  const SubbandLayout& sub = layout.subbands.at(static_cast<std::size_t>(subband));
  const double fs = static_cast<double>(layout.spec.oversample * layout.grid_bins);  // f_1 units
  const double half_width = 0.5 * sub.bandwidth + sub.ratio.value();  // one spacing of transition
  const double cutoff = half_width / fs;        // cycles per sample
  const double center = sub.offset + 0.5 * sub.bandwidth;
  const int taps = order + 1;
  const int delay = order / 2;

  FirFilter fir;
  fir.taps.resize(static_cast<std::size_t>(taps));
  for (int t = 0; t < taps; ++t) {
    const double x = static_cast<double>(t - delay);
    const double u = 2.0 * cutoff * x;
    const double sinc = u == 0.0 ? 1.0 : std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
    const double window =
        0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(t) / static_cast<double>(order));
    fir.taps[static_cast<std::size_t>(t)] =
        2.0 * cutoff * sinc * window * std::polar(1.0, kTwoPi * center * x / fs);
  }
  // Unit gain (and zero phase) at the subband center.
  std::complex<double> gain;
  for (int t = 0; t < taps; ++t) {
    gain += fir.taps[static_cast<std::size_t>(t)] *
            std::polar(1.0, -kTwoPi * center * static_cast<double>(t) / fs);
  }
  for (auto& tap : fir.taps) tap /= gain;
  return fir;
}

SampledSignal apply_subband_filter(const SampledSignal& signal, const FirFilter& filter) {
  const std::int64_t total = static_cast<std::int64_t>(signal.samples.size());
  const std::int64_t taps = static_cast<std::int64_t>(filter.taps.size());
  if (taps > total) throw std::invalid_argument("filter is longer than the frame");
  const std::int64_t delay = (taps - 1) / 2;

  SampledSignal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.duration_s = signal.duration_s;
  out.samples.assign(signal.samples.size(), {});
  for (std::int64_t m = 0; m < total; ++m) {
    std::complex<double> acc;
    const std::int64_t shifted = m + delay;
    const std::int64_t t_lo = std::max<std::int64_t>(0, shifted - (total - 1));
    const std::int64_t t_hi = std::min<std::int64_t>(taps - 1, shifted);
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
      acc += filter.taps[static_cast<std::size_t>(t)] *
             signal.samples[static_cast<std::size_t>(shifted - t)];
    }
    out.samples[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

SampledSignal apply_edge_window(const SampledSignal& symbol, const SystemLayout& layout,
                                int subband, int rolloff_samples) {
  const SubbandLayout& sub = layout.subbands.at(static_cast<std::size_t>(subband));
  if (rolloff_samples < 0) throw std::invalid_argument("rolloff must be non-negative");
  if (2 * static_cast<std::int64_t>(rolloff_samples) > sub.cp_samples) {
    throw std::invalid_argument("edge window rolloff exceeds half the CP length");
  }
  SampledSignal out = symbol;
  const auto span = static_cast<std::int64_t>(out.samples.size());
  for (std::int64_t m = 0; m < span; ++m) {
    const double w = raised_cosine_edge(m, span, rolloff_samples);
    if (w != 1.0) out.samples[static_cast<std::size_t>(m)] *= w;
  }
  return out;
}

namespace {

constexpr char kDumpMagic[4] = {'M', 'N', 'P', 'L'};
constexpr std::uint32_t kDumpVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "signal dumps are little-endian; big-endian hosts need byte swaps");

}  // namespace

void write_signal_dump(const SampledSignal& signal, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open dump file for writing: " + path);
  const std::uint64_t count = signal.samples.size();
  out.write(kDumpMagic, 4);
  out.write(reinterpret_cast<const char*>(&kDumpVersion), sizeof(kDumpVersion));
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  out.write(reinterpret_cast<const char*>(&signal.sample_rate_hz), sizeof(double));
  out.write(reinterpret_cast<const char*>(signal.samples.data()),
            static_cast<std::streamsize>(count * sizeof(std::complex<double>)));
  if (!out) throw std::runtime_error("failed writing dump file: " + path);
}

SampledSignal read_signal_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dump file: " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  SampledSignal sig;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  in.read(reinterpret_cast<char*>(&sig.sample_rate_hz), sizeof(double));
  if (!in || std::memcmp(magic, kDumpMagic, 4) != 0) {
    throw std::runtime_error("not a paprlab signal dump: " + path);
  }
  if (version != kDumpVersion) {
    throw std::runtime_error("unsupported dump version " + std::to_string(version));
  }
  sig.samples.resize(count);
  in.read(reinterpret_cast<char*>(sig.samples.data()),
          static_cast<std::streamsize>(count * sizeof(std::complex<double>)));
  if (!in) throw std::runtime_error("truncated dump file: " + path);
  if (sig.sample_rate_hz > 0.0) {
    sig.duration_s = static_cast<double>(count) / sig.sample_rate_hz;
  }
  return sig;
}

}  // namespace paprlab
