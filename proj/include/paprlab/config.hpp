// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "paprlab/rational.hpp"

namespace paprlab {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NumerologyMode { synchronized, asynchronous };

// One numerology: spacing ratio f_i/f_1 and CP fraction T_cp,i / T_sys,i.
// Synchronized mode restricts the ratio to the power-of-two family.
struct NumerologySpec {
  Rational spacing_ratio{1, 1};
  double cp_fraction = 0.0;
};

struct SubbandSpec {
  NumerologySpec numerology;
  int subcarrier_count = 1;  // N_i
  double power = 1.0;        // eta_i, fraction of total average power
  double guard_after = 0.0;  // g_i in multiples of f_1; meaningless on the last subband
};

struct SystemSpec {
  double base_spacing_hz = 15e3;  // f_1, the minimum subcarrier spacing
  std::vector<SubbandSpec> subbands;
  NumerologyMode mode = NumerologyMode::synchronized;
  int qam_order = 16;
  int oversample = 8;  // J
  std::uint64_t seed = 0;
};

// Fully derived description of one subband on the common sampling grid.
// Frequencies are kept in multiples of f_1 so offset accumulation stays
// exact for integer inputs; Hz values are produced at the interface only.
struct SubbandLayout {
  Rational ratio;            // f_i / f_1
  double spacing_hz = 0.0;   // f_i
  double bandwidth = 0.0;    // B_i = N_i f_i, in f_1 units
  double offset = 0.0;       // delta_i = sum_{v<i}(B_v + g_v), in f_1 units
  double normalized_offset = 0.0;  // d_i = delta_i / f_i
  double symbols_per_frame = 0.0;  // n_i = T0 / T_i (integer when synchronized)
  double cp_fraction = 0.0;
  int subcarrier_count = 0;  // N_i
  double power = 0.0;        // eta_i

  // Discrete grid quantities (see derive_layout for the construction):
  std::int64_t base_useful_samples = 0;  // U1_i = C / R_i, J = 1
  std::int64_t useful_samples = 0;       // U_i = J * U1_i, one period of the data part
  std::int64_t cp_samples = 0;           // J * round(cp_fraction * U1_i)
  double base_symbol_span = 0.0;         // (1 + cp_fraction) * U1_i, before rounding
};

struct SystemLayout {
  SystemSpec spec;  // resolved input echo
  std::vector<SubbandLayout> subbands;
  double total_bandwidth = 0.0;  // B in f_1 units
  double total_bandwidth_hz = 0.0;
  double frame_duration_s = 0.0;  // T0 = mu / f_1
  double mu = 0.0;                // T0 * f_1 = 1 + cp fraction of the base numerology
  std::int64_t grid_bins = 0;     // C: smallest integer >= B/f_1 with C/R_i integral
  std::int64_t base_frame_samples = 0;  // S1 = round(mu * C)
  std::int64_t frame_samples = 0;       // S = J * S1
  double sample_rate_hz = 0.0;          // J * C * f_1
  double sample_interval_s = 0.0;
};

// Returns every violated invariant as a human-readable message; an empty
// list means the spec is internally consistent.
std::vector<std::string> validate_spec(const SystemSpec& spec);

// Derives the full layout. Throws ConfigError when validate_spec is
// non-empty (all violations joined into the message).
SystemLayout derive_layout(const SystemSpec& spec);

// JSON configuration document mirroring SystemSpec (snake_case keys; see
// README for the schema). Unknown keys are rejected with the offending key
// named in the error.
SystemSpec spec_from_json_text(const std::string& text);
SystemSpec load_spec(const std::string& path);
std::string spec_to_json_text(const SystemSpec& spec);

}  // namespace paprlab
