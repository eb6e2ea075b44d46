// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "paprlab/config.hpp"

namespace paprlab {

// Frequencies are measured in multiples of f_1 throughout this module, so
// alpha_i is in rad*f_1 and beta_i in rad^2*f_1^2. Every exported quantity
// (Lambda, crossing counts per frame, probabilities) is dimensionless and
// therefore independent of the absolute f_1.

// First and second normalized spectral moments of one subband's flat PSD:
// alpha_i = 2*pi*(delta_i + B_i/2), beta_i = 4*pi^2*(delta_i^2 +
// delta_i*B_i + B_i^2/3).
std::pair<double, double> subband_moments(const SystemLayout& layout, int subband);

struct SpectralMoments {
  std::vector<double> alpha;
  std::vector<double> beta;
  double lambda1 = 0.0;  // sum eta_i alpha_i
  double lambda2 = 0.0;  // sum eta_i beta_i
};

SpectralMoments composite_moments(const SystemLayout& layout);

// Lambda = (T0^2/pi) * (lambda2 - lambda1^2), the single scalar behind the
// crossing rate and the proposed CCDF. Computed along two independent
// routes: the moment form (ground truth) and the expanded per-subband form
// in (mu, n_i, d_i, N_i, eta_i) with the cross sum taken over unordered
// subband pairs with coefficient 8*pi*mu^2. Both must agree.
struct LambdaFactor {
  double value = 0.0;  // the moment form
  double moment_form = 0.0;
  double expanded_form = 0.0;
};

// Throws std::logic_error when the two routes disagree beyond 1e-8 relative.
LambdaFactor lambda_factor(const SystemLayout& layout);

// Moment-form Lambda with the layout's powers replaced by eta (size M,
// summing to 1). Used by the allocation sweep and the grid oracle.
double lambda_for_powers(const SystemLayout& layout, std::span<const double> eta);

// Mean number of up-crossings of the envelope through level r over one
// frame: U(r, T0) = sqrt(Lambda) * r * exp(-r^2).
double crossing_rate(double level, const SystemLayout& layout);

// Envelope CDF. The default form exp(-sqrt(Lambda) * r * exp(-r^2)) is free
// of the reference level; the overload keeps the finite reference level
// rbar and evaluates (1 - r e^{-r^2} / (rbar e^{-rbar^2}))^{U(rbar, T0)}.
double envelope_cdf(double r, const SystemLayout& layout);
double envelope_cdf(double r, const SystemLayout& layout, double rbar);

// Proposed PAPR CCDF: 1 - exp(-sqrt(Lambda*gamma) * exp(-gamma)). Valid for
// gamma > 1/2 (the stationary point of sqrt(gamma)*exp(-gamma)); the CLI
// clips analytic grids to that floor.
double ccdf_proposed(double gamma, const SystemLayout& layout);
double ccdf_proposed_for_lambda(double gamma, double lambda);

enum class BaselineKind { nyquist, empirical_2p8, ochiai, extreme_value, power_weighted };

struct BaselineParams {
  int subcarrier_total = 0;  // N; for mixed configs the sum of all N_i
  double average_power = 1.0;
  // Per-subcarrier powers over the symmetric index range -floor(N/2) ..
  // +floor(N/2); required by power_weighted only.
  std::vector<double> subcarrier_powers;
};

double ccdf_baseline(BaselineKind kind, double gamma, const BaselineParams& params);

// Convenience: N = sum N_i, unit average power, and per-subcarrier powers
// eta_i/N_i laid out subband-by-subband on the symmetric index grid.
BaselineParams baseline_params_from_layout(const SystemLayout& layout);

// Mean envelope E[r] = integral_0^inf (1 - F(r)) dr with F the reference-
// free CDF; composite Simpson on [0, 6] with step 1e-3, the tail beyond 6
// being negligible for any Lambda of interest.
double mean_envelope(const SystemLayout& layout);
double mean_envelope_for_lambda(double lambda);

}  // namespace paprlab
