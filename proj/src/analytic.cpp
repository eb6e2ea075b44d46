// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace paprlab {

namespace {

constexpr double kPi = std::numbers::pi;

double lambda_moment(const SpectralMoments& m, double mu) {
  return mu * mu / kPi * (m.lambda2 - m.lambda1 * m.lambda1);
}

}  // namespace

std::pair<double, double> subband_moments(const SystemLayout& layout, int subband) {
  const SubbandLayout& sub = layout.subbands.at(static_cast<std::size_t>(subband));
  const double d = sub.offset;
  const double b = sub.bandwidth;
  const double alpha = 2.0 * kPi * (d + 0.5 * b);
  const double beta = 4.0 * kPi * kPi * (d * d + d * b + b * b / 3.0);
  return {alpha, beta};
}

SpectralMoments composite_moments(const SystemLayout& layout) {
  SpectralMoments m;
  m.alpha.reserve(layout.subbands.size());
  m.beta.reserve(layout.subbands.size());
  for (std::size_t i = 0; i < layout.subbands.size(); ++i) {
    const auto [alpha, beta] = subband_moments(layout, static_cast<int>(i));
    m.alpha.push_back(alpha);
    m.beta.push_back(beta);
    m.lambda1 += layout.subbands[i].power * alpha;
    m.lambda2 += layout.subbands[i].power * beta;
  }
  return m;
}

LambdaFactor lambda_factor(const SystemLayout& layout) {
  const SpectralMoments m = composite_moments(layout);
  const double mu = layout.mu;

  LambdaFactor out;
  out.moment_form = lambda_moment(m, mu);

  // Expanded per-subband form. The per-window symbol factor is T0*f_i/mu,
  // which equals both the spacing ratio and n_i whenever the CP fraction is
  // shared across subbands.
  double diag = 0.0;
  for (const auto& sub : layout.subbands) {
    const double x = sub.ratio.value();
    const double eta = sub.power;
    const double n = static_cast<double>(sub.subcarrier_count);
    const double d = sub.normalized_offset;
    diag += x * x *
            (eta * eta * n * n / 3.0 +
             4.0 * eta * (1.0 - eta) * (d * d + d * n + n * n / 3.0));
  }
  double cross = 0.0;
  for (std::size_t l = 0; l < layout.subbands.size(); ++l) {
    for (std::size_t k = l + 1; k < layout.subbands.size(); ++k) {
      const auto& sl = layout.subbands[l];
      const auto& sk = layout.subbands[k];
      cross += sl.ratio.value() * sk.ratio.value() * sl.power * sk.power *
               (sl.normalized_offset + 0.5 * sl.subcarrier_count) *
               (sk.normalized_offset + 0.5 * sk.subcarrier_count);
    }
  }
  out.expanded_form = kPi * mu * mu * diag - 8.0 * kPi * mu * mu * cross;

  out.value = out.moment_form;
  const double scale = std::max(std::abs(out.moment_form), std::abs(out.expanded_form));
  if (scale > 0.0 && std::abs(out.moment_form - out.expanded_form) > 1e-8 * scale) {
    std::ostringstream os;
    os << "Lambda cross-form mismatch: moment form " << out.moment_form << " vs expanded form "
       << out.expanded_form;
    throw std::logic_error(os.str());
  }
  return out;
}

double lambda_for_powers(const SystemLayout& layout, std::span<const double> eta) {
  if (eta.size() != layout.subbands.size()) {
    throw std::invalid_argument("lambda_for_powers: eta size mismatch");
  }
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const auto [alpha, beta] = subband_moments(layout, static_cast<int>(i));
    lambda1 += eta[i] * alpha;
    lambda2 += eta[i] * beta;
  }
  return layout.mu * layout.mu / kPi * (lambda2 - lambda1 * lambda1);
}

double crossing_rate(double level, const SystemLayout& layout) {
  if (level < 0.0) throw std::invalid_argument("crossing_rate: level must be >= 0");
  const double lambda = lambda_factor(layout).value;
  return std::sqrt(lambda) * level * std::exp(-level * level);
}

double envelope_cdf(double r, const SystemLayout& layout) {
  if (!(r > 0.0)) throw std::invalid_argument("envelope_cdf: r must be positive");
  const double lambda = lambda_factor(layout).value;
  return std::exp(-std::sqrt(lambda) * r * std::exp(-r * r));
}

double envelope_cdf(double r, const SystemLayout& layout, double rbar) {
  if (!(r > 0.0)) throw std::invalid_argument("envelope_cdf: r must be positive");
  if (!(r > rbar)) throw std::invalid_argument("envelope_cdf: requires r > rbar");
  const double base = rbar * std::exp(-rbar * rbar);
  if (base <= 0.0) throw std::invalid_argument("envelope_cdf: rbar*exp(-rbar^2) vanished");
  const double crossings = std::sqrt(lambda_factor(layout).value) * base;
  return std::pow(1.0 - r * std::exp(-r * r) / base, crossings);
}

double ccdf_proposed_for_lambda(double gamma, double lambda) {
  if (!(gamma > 0.0)) throw std::invalid_argument("ccdf_proposed: gamma must be positive");
  return -std::expm1(-std::sqrt(lambda * gamma) * std::exp(-gamma));
}

double ccdf_proposed(double gamma, const SystemLayout& layout) {
  return ccdf_proposed_for_lambda(gamma, lambda_factor(layout).value);
}

double ccdf_baseline(BaselineKind kind, double gamma, const BaselineParams& params) {
  if (!(gamma > 0.0)) throw std::invalid_argument("ccdf_baseline: gamma must be positive");
  const double n = static_cast<double>(params.subcarrier_total);
  if (params.subcarrier_total < 1) {
    throw std::invalid_argument("ccdf_baseline: subcarrier_total must be >= 1");
  }
  switch (kind) {
    case BaselineKind::nyquist:
      return -std::expm1(n * std::log1p(-std::exp(-gamma)));
    case BaselineKind::empirical_2p8:
      return -std::expm1(2.8 * n * std::log1p(-std::exp(-gamma)));
    case BaselineKind::ochiai:
      return -std::expm1(-n * std::exp(-gamma) * std::sqrt(kPi * gamma / 3.0));
    case BaselineKind::extreme_value:
      return -std::expm1(-n * std::exp(-gamma) * std::sqrt(kPi * std::log(n) / 3.0));
    case BaselineKind::power_weighted: {
      const std::size_t half = static_cast<std::size_t>(params.subcarrier_total / 2);
      const std::size_t slots = 2 * half + 1;
      if (params.subcarrier_powers.size() != slots) {
        throw std::invalid_argument(
            "ccdf_baseline: power_weighted needs per-subcarrier powers over -N/2..N/2 (" +
            std::to_string(slots) + " values)");
      }
      double weighted = 0.0;
      for (std::size_t s = 0; s < slots; ++s) {
        const double k = static_cast<double>(s) - static_cast<double>(half);
        weighted += k * k * params.subcarrier_powers[s];
      }
      return -std::expm1(-2.0 * std::exp(-gamma) *
                         std::sqrt(kPi * gamma * weighted / (n * params.average_power)));
    }
  }
  throw std::invalid_argument("ccdf_baseline: unknown kind");
}

BaselineParams baseline_params_from_layout(const SystemLayout& layout) {
  BaselineParams params;
  params.average_power = 1.0;
  for (const auto& sub : layout.subbands) params.subcarrier_total += sub.subcarrier_count;
  const std::size_t half = static_cast<std::size_t>(params.subcarrier_total / 2);
  params.subcarrier_powers.assign(2 * half + 1, 0.0);
  std::size_t pos = 0;
  for (const auto& sub : layout.subbands) {
    const double per_carrier = sub.power / static_cast<double>(sub.subcarrier_count);
    for (int k = 0; k < sub.subcarrier_count && pos < params.subcarrier_powers.size(); ++k) {
      params.subcarrier_powers[pos++] = per_carrier;
    }
  }
  return params;
}

double mean_envelope_for_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("mean_envelope: Lambda must be positive");
  const double sqrt_lambda = std::sqrt(lambda);
  // F(6) is within 1e-12 of 1 even for Lambda = 1e8, so the dropped tail is
  // far below the quoted accuracy.
  constexpr double kUpper = 6.0;
  constexpr int kIntervals = 6000;  // step 1e-3, even count for Simpson
  const double h = kUpper / kIntervals;
  auto integrand = [sqrt_lambda](double r) {
    return -std::expm1(-sqrt_lambda * r * std::exp(-r * r));
  };
  double sum = integrand(0.0) + integrand(kUpper);
  for (int i = 1; i < kIntervals; ++i) {
    sum += integrand(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  const double value = sum * h / 3.0;
  if (!std::isfinite(value)) throw std::runtime_error("mean_envelope: quadrature failed");
  return value;
}

double mean_envelope(const SystemLayout& layout) {
  return mean_envelope_for_lambda(lambda_factor(layout).value);
}

}  // namespace paprlab
