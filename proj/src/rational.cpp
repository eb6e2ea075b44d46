// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace paprlab {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (n <= 0 || d <= 0) {
    throw std::invalid_argument("rational must be positive: " + std::to_string(n) + "/" +
                                std::to_string(d));
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

bool Rational::is_power_of_two_integer() const {
  return den == 1 && num > 0 && (num & (num - 1)) == 0;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text), 1);
    }
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational from '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: '" + text + "'");
  }
}

Rational rational_from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::invalid_argument("rational must be a positive finite number");
  }
  // Continued-fraction convergents p/q until the denominator budget runs out.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fa = std::floor(v);
    if (fa > 9.0e18) break;
    const auto a = static_cast<std::int64_t>(fa);
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = v - fa;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  if (q1 == 0 || p1 <= 0) {
    throw std::invalid_argument("no simple rational matches " + std::to_string(x));
  }
  const Rational r(p1, q1);
  if (std::abs(r.value() - x) > 1e-9 * x) {
    throw std::invalid_argument("value " + std::to_string(x) +
                                " is not a simple rational; write it as \"p/q\"");
  }
  return r;
}

}  // namespace paprlab
