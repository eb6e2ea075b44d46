// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <cstdint>
#include <string>

namespace paprlab {

// Exact positive rational. Subcarrier-spacing ratios are kept rational so
// that derived sampling-grid sizes stay integral instead of drifting in
// floating point.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);  // reduces; throws on n<=0 or d<=0

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  bool is_power_of_two_integer() const;
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

// Parses "p/q" or a bare integer string.
Rational parse_rational(const std::string& text);

// Recovers a small rational from a double via continued fractions. Throws if
// no fraction with denominator <= max_den reproduces x to 1e-9 relative.
Rational rational_from_double(double x, std::int64_t max_den = 4096);

}  // namespace paprlab
