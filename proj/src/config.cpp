// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace paprlab {

namespace {

constexpr double kPowerSumTolerance = 1e-12;

std::string subband_key(std::size_t i, const char* field) {
  return "subbands[" + std::to_string(i) + "]." + field;
}

}  // namespace

std::vector<std::string> validate_spec(const SystemSpec& spec) {
  std::vector<std::string> violations;
  auto flag = [&violations](std::string msg) { violations.push_back(std::move(msg)); };

  if (!(spec.base_spacing_hz > 0.0) || !std::isfinite(spec.base_spacing_hz)) {
    flag("base_spacing_hz must be positive, got " + std::to_string(spec.base_spacing_hz));
  }
  if (spec.subbands.empty()) {
    flag("subbands must be non-empty");
    return violations;
  }
  if (spec.qam_order != 4 && spec.qam_order != 16 && spec.qam_order != 64) {
    flag("qam_order must be one of 4, 16, 64, got " + std::to_string(spec.qam_order));
  }
  if (spec.oversample < 1) {
    flag("oversample must be >= 1, got " + std::to_string(spec.oversample));
  }

  double power_sum = 0.0;
  const double cp0 = spec.subbands.front().numerology.cp_fraction;
  for (std::size_t i = 0; i < spec.subbands.size(); ++i) {
    const SubbandSpec& sb = spec.subbands[i];
    const Rational& r = sb.numerology.spacing_ratio;
    if (r.num < r.den) {
      flag(subband_key(i, "spacing_ratio") + " = " + r.str() +
           " is below 1; f_1 must be the minimum subcarrier spacing");
    }
    if (spec.mode == NumerologyMode::synchronized && !r.is_power_of_two_integer()) {
      flag(subband_key(i, "spacing_ratio") + " = " + r.str() +
           " is not a power of two (required in synchronized mode)");
    }
    const double cp = sb.numerology.cp_fraction;
    if (!(cp >= 0.0 && cp < 1.0)) {
      flag(subband_key(i, "cp_fraction") + " must lie in [0, 1), got " + std::to_string(cp));
    }
    if (spec.mode == NumerologyMode::synchronized && cp != cp0) {
      flag(subband_key(i, "cp_fraction") +
           " differs from the base numerology; the CP fraction is constant in synchronized mode");
    }
    if (sb.subcarrier_count < 1) {
      flag(subband_key(i, "n") + " must be >= 1, got " + std::to_string(sb.subcarrier_count));
    }
    if (!(sb.power >= 0.0) || !std::isfinite(sb.power)) {
      flag(subband_key(i, "eta") + " must be a non-negative number");
    } else {
      power_sum += sb.power;
    }
    if (!(sb.guard_after >= 0.0) || !std::isfinite(sb.guard_after)) {
      flag(subband_key(i, "guard_after") + " must be non-negative");
    }
    if (i + 1 == spec.subbands.size() && sb.guard_after > 0.0) {
      flag(subband_key(i, "guard_after") + " is set on the last subband and has no effect");
    }
  }
  if (std::abs(power_sum - 1.0) > kPowerSumTolerance) {
    std::ostringstream os;
    os << "subband powers sum to " << power_sum << " != 1";
    flag(os.str());
  }
  return violations;
}

SystemLayout derive_layout(const SystemSpec& spec) {
  if (!(spec.base_spacing_hz > 0.0)) {
    throw ConfigError("base_spacing_hz must be positive");
  }
  const auto violations = validate_spec(spec);
  if (!violations.empty()) {
    std::string msg = "invalid system spec:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }

  SystemLayout layout;
  layout.spec = spec;
  const double f1 = spec.base_spacing_hz;
  const std::int64_t oversample = spec.oversample;

  // Offsets accumulate in multiples of f_1: delta_i = sum_{v<i}(B_v + g_v).
  double offset = 0.0;
  for (std::size_t i = 0; i < spec.subbands.size(); ++i) {
    const SubbandSpec& sb = spec.subbands[i];
    SubbandLayout out;
    out.ratio = sb.numerology.spacing_ratio;
    out.spacing_hz = out.ratio.value() * f1;
    out.cp_fraction = sb.numerology.cp_fraction;
    out.subcarrier_count = sb.subcarrier_count;
    out.power = sb.power;
    out.bandwidth = static_cast<double>(sb.subcarrier_count * out.ratio.num) /
                    static_cast<double>(out.ratio.den);
    out.offset = offset;
    out.normalized_offset = offset / out.ratio.value();
    layout.subbands.push_back(out);
    offset += out.bandwidth;
    if (i + 1 < spec.subbands.size()) offset += sb.guard_after;
  }
  layout.total_bandwidth = offset;
  layout.total_bandwidth_hz = offset * f1;

  // The observation window T0 is the base-numerology symbol period
  // mu / f_1 with mu = 1 + cp of the first subband. In synchronized mode
  // every subband fits an integer number n_i = R_i of symbols into it; in
  // asynchronous mode n_i = T0 / T_i may be fractional.
  const double mu = 1.0 + spec.subbands.front().numerology.cp_fraction;
  layout.mu = mu;
  layout.frame_duration_s = mu / f1;
  for (auto& sub : layout.subbands) {
    sub.symbols_per_frame = mu * sub.ratio.value() / (1.0 + sub.cp_fraction);
  }

  // Common sampling grid. C is the number of base-spacing bins spanning the
  // occupied band, bumped to the smallest integer for which every subband's
  // one-period sample count U1_i = C * den_i / num_i is integral. All time
  // quantization happens at J = 1 and scales exactly by J, so a frame
  // sampled at J' | J is a strict subsampling of the J frame:
  //   S1   = round(mu * C)            base frame samples (J = 1)
  //   S    = J * S1                   frame samples
  //   U1_i = C / R_i                  useful (post-CP) samples per symbol
  //   cp_i = J * round(cp * U1_i)     CP samples
  std::int64_t grid = static_cast<std::int64_t>(std::ceil(layout.total_bandwidth - 1e-9));
  grid = std::max<std::int64_t>(grid, 1);
  const std::int64_t search_limit = grid + 1000000;
  for (;; ++grid) {
    if (grid > search_limit) {
      throw ConfigError("no common sampling grid found for the given spacing ratios");
    }
    bool ok = true;
    for (const auto& sub : layout.subbands) {
      if ((grid * sub.ratio.den) % sub.ratio.num != 0) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  layout.grid_bins = grid;
  layout.base_frame_samples = std::llround(mu * static_cast<double>(grid));
  layout.frame_samples = oversample * layout.base_frame_samples;
  layout.sample_rate_hz = static_cast<double>(oversample * grid) * f1;
  layout.sample_interval_s = 1.0 / layout.sample_rate_hz;

  for (auto& sub : layout.subbands) {
    sub.base_useful_samples = grid * sub.ratio.den / sub.ratio.num;
    sub.useful_samples = oversample * sub.base_useful_samples;
    sub.cp_samples =
        oversample * std::llround(sub.cp_fraction * static_cast<double>(sub.base_useful_samples));
    sub.base_symbol_span = (1.0 + sub.cp_fraction) * static_cast<double>(sub.base_useful_samples);
  }
  return layout;
}

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

Rational ratio_from_json(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>(), 1);
    if (v.is_number_float()) return rational_from_double(v.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a number or a \"p/q\" string");
}

double number_from_json(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

}  // namespace

SystemSpec spec_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  require_keys(root, {"base_spacing_hz", "subbands", "mode", "qam_order", "oversample", "seed"},
               "config");

  SystemSpec spec;
  if (root.contains("base_spacing_hz")) {
    spec.base_spacing_hz = number_from_json(root["base_spacing_hz"], "base_spacing_hz");
  }
  if (root.contains("mode")) {
    const auto& v = root["mode"];
    if (!v.is_string()) throw ConfigError("mode: expected \"synchronized\" or \"asynchronous\"");
    const std::string m = v.get<std::string>();
    if (m == "synchronized") {
      spec.mode = NumerologyMode::synchronized;
    } else if (m == "asynchronous") {
      spec.mode = NumerologyMode::asynchronous;
    } else {
      throw ConfigError("mode: unknown mode '" + m + "'");
    }
  }
  if (root.contains("qam_order")) {
    if (!root["qam_order"].is_number_integer()) throw ConfigError("qam_order: expected an integer");
    spec.qam_order = root["qam_order"].get<int>();
  }
  if (root.contains("oversample")) {
    if (!root["oversample"].is_number_integer())
      throw ConfigError("oversample: expected an integer");
    spec.oversample = root["oversample"].get<int>();
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer()) throw ConfigError("seed: expected an integer");
    spec.seed = root["seed"].get<std::uint64_t>();
  }
  if (!root.contains("subbands") || !root["subbands"].is_array()) {
    throw ConfigError("subbands: expected an array");
  }

  spec.subbands.clear();
  std::size_t idx = 0;
  for (const auto& sb : root["subbands"]) {
    const std::string where = "subbands[" + std::to_string(idx) + "]";
    if (!sb.is_object()) throw ConfigError(where + ": expected an object");
    require_keys(sb, {"spacing_ratio", "cp_fraction", "n", "eta", "guard_after"}, where);
    SubbandSpec out;
    if (sb.contains("spacing_ratio")) {
      out.numerology.spacing_ratio = ratio_from_json(sb["spacing_ratio"], where + ".spacing_ratio");
    }
    out.numerology.cp_fraction = sb.contains("cp_fraction")
                                     ? number_from_json(sb["cp_fraction"], where + ".cp_fraction")
                                     : 0.07;
    if (!sb.contains("n") || !sb["n"].is_number_integer()) {
      throw ConfigError(where + ".n: expected an integer subcarrier count");
    }
    out.subcarrier_count = sb["n"].get<int>();
    if (!sb.contains("eta")) throw ConfigError(where + ".eta: missing power fraction");
    out.power = number_from_json(sb["eta"], where + ".eta");
    if (sb.contains("guard_after")) {
      out.guard_after = number_from_json(sb["guard_after"], where + ".guard_after");
    }
    spec.subbands.push_back(out);
    ++idx;
  }
  return spec;
}

SystemSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return spec_from_json_text(buf.str());
}

std::string spec_to_json_text(const SystemSpec& spec) {
  json root;
  root["base_spacing_hz"] = spec.base_spacing_hz;
  root["mode"] = spec.mode == NumerologyMode::synchronized ? "synchronized" : "asynchronous";
  root["qam_order"] = spec.qam_order;
  root["oversample"] = spec.oversample;
  root["seed"] = spec.seed;
  root["subbands"] = json::array();
  for (const auto& sb : spec.subbands) {
    json j;
    const Rational& r = sb.numerology.spacing_ratio;
    if (r.is_integer()) {
      j["spacing_ratio"] = r.num;
    } else {
      j["spacing_ratio"] = r.str();  // exact round-trip
    }
    j["cp_fraction"] = sb.numerology.cp_fraction;
    j["n"] = sb.subcarrier_count;
    j["eta"] = sb.power;
    j["guard_after"] = sb.guard_after;
    root["subbands"].push_back(j);
  }
  return root.dump(2) + "\n";
}

}  // namespace paprlab
