// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paprlab/allocate.hpp"
#include "paprlab/analytic.hpp"
#include "paprlab/config.hpp"
#include "paprlab/papr.hpp"

namespace paprlab {

namespace {

constexpr double kGammaFloorDb = -3.0102999566398120;  // 10*log10(1/2), analytic validity floor

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Probabilities go out in scientific notation with 6 significant digits.
std::string format_prob(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

std::string format_sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double gamma_min_db = 4.0;
  double gamma_max_db = 13.0;
  double step_db = 0.1;
  double step = 1e-3;
  bool with_mc = false;
};

std::vector<double> make_gamma_grid(double min_db, double max_db, double step_db, bool clip) {
  if (!(step_db > 0.0) || !(max_db >= min_db)) {
    throw ConfigError("invalid gamma grid: require gamma_min_db <= gamma_max_db and step_db > 0");
  }
  double lo = min_db;
  if (clip && lo < kGammaFloorDb) lo = kGammaFloorDb;  // formulas are valid for gamma > 1/2
  std::vector<double> grid;
  const auto count = static_cast<std::int64_t>(std::floor((max_db - lo) / step_db + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step_db);
  return grid;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// Every CSV gets a manifest sidecar carrying the resolved spec and all
// command parameters, so the CSV is regenerable from the manifest alone.
void write_manifest(const std::string& out_path, const std::string& command,
                    const SystemSpec& spec, const nlohmann::json& parameters) {
  nlohmann::json m;
  m["tool"] = "paprlab";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["parameters"] = parameters;
  m["seed"] = spec.seed;
  m["spec"] = nlohmann::json::parse(spec_to_json_text(spec));
  m["timestamp"] = iso_timestamp();
  write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

SystemSpec resolve_spec(const CommonArgs& args) {
  SystemSpec spec = load_spec(args.config_path);
  if (args.seed_set) spec.seed = args.seed;
  return spec;
}

struct AnalyticColumns {
  std::vector<double> proposed, ochiai, extreme_value, power_weighted, nyquist, empirical_2p8;
};

AnalyticColumns analytic_columns(const SystemLayout& layout, const std::vector<double>& grid_db) {
  const double lambda = lambda_factor(layout).value;
  const BaselineParams params = baseline_params_from_layout(layout);
  AnalyticColumns cols;
  for (const double gdb : grid_db) {
    const double gamma = std::pow(10.0, gdb / 10.0);
    cols.proposed.push_back(ccdf_proposed_for_lambda(gamma, lambda));
    cols.ochiai.push_back(ccdf_baseline(BaselineKind::ochiai, gamma, params));
    cols.extreme_value.push_back(ccdf_baseline(BaselineKind::extreme_value, gamma, params));
    cols.power_weighted.push_back(ccdf_baseline(BaselineKind::power_weighted, gamma, params));
    cols.nyquist.push_back(ccdf_baseline(BaselineKind::nyquist, gamma, params));
    cols.empirical_2p8.push_back(ccdf_baseline(BaselineKind::empirical_2p8, gamma, params));
  }
  return cols;
}

int cmd_simulate(const CommonArgs& args, std::ostream&) {
  if (args.trials < 1) throw ConfigError("trials must be >= 1");
  const SystemSpec spec = resolve_spec(args);
  const SystemLayout layout = derive_layout(spec);
  const auto grid = make_gamma_grid(args.gamma_min_db, args.gamma_max_db, args.step_db, false);
  const auto samples = run_monte_carlo(layout, args.trials, spec.seed);
  const CcdfCurve curve = empirical_ccdf(samples, grid);

  std::ostringstream csv;
  csv << "gamma_db,ccdf_empirical\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << format_fixed(grid[i], 4) << ',' << format_prob(curve.prob[i]) << '\n';
  }
  write_file(args.out_path, csv.str());
  write_manifest(args.out_path, "simulate", spec,
                 {{"trials", args.trials},
                  {"gamma_min_db", args.gamma_min_db},
                  {"gamma_max_db", args.gamma_max_db},
                  {"step_db", args.step_db},
                  {"out", args.out_path}});
  return 0;
}

int cmd_analyze(const CommonArgs& args, std::ostream&) {
  const SystemSpec spec = resolve_spec(args);
  const SystemLayout layout = derive_layout(spec);
  const auto grid = make_gamma_grid(args.gamma_min_db, args.gamma_max_db, args.step_db, true);
  const AnalyticColumns cols = analytic_columns(layout, grid);

  std::ostringstream csv;
  csv << "gamma_db,proposed,ochiai,extreme_value,power_weighted,nyquist,empirical_2p8\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << format_fixed(grid[i], 4) << ',' << format_prob(cols.proposed[i]) << ','
        << format_prob(cols.ochiai[i]) << ',' << format_prob(cols.extreme_value[i]) << ','
        << format_prob(cols.power_weighted[i]) << ',' << format_prob(cols.nyquist[i]) << ','
        << format_prob(cols.empirical_2p8[i]) << '\n';
  }
  write_file(args.out_path, csv.str());
  write_manifest(args.out_path, "analyze", spec,
                 {{"gamma_min_db", args.gamma_min_db},
                  {"gamma_max_db", args.gamma_max_db},
                  {"step_db", args.step_db},
                  {"out", args.out_path}});
  return 0;
}

int cmd_compare(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  const SystemSpec spec = resolve_spec(args);
  const SystemLayout layout = derive_layout(spec);
  const auto grid = make_gamma_grid(args.gamma_min_db, args.gamma_max_db, args.step_db, true);
  const AnalyticColumns cols = analytic_columns(layout, grid);

  std::optional<CcdfCurve> empirical;
  if (args.trials > 0) {
    const auto samples = run_monte_carlo(layout, args.trials, spec.seed);
    empirical = empirical_ccdf(samples, grid);
  } else {
    err << "warning: trials = 0, emitting analytical columns only\n";
  }

  std::ostringstream csv;
  csv << "gamma_db,ccdf_empirical,proposed,ochiai,extreme_value,power_weighted,nyquist,"
         "empirical_2p8\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << format_fixed(grid[i], 4) << ',';
    csv << (empirical ? format_prob(empirical->prob[i]) : std::string()) << ',';
    csv << format_prob(cols.proposed[i]) << ',' << format_prob(cols.ochiai[i]) << ','
        << format_prob(cols.extreme_value[i]) << ',' << format_prob(cols.power_weighted[i]) << ','
        << format_prob(cols.nyquist[i]) << ',' << format_prob(cols.empirical_2p8[i]) << '\n';
  }
  write_file(args.out_path, csv.str());
  write_manifest(args.out_path, "compare", spec,
                 {{"trials", args.trials},
                  {"gamma_min_db", args.gamma_min_db},
                  {"gamma_max_db", args.gamma_max_db},
                  {"step_db", args.step_db},
                  {"out", args.out_path}});

  if (empirical) {
    auto curve_of = [&](const char* kind, const std::vector<double>& prob) {
      CcdfCurve c;
      c.kind = kind;
      c.gamma_db_grid = grid;
      c.prob = prob;
      return c;
    };
    const CcdfCurve proposed = curve_of("proposed", cols.proposed);
    const CcdfCurve baseline = curve_of("empirical_2p8", cols.empirical_2p8);
    for (const double level : {1e-1, 1e-2, 1e-3}) {
      const double at_emp = curve_crossing_db(*empirical, level);
      const double at_prop = curve_crossing_db(proposed, level);
      const double at_base = curve_crossing_db(baseline, level);
      out << "gap_db at ccdf " << format_prob(level) << ": proposed "
          << format_fixed(at_emp - at_prop, 4) << ", empirical_2p8 "
          << format_fixed(at_emp - at_base, 4) << '\n';
    }
  }
  return 0;
}

int cmd_allocate(const CommonArgs& args, std::ostream& out) {
  const SystemSpec spec = resolve_spec(args);
  const SystemLayout layout = derive_layout(spec);
  const std::size_t m = layout.subbands.size();

  const AllocationResult grid_result = grid_search_oracle(layout, args.step);

  std::optional<AllocationResult> closed;
  std::optional<AllocationResult> kkt;
  std::string degenerate_note;
  if (m == 2) {
    try {
      closed = solve_closed_form_two(layout);
      kkt = solve_kkt(build_qp(layout));
    } catch (const std::runtime_error& e) {
      degenerate_note = e.what();
    }
  }

  std::ostringstream csv;
  csv << "eta1,lambda,mean_envelope,mc_mean_papr_db\n";
  if (m == 2) {
    std::vector<double> eta1_grid;
    for (int i = 1; i <= 19; ++i) eta1_grid.push_back(static_cast<double>(i) / 20.0);
    SweepMcOptions mc{args.trials, spec.seed, 0};
    const auto rows = sweep_mean_envelope(layout, eta1_grid, args.with_mc ? &mc : nullptr);
    for (const auto& row : rows) {
      csv << format_fixed(row.eta1, 4) << ',' << format_sci(row.lambda) << ','
          << format_sci(row.mean_envelope) << ','
          << (row.mc_mean_papr_db ? format_fixed(*row.mc_mean_papr_db, 6) : std::string()) << '\n';
    }
  }
  write_file(args.out_path, csv.str());
  write_manifest(args.out_path, "allocate", spec,
                 {{"step", args.step},
                  {"with_mc", args.with_mc},
                  {"trials", args.trials},
                  {"out", args.out_path}});

  auto print_eta = [&](const char* label, const AllocationResult& r) {
    out << label << " eta* = (";
    for (std::size_t i = 0; i < r.eta_star.size(); ++i) {
      out << (i ? ", " : "") << format_fixed(r.eta_star[i], 6);
    }
    out << "), Lambda = " << format_sci(r.lambda_at_opt);
    if (r.boundary) out << "  [outside (0,1): boundary case]";
    out << '\n';
  };
  print_eta("grid", grid_result);
  if (closed) print_eta("closed_form", *closed);
  if (kkt) {
    print_eta("kkt", *kkt);
    out << "kkt residual = " << format_sci(kkt->kkt_residual) << ", nu* = " << format_sci(kkt->multiplier)
        << '\n';
  }
  if (closed && kkt) {
    double d_kkt = 0.0;
    double d_grid = 0.0;
    for (std::size_t i = 0; i < closed->eta_star.size(); ++i) {
      d_kkt = std::max(d_kkt, std::abs(closed->eta_star[i] - kkt->eta_star[i]));
      d_grid = std::max(d_grid, std::abs(closed->eta_star[i] - grid_result.eta_star[i]));
    }
    out << "|closed - kkt| = " << format_sci(d_kkt) << ", |closed - grid| = " << format_sci(d_grid)
        << '\n';
  }
  if (!degenerate_note.empty()) out << "note: " << degenerate_note << '\n';
  if (m != 2) out << "note: KKT singular for M != 2, grid oracle used\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed-numerology OFDM PAPR simulator and analytics"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&common](CLI::App* cmd, bool needs_trials) {
    cmd->add_option("--config", common.config_path, "JSON system configuration")->required();
    cmd->add_option("--out", common.out_path, "output CSV path")->required();
    cmd->add_option("--seed", common.seed, "override the config seed")
        ->each([&common](const std::string&) { common.seed_set = true; });
    cmd->add_option("--gamma-min-db", common.gamma_min_db, "grid start (dB)");
    cmd->add_option("--gamma-max-db", common.gamma_max_db, "grid end (dB)");
    cmd->add_option("--step-db", common.step_db, "grid step (dB)");
    if (needs_trials) cmd->add_option("--trials", common.trials, "Monte Carlo trials");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo empirical CCDF");
  add_common(simulate, true);
  CLI::App* analyze = app.add_subcommand("analyze", "closed-form CCDF curves");
  add_common(analyze, false);
  CLI::App* compare = app.add_subcommand("compare", "joined empirical and analytical curves");
  add_common(compare, true);
  CLI::App* allocate = app.add_subcommand("allocate", "power allocation sweep and solvers");
  add_common(allocate, false);
  allocate->add_option("--step", common.step, "grid oracle resolution");
  allocate->add_flag("--with-mc", common.with_mc, "attach Monte Carlo mean PAPR to the sweep");
  allocate->add_option("--trials", common.trials, "Monte Carlo trials per sweep point");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: config: " << e.what() << '\n';
    return 1;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(common, out);
    if (analyze->parsed()) return cmd_analyze(common, out);
    if (compare->parsed()) return cmd_compare(common, out, err);
    if (allocate->parsed()) return cmd_allocate(common, out);
    err << "error: config: no subcommand given\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: config: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: runtime: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace paprlab
