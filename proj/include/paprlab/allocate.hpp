// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "paprlab/config.hpp"

namespace paprlab {

// Equality-constrained quadratic program whose objective equals
// -(pi/T0^2)*Lambda(eta) on the simplex: P has entries 2*alpha_l*alpha_m
// (rank 1, PSD), q_i = -beta_i.
struct QpProblem {
  int size = 0;
  std::vector<double> quadratic;  // row-major M x M
  std::vector<double> linear;     // length M
  double t0_sq_over_pi = 0.0;     // converts objective values back to Lambda
};

QpProblem build_qp(const SystemLayout& layout);  // requires M >= 2

// 0.5*eta'*P*eta + q'*eta.
double qp_objective(const QpProblem& qp, std::span<const double> eta);

// Lambda(eta) recovered from the QP objective.
double qp_lambda(const QpProblem& qp, std::span<const double> eta);

enum class AllocationMethod { closed_form, kkt, grid };

struct AllocationResult {
  std::vector<double> eta_star;
  double lambda_at_opt = 0.0;
  AllocationMethod method = AllocationMethod::closed_form;
  double kkt_residual = 0.0;  // inf-norm residual of the scaled KKT system
  double multiplier = 0.0;    // Lagrangian multiplier nu*, KKT route only
  bool boundary = false;      // stationary point fell outside (0, 1)
};

// Closed-form two-subband maximizer of Lambda:
// eta1* = (beta1 - beta2 + 2*alpha2^2 - 2*alpha1*alpha2) / (2*(alpha1-alpha2)^2).
// Throws on M != 2 or alpha1 == alpha2. Out-of-simplex stationary points are
// reported with the boundary flag, never clipped.
AllocationResult solve_closed_form_two(const SystemLayout& layout);

// Dense solve of [[P, 1], [1', 0]] [eta*; nu*] = [-q; 1], valid for M = 2
// where the KKT matrix has full rank 3. For M >= 3 the rank-1 P makes the
// KKT matrix singular; the solve refuses and points at the grid oracle.
AllocationResult solve_kkt(const QpProblem& qp);

// Exhaustive evaluation of Lambda on the simplex grid of resolution step
// (step in (0, 0.1], M <= 4). Deterministic lexicographic tie-break.
AllocationResult grid_search_oracle(const SystemLayout& layout, double step);

struct SweepMcOptions {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct SweepRow {
  double eta1 = 0.0;
  double lambda = 0.0;
  double mean_envelope = 0.0;
  std::optional<double> mc_mean_papr_db;
};

// Two-subband power sweep: eta = (eta1, 1 - eta1) per grid point, with
// Lambda, the mean envelope, and optionally the Monte Carlo mean PAPR in dB
// computed with the campaign settings (same seed at every point, so curve
// differences come from the allocation alone).
std::vector<SweepRow> sweep_mean_envelope(const SystemLayout& layout,
                                          std::span<const double> eta1_grid,
                                          const SweepMcOptions* mc = nullptr);

}  // namespace paprlab
