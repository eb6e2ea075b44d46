// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#include "paprlab/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paprlab/analytic.hpp"
#include "paprlab/papr.hpp"

namespace paprlab {

namespace {

constexpr double kPi = std::numbers::pi;

SystemLayout layout_with_powers(const SystemLayout& layout, std::span<const double> eta) {
  SystemSpec spec = layout.spec;
  for (std::size_t i = 0; i < spec.subbands.size(); ++i) spec.subbands[i].power = eta[i];
  return derive_layout(spec);
}

bool interior(std::span<const double> eta) {
  for (const double e : eta) {
    if (!(e > 0.0 && e < 1.0)) return false;
  }
  return true;
}

}  // namespace

QpProblem build_qp(const SystemLayout& layout) {
  const int m = static_cast<int>(layout.subbands.size());
  if (m < 2) throw std::invalid_argument("build_qp: needs at least two subbands");
  const SpectralMoments moments = composite_moments(layout);
  QpProblem qp;
  qp.size = m;
  qp.t0_sq_over_pi = layout.mu * layout.mu / kPi;
  qp.quadratic.resize(static_cast<std::size_t>(m) * m);
  qp.linear.resize(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    qp.linear[r] = -moments.beta[static_cast<std::size_t>(r)];
    for (int c = 0; c < m; ++c) {
      qp.quadratic[static_cast<std::size_t>(r) * m + c] =
          2.0 * moments.alpha[static_cast<std::size_t>(r)] * moments.alpha[static_cast<std::size_t>(c)];
    }
  }
  return qp;
}

double qp_objective(const QpProblem& qp, std::span<const double> eta) {
  if (static_cast<int>(eta.size()) != qp.size) {
    throw std::invalid_argument("qp_objective: eta size mismatch");
  }
  double quad = 0.0;
  double lin = 0.0;
  for (int r = 0; r < qp.size; ++r) {
    lin += qp.linear[static_cast<std::size_t>(r)] * eta[static_cast<std::size_t>(r)];
    for (int c = 0; c < qp.size; ++c) {
      quad += eta[static_cast<std::size_t>(r)] *
              qp.quadratic[static_cast<std::size_t>(r) * qp.size + c] *
              eta[static_cast<std::size_t>(c)];
    }
  }
  return 0.5 * quad + lin;
}

double qp_lambda(const QpProblem& qp, std::span<const double> eta) {
  return -qp_objective(qp, eta) * qp.t0_sq_over_pi;
}

AllocationResult solve_closed_form_two(const SystemLayout& layout) {
  if (layout.subbands.size() != 2) {
    throw std::invalid_argument("solve_closed_form_two: needs exactly two subbands");
  }
  const auto [a1, b1] = subband_moments(layout, 0);
  const auto [a2, b2] = subband_moments(layout, 1);
  const double diff = a1 - a2;
  if (diff == 0.0) {
    throw std::runtime_error("solve_closed_form_two: degenerate system (alpha1 == alpha2)");
  }
  AllocationResult res;
  res.method = AllocationMethod::closed_form;
  const double denom = 2.0 * diff * diff;
  res.eta_star = {(b1 - b2 + 2.0 * a2 * a2 - 2.0 * a1 * a2) / denom,
                  (b2 - b1 + 2.0 * a1 * a1 - 2.0 * a1 * a2) / denom};
  res.boundary = !interior(res.eta_star);
  res.lambda_at_opt = lambda_for_powers(layout, res.eta_star);
  return res;
}

AllocationResult solve_kkt(const QpProblem& qp) {
  if (qp.size != 2) {
    throw std::runtime_error(
        "solve_kkt: singular KKT system (rank(P) = 1 makes the matrix singular for M >= 3); "
        "use grid_search_oracle");
  }
  // Recover alpha from the diagonal of P = 2*alpha*alpha' and scale the
  // first block rows by max(alpha)^2 so the solve stays well conditioned
  // regardless of the absolute frequency offsets.
  const double a1 = std::sqrt(0.5 * qp.quadratic[0]);
  const double a2 = std::sqrt(0.5 * qp.quadratic[3]);
  const double s = std::max({a1, a2, 1.0});
  const double s2 = s * s;

  // Scaled system rows: [P/s^2, 1; 1', 0] * [eta; nu/s^2] = [-q/s^2; 1].
  double mat[3][4] = {
      {qp.quadratic[0] / s2, qp.quadratic[1] / s2, 1.0, -qp.linear[0] / s2},
      {qp.quadratic[2] / s2, qp.quadratic[3] / s2, 1.0, -qp.linear[1] / s2},
      {1.0, 1.0, 0.0, 1.0},
  };
  double saved[3][4];
  std::copy(&mat[0][0], &mat[0][0] + 12, &saved[0][0]);

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(mat[r][col]) > std::abs(mat[pivot][col])) pivot = r;
    }
    if (std::abs(mat[pivot][col]) < 1e-12) {
      throw std::runtime_error("solve_kkt: singular KKT system (alpha1 == alpha2)");
    }
    for (int c = 0; c < 4; ++c) std::swap(mat[col][c], mat[pivot][c]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = mat[r][col] / mat[col][col];
      for (int c = col; c < 4; ++c) mat[r][c] -= f * mat[col][c];
    }
  }
  double sol[3];
  for (int r = 2; r >= 0; --r) {
    double acc = mat[r][3];
    for (int c = r + 1; c < 3; ++c) acc -= mat[r][c] * sol[c];
    sol[r] = acc / mat[r][r];
  }

  AllocationResult res;
  res.method = AllocationMethod::kkt;
  res.eta_star = {sol[0], sol[1]};
  res.multiplier = sol[2] * s2;
  double residual = 0.0;
  for (int r = 0; r < 3; ++r) {
    double acc = -saved[r][3];
    for (int c = 0; c < 3; ++c) acc += saved[r][c] * sol[c];
    residual = std::max(residual, std::abs(acc));
  }
  res.kkt_residual = residual;
  res.boundary = !interior(res.eta_star);
  // Lambda from the QP itself keeps this route independent of the layout.
  res.lambda_at_opt = qp_lambda(qp, res.eta_star);
  return res;
}

AllocationResult grid_search_oracle(const SystemLayout& layout, double step) {
  if (!(step > 0.0 && step <= 0.1)) {
    throw std::invalid_argument("grid_search_oracle: step must lie in (0, 0.1]");
  }
  const int m = static_cast<int>(layout.subbands.size());
  if (m > 4) throw std::invalid_argument("grid_search_oracle: M <= 4 only");
  const auto k = static_cast<std::int64_t>(std::llround(1.0 / step));

  double points = 1.0;
  for (int i = 1; i < m; ++i) points *= static_cast<double>(k + i) / i;
  if (points > 2e8) throw std::invalid_argument("grid_search_oracle: grid too large");

  const SpectralMoments moments = composite_moments(layout);
  const double mu_sq_over_pi = layout.mu * layout.mu / kPi;
  auto lambda_of = [&](const std::vector<double>& eta) {
    double l1 = 0.0;
    double l2 = 0.0;
    for (int i = 0; i < m; ++i) {
      l1 += eta[static_cast<std::size_t>(i)] * moments.alpha[static_cast<std::size_t>(i)];
      l2 += eta[static_cast<std::size_t>(i)] * moments.beta[static_cast<std::size_t>(i)];
    }
    return mu_sq_over_pi * (l2 - l1 * l1);
  };

  AllocationResult best;
  best.method = AllocationMethod::grid;
  best.lambda_at_opt = -1.0;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
  std::vector<double> eta(static_cast<std::size_t>(m), 0.0);

  // Enumerates all compositions of k into m parts in lexicographic order,
  // so the first maximum seen is the lexicographically smallest tie.
  auto visit = [&](auto&& self, int idx, std::int64_t remaining) -> void {
    if (idx == m - 1) {
      counts[static_cast<std::size_t>(idx)] = remaining;
      for (int i = 0; i < m; ++i) {
        eta[static_cast<std::size_t>(i)] =
            static_cast<double>(counts[static_cast<std::size_t>(i)]) / static_cast<double>(k);
      }
      const double lambda = lambda_of(eta);
      if (lambda > best.lambda_at_opt) {
        best.lambda_at_opt = lambda;
        best.eta_star = eta;
      }
      return;
    }
    for (std::int64_t c = 0; c <= remaining; ++c) {
      counts[static_cast<std::size_t>(idx)] = c;
      self(self, idx + 1, remaining - c);
    }
  };
  visit(visit, 0, k);
  best.boundary = !interior(best.eta_star);
  return best;
}

std::vector<SweepRow> sweep_mean_envelope(const SystemLayout& layout,
                                          std::span<const double> eta1_grid,
                                          const SweepMcOptions* mc) {
  if (layout.subbands.size() != 2) {
    throw std::invalid_argument("sweep_mean_envelope: needs exactly two subbands");
  }
  std::vector<SweepRow> rows;
  rows.reserve(eta1_grid.size());
  for (const double eta1 : eta1_grid) {
    if (!(eta1 > 0.0 && eta1 < 1.0)) {
      throw std::invalid_argument("sweep_mean_envelope: grid must lie inside (0, 1)");
    }
    const double eta[2] = {eta1, 1.0 - eta1};
    SweepRow row;
    row.eta1 = eta1;
    row.lambda = lambda_for_powers(layout, eta);
    row.mean_envelope = mean_envelope_for_lambda(row.lambda);
    if (mc != nullptr && mc->trials > 0) {
      const SystemLayout pt = layout_with_powers(layout, eta);
      const auto samples = run_monte_carlo(pt, mc->trials, mc->seed, mc->threads);
      double acc = 0.0;
      for (const auto& s : samples) acc += s.gamma_db;
      row.mc_mean_papr_db = acc / static_cast<double>(samples.size());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace paprlab
