// Copyright 2026 The qsd developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qsd/certificate.hpp"
#include "qsd/rng.hpp"

namespace qsd {

namespace {

// Deficiency above which solve() reassigns kernel mass; plain round-off sits
// orders of magnitude below this.
constexpr double kCompletionThreshold = 1e-12;

Eigen::MatrixXcd random_unit_hermitian(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = rng.complex_normal();
    }
  }
  Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  const Eigen::VectorXd w =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
  const double spectral = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  if (spectral > 0.0) {
    h /= spectral;
  }
  return h;
}

Povm update_with(const Ensemble& e, const Povm& m,
                 const HermitianMatrix& lambda, double rank_cutoff) {
  const Eigen::MatrixXcd lambda_pinv = pinv_psd(lambda, rank_cutoff).matrix();
  std::vector<HermitianMatrix> next;
  next.reserve(m.size());
  for (int j = 0; j < m.size(); ++j) {
    const Eigen::MatrixXcd weighted = e.weighted_state(j).matrix();
    next.emplace_back(lambda_pinv * weighted * m.element(j).matrix() *
                      weighted * lambda_pinv);
  }
  return Povm(std::move(next));
}

// Restores completeness when lambda was singular: the update projects the
// POVM onto the range of lambda, so the missing mass I - sum Pi_j is handed
// to the element where it raises P_s the most.
Povm complete_on_kernel(const Ensemble& e, Povm m) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(m.dim(), m.dim());
  for (int j = 0; j < m.size(); ++j) {
    sum += m.element(j).matrix();
  }
  const Eigen::MatrixXcd deficiency =
      Eigen::MatrixXcd::Identity(m.dim(), m.dim()) - sum;
  if (deficiency.cwiseAbs().maxCoeff() <= kCompletionThreshold) {
    return m;
  }
  const HermitianMatrix defect(deficiency);
  int best = 0;
  double best_score = -1.0;
  for (int j = 0; j < e.size(); ++j) {
    const double gain = e.prior(j) * trace_product(e.state(j).matrix, defect);
    // Lexicographic (gain, prior) preference, first index wins ties.
    const double score = gain + 1e-12 * e.prior(j);
    if (score > best_score + 1e-15) {
      best_score = score;
      best = j;
    }
  }
  std::vector<HermitianMatrix> elements = m.elements();
  elements[best] = HermitianMatrix(elements[best].matrix() + deficiency);
  return Povm(std::move(elements));
}

}  // namespace

Povm default_initial_povm(int element_count, int dim, const SolverConfig& cfg) {
  if (element_count < 1 || dim < 1) {
    throw Error("default_initial_povm: element_count and dim must be >= 1");
  }
  const Eigen::MatrixXcd share =
      Eigen::MatrixXcd::Identity(dim, dim) / double(element_count);
  if (cfg.init_mode == InitMode::kUniform) {
    std::vector<HermitianMatrix> elements(element_count, HermitianMatrix(share));
    return Povm(std::move(elements));
  }

  Rng rng(cfg.jitter_seed);
  std::vector<Eigen::MatrixXcd> perturbed;
  perturbed.reserve(element_count);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < element_count; ++j) {
    Eigen::MatrixXcd candidate =
        share + cfg.jitter_amplitude * random_unit_hermitian(dim, rng);
    const double w_min = min_eigenvalue(HermitianMatrix(candidate));
    if (w_min < 0.0) {
      throw InvalidJitter("jitter amplitude " +
                          std::to_string(cfg.jitter_amplitude) +
                          " makes element " + std::to_string(j) +
                          " indefinite (min eigenvalue " +
                          std::to_string(w_min) + ")");
    }
    perturbed.push_back(candidate);
    sum += candidate;
  }
  // S^{-1/2} (.) S^{-1/2} restores completeness exactly and keeps positivity.
  const Eigen::MatrixXcd normalizer =
      pinv_psd(sqrt_psd(HermitianMatrix(sum), cfg.rank_cutoff), cfg.rank_cutoff)
          .matrix();
  std::vector<HermitianMatrix> elements;
  elements.reserve(element_count);
  for (const Eigen::MatrixXcd& candidate : perturbed) {
    elements.emplace_back(normalizer * candidate * normalizer);
  }
  return Povm(std::move(elements));
}

HermitianMatrix lagrange_operator(const Ensemble& e, const Povm& m,
                                  double rank_cutoff) {
  if (e.size() != m.size()) {
    throw CountMismatch("lagrange_operator: ensemble/povm size mismatch");
  }
  if (e.dim() != m.dim()) {
    throw DimensionMismatch("lagrange_operator: ensemble/povm dim mismatch");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(e.dim(), e.dim());
  for (int j = 0; j < e.size(); ++j) {
    const Eigen::MatrixXcd weighted = e.weighted_state(j).matrix();
    sum += weighted * m.element(j).matrix() * weighted;
  }
  return sqrt_psd(HermitianMatrix(sum), rank_cutoff);
}

Povm iterate_once(const Ensemble& e, const Povm& m, const SolverConfig& cfg) {
  const HermitianMatrix lambda = lagrange_operator(e, m, cfg.rank_cutoff);
  return update_with(e, m, lambda, cfg.rank_cutoff);
}

SolveReport solve(const Ensemble& e, const SolverConfig& cfg) {
  return solve_from(e, default_initial_povm(e.size(), e.dim(), cfg), cfg);
}

SolveReport solve_from(const Ensemble& e, Povm initial, const SolverConfig& cfg) {
  Povm povm = std::move(initial);
  std::vector<double> ps_trace;
  HermitianMatrix lambda = HermitianMatrix::zero(e.dim());
  double ps = 0.0;
  double gap = 0.0;
  bool converged = false;

  // A gap that stops moving means the iteration reached a stationary point
  // that is not optimal (e.g. a fixed point with the wrong support); bail out
  // once it has been flat for a while instead of burning the iteration budget.
  double previous_gap = std::numeric_limits<double>::infinity();
  int flat_passes = 0;
  constexpr int kMaxFlatPasses = 25;

  for (int pass = 0; pass <= cfg.max_iterations; ++pass) {
    lambda = lagrange_operator(e, povm, cfg.rank_cutoff);
    ps = success_probability(e, povm);
    ps_trace.push_back(ps);
    gap = dual_upper_bound(e, lambda).second - ps;
    if (gap <= cfg.gap_tolerance) {
      converged = true;
      break;
    }
    if (pass == cfg.max_iterations) {
      break;
    }
    if (std::abs(gap - previous_gap) <= 1e-13 * std::max(1.0, std::abs(gap))) {
      if (++flat_passes >= kMaxFlatPasses) {
        break;
      }
    } else {
      flat_passes = 0;
    }
    previous_gap = gap;
    povm = complete_on_kernel(e, update_with(e, povm, lambda, cfg.rank_cutoff));
  }

  const int iterations = static_cast<int>(ps_trace.size());
  return SolveReport{std::move(povm), ps,       std::move(lambda), iterations,
                     gap,             std::move(ps_trace), converged};
}

}  // namespace qsd
