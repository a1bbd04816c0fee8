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

#ifndef QSD_SOLVER_HPP
#define QSD_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "qsd/model.hpp"

namespace qsd {

enum class InitMode {
  kUniform,       // Pi_j = I/M
  kRandomJitter,  // Pi_j = I/M + amplitude * H_j, renormalized to completeness
};

struct SolverConfig {
  int max_iterations = 10000;
  double gap_tolerance = 1e-8;
  double rank_cutoff = kDefaultRankCutoff;
  InitMode init_mode = InitMode::kUniform;
  std::uint64_t jitter_seed = 0;
  double jitter_amplitude = 1e-3;
};

struct SolveReport {
  Povm povm;
  double success_probability = 0.0;
  HermitianMatrix lagrange_operator;
  int iterations_used = 0;
  /// Certified distance to the optimum: dual upper bound minus the achieved
  /// success probability. Non-negative up to round-off.
  double gap = 0.0;
  /// Success probability at each iteration, oldest first. Monotone increase
  /// is typical but not guaranteed, so callers may inspect it; nothing here
  /// asserts it.
  std::vector<double> trace;
  bool converged = false;
};

/// Starting strategy. Uniform mode returns Pi_j = I/M; jitter mode perturbs
/// each element by amplitude * H_j (H_j random Hermitian, unit spectral norm)
/// and restores completeness with a symmetric renormalization. Throws
/// InvalidJitter if the amplitude drives an element indefinite.
Povm default_initial_povm(int element_count, int dim, const SolverConfig& cfg = {});

/// lambda = (sum_j xi_j^2 rho_j Pi_j rho_j)^{1/2}. Summing the stationarity
/// condition over j with a complete POVM forces the square of the multiplier
/// to be exactly this weighted sum, hence the squared priors.
HermitianMatrix lagrange_operator(const Ensemble& e, const Povm& m,
                                  double rank_cutoff = kDefaultRankCutoff);

/// One update Pi_j <- xi_j^2 lambda^+ rho_j Pi_j rho_j lambda^+ with the
/// pseudo-inverse handling singular lambda; components of Pi in the kernel of
/// lambda are annihilated, so completeness of the output is only guaranteed on
/// the range of lambda.
Povm iterate_once(const Ensemble& e, const Povm& m, const SolverConfig& cfg = {});

/// Runs the fixed-point iteration from the configured initial POVM until the
/// certified duality gap drops below cfg.gap_tolerance or max_iterations is
/// reached. A small step size alone proves nothing, so termination is by the
/// gap: Tr(lambda + delta I) with delta the smallest shift making the
/// operator dual-feasible is always an upper bound on the optimal success
/// probability, and it collapses onto P_s exactly at an optimum.
///
/// Non-convergence is reported through the `converged` flag, never thrown.
/// If lambda is singular the update leaves the POVM incomplete on the kernel;
/// solve() reassigns that deficiency to the element where it helps P_s most
/// (ties broken by larger prior, then lower index), keeping the returned POVM
/// complete and the element count stable.
SolveReport solve(const Ensemble& e, const SolverConfig& cfg = {});

/// Same iteration, started from a caller-supplied strategy. Elements that
/// start at zero stay at zero (the update is multiplicative), which makes
/// this the way to search for optima with a prescribed support.
SolveReport solve_from(const Ensemble& e, Povm initial,
                       const SolverConfig& cfg = {});

}  // namespace qsd

#endif  // QSD_SOLVER_HPP
