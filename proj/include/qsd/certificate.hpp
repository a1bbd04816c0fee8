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

#ifndef QSD_CERTIFICATE_HPP
#define QSD_CERTIFICATE_HPP

#include <utility>
#include <vector>

#include "qsd/model.hpp"

namespace qsd {

/// Proof object for (near-)optimality of a strategy. `feasible_dual` is an
/// operator lambda' with lambda' - xi_j rho_j PSD for every j; its trace
/// bounds the success probability of every POVM from above, so
/// gap = Tr lambda' - P_s certifies how far the strategy can be from optimal.
struct Certificate {
  HermitianMatrix feasible_dual;
  double upper_bound = 0.0;
  double gap = 0.0;
  /// min eigenvalue of lambda - xi_j rho_j per source, before the shift that
  /// makes the witness feasible. All >= 0 is the Helstrom positivity test.
  std::vector<double> helstrom_residuals;
  /// max over j of the max-abs entry of (lambda - xi_j rho_j) Pi_j; zero at a
  /// stationary point (complementary slackness).
  double slackness_residual = 0.0;
};

std::vector<double> helstrom_residuals(const Ensemble& e,
                                       const HermitianMatrix& lambda);

double slackness_residual(const Ensemble& e, const Povm& m,
                          const HermitianMatrix& lambda);

/// Shifts lambda by delta*I with delta = max_j max(0, -min eig(lambda -
/// xi_j rho_j)), which is dual-feasible by construction, and returns it with
/// its trace. Works for any Hermitian lambda, so a rigorous bound is
/// available at every iteration, not just at the optimum.
std::pair<HermitianMatrix, double> dual_upper_bound(
    const Ensemble& e, const HermitianMatrix& lambda);

/// Builds the multiplier from the strategy itself and assembles the full
/// certificate; gap <= tol certifies global optimality of m within tol.
Certificate certify(const Ensemble& e, const Povm& m);

}  // namespace qsd

#endif  // QSD_CERTIFICATE_HPP
