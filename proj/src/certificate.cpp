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

#include "qsd/certificate.hpp"

#include <algorithm>

#include "qsd/solver.hpp"

namespace qsd {

namespace {

void check_lambda(const Ensemble& e, const HermitianMatrix& lambda) {
  if (lambda.dim() != e.dim()) {
    throw DimensionMismatch("lambda dim " + std::to_string(lambda.dim()) +
                            " vs ensemble dim " + std::to_string(e.dim()));
  }
}

}  // namespace

std::vector<double> helstrom_residuals(const Ensemble& e,
                                       const HermitianMatrix& lambda) {
  check_lambda(e, lambda);
  std::vector<double> residuals;
  residuals.reserve(e.size());
  for (int j = 0; j < e.size(); ++j) {
    const HermitianMatrix diff(lambda.matrix() - e.weighted_state(j).matrix());
    residuals.push_back(min_eigenvalue(diff));
  }
  return residuals;
}

double slackness_residual(const Ensemble& e, const Povm& m,
                          const HermitianMatrix& lambda) {
  check_lambda(e, lambda);
  if (e.size() != m.size() || e.dim() != m.dim()) {
    throw DimensionMismatch("slackness_residual: ensemble/povm mismatch");
  }
  double worst = 0.0;
  for (int j = 0; j < e.size(); ++j) {
    const Eigen::MatrixXcd product =
        (lambda.matrix() - e.weighted_state(j).matrix()) *
        m.element(j).matrix();
    worst = std::max(worst, product.cwiseAbs().maxCoeff());
  }
  return worst;
}

std::pair<HermitianMatrix, double> dual_upper_bound(
    const Ensemble& e, const HermitianMatrix& lambda) {
  const std::vector<double> residuals = helstrom_residuals(e, lambda);
  double delta = 0.0;
  for (double r : residuals) {
    delta = std::max(delta, -r);
  }
  HermitianMatrix shifted(lambda.matrix() +
                          delta * Eigen::MatrixXcd::Identity(e.dim(), e.dim()));
  const double bound = shifted.trace();
  return {std::move(shifted), bound};
}

Certificate certify(const Ensemble& e, const Povm& m) {
  const HermitianMatrix lambda = lagrange_operator(e, m);
  std::vector<double> residuals = helstrom_residuals(e, lambda);
  double delta = 0.0;
  for (double r : residuals) {
    delta = std::max(delta, -r);
  }
  HermitianMatrix shifted(lambda.matrix() +
                          delta * Eigen::MatrixXcd::Identity(e.dim(), e.dim()));
  const double bound = shifted.trace();
  const double gap = bound - success_probability(e, m);
  const double slack = slackness_residual(e, m, lambda);
  return Certificate{std::move(shifted), bound, gap, std::move(residuals),
                     slack};
}

}  // namespace qsd
