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

#include "qsd/model.hpp"

#include <cmath>
#include <sstream>

namespace qsd {

namespace {

constexpr double kStatePsdTolerance = 1e-10;
constexpr double kStateTraceTolerance = 1e-10;
constexpr double kPriorSumTolerance = 1e-10;
constexpr double kPovmPsdTolerance = 1e-9;
constexpr double kCompletenessTolerance = 1e-9;

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Ensemble::Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) {
    throw CountMismatch("Ensemble: at least one state is required");
  }
  if (states_.size() != priors_.size()) {
    throw CountMismatch("Ensemble: " + std::to_string(states_.size()) +
                        " states vs " + std::to_string(priors_.size()) +
                        " priors");
  }
  const int p = states_.front().dim();
  for (const DensityMatrix& s : states_) {
    if (s.dim() != p) {
      throw DimensionMismatch("Ensemble: states have mixed dimensions");
    }
  }
  for (double xi : priors_) {
    if (!std::isfinite(xi)) {
      throw Error("Ensemble: priors must be finite");
    }
  }
}

HermitianMatrix Ensemble::weighted_state(int j) const {
  return HermitianMatrix(priors_.at(j) * states_.at(j).matrix.matrix());
}

Povm::Povm(std::vector<HermitianMatrix> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw CountMismatch("Povm: at least one element is required");
  }
  const int p = elements_.front().dim();
  for (const HermitianMatrix& el : elements_) {
    if (el.dim() != p) {
      throw DimensionMismatch("Povm: elements have mixed dimensions");
    }
  }
}

ValidationReport validate_ensemble(const Ensemble& e) {
  ValidationReport report;
  double prior_sum = 0.0;
  for (int j = 0; j < e.size(); ++j) {
    const double xi = e.prior(j);
    prior_sum += xi;
    if (xi < 0.0) {
      report.violations.push_back(
          {"priors[" + std::to_string(j) + "] is negative (" +
               format_double(xi) + ")",
           -xi});
    }
    const double trace_dev = std::abs(e.state(j).matrix.trace() - 1.0);
    if (trace_dev > kStateTraceTolerance) {
      report.violations.push_back(
          {"states[" + std::to_string(j) + "] trace deviation " +
               format_double(trace_dev),
           trace_dev});
    }
    const double w_min = min_eigenvalue(e.state(j).matrix);
    if (w_min < -kStatePsdTolerance) {
      report.violations.push_back(
          {"states[" + std::to_string(j) + "] min eigenvalue " +
               format_double(w_min),
           -w_min});
    }
  }
  const double sum_dev = std::abs(prior_sum - 1.0);
  if (sum_dev > kPriorSumTolerance) {
    report.violations.push_back(
        {"priors sum " + format_double(prior_sum), sum_dev});
  }
  return report;
}

ValidationReport validate_povm(const Povm& m, int dim) {
  ValidationReport report;
  if (m.dim() != dim) {
    report.violations.push_back(
        {"element dimension " + std::to_string(m.dim()) + " does not match " +
             std::to_string(dim),
         std::abs(double(m.dim() - dim))});
    return report;
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < m.size(); ++j) {
    sum += m.element(j).matrix();
    const double w_min = min_eigenvalue(m.element(j));
    if (w_min < -kPovmPsdTolerance) {
      report.violations.push_back(
          {"element " + std::to_string(j) + " min eigenvalue " +
               format_double(w_min),
           -w_min});
    }
  }
  const double completeness_dev =
      (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (completeness_dev > kCompletenessTolerance) {
    report.violations.push_back(
        {"completeness deviation " + format_double(completeness_dev),
         completeness_dev});
  }
  return report;
}

namespace {

void check_pair(const Ensemble& e, const Povm& m) {
  if (e.size() != m.size()) {
    throw CountMismatch("ensemble has " + std::to_string(e.size()) +
                        " sources but povm has " + std::to_string(m.size()) +
                        " elements");
  }
  if (e.dim() != m.dim()) {
    throw DimensionMismatch("ensemble dim " + std::to_string(e.dim()) +
                            " vs povm dim " + std::to_string(m.dim()));
  }
}

}  // namespace

double success_probability(const Ensemble& e, const Povm& m) {
  check_pair(e, m);
  double total = 0.0;
  for (int j = 0; j < e.size(); ++j) {
    total += e.prior(j) * trace_product(e.state(j).matrix, m.element(j));
  }
  return total;
}

Eigen::MatrixXd confusion_matrix(const Ensemble& e, const Povm& m) {
  check_pair(e, m);
  Eigen::MatrixXd result(e.size(), m.size());
  for (int j = 0; j < e.size(); ++j) {
    for (int k = 0; k < m.size(); ++k) {
      const double p = trace_product(e.state(j).matrix, m.element(k));
      result(j, k) = p < 0.0 ? 0.0 : p;
    }
  }
  return result;
}

}  // namespace qsd
