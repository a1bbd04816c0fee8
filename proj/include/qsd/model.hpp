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

#ifndef QSD_MODEL_HPP
#define QSD_MODEL_HPP

#include <string>
#include <vector>

#include "qsd/hermitian.hpp"

namespace qsd {

/// Quantum state of one source. PSD-ness and unit trace are checked by
/// validate_ensemble, not enforced here, so that broken inputs can be
/// diagnosed instead of rejected blindly.
struct DensityMatrix {
  HermitianMatrix matrix;

  int dim() const { return matrix.dim(); }
};

/// The discrimination instance: M sources, each a density matrix rho_j
/// selected with prior probability xi_j.
class Ensemble {
 public:
  /// Structural requirements (at least one state, equal dims, one prior per
  /// state) are enforced here; numeric invariants are validate_ensemble's job.
  Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors);

  int dim() const { return states_.front().dim(); }
  int size() const { return static_cast<int>(states_.size()); }

  const std::vector<DensityMatrix>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }

  const DensityMatrix& state(int j) const { return states_.at(j); }
  double prior(int j) const { return priors_.at(j); }

  /// xi_j * rho_j, the prior-weighted state the optimality conditions are
  /// phrased in.
  HermitianMatrix weighted_state(int j) const;

 private:
  std::vector<DensityMatrix> states_;
  std::vector<double> priors_;
};

/// Measurement strategy: one element per source label. Positivity and
/// completeness are checked by validate_povm.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> elements);

  int dim() const { return elements_.front().dim(); }
  int size() const { return static_cast<int>(elements_.size()); }

  const std::vector<HermitianMatrix>& elements() const { return elements_; }
  const HermitianMatrix& element(int j) const { return elements_.at(j); }

 private:
  std::vector<HermitianMatrix> elements_;
};

struct Violation {
  std::string message;
  double deviation = 0.0;
};

/// Every violated invariant with its measured deviation; empty means valid.
struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
};

ValidationReport validate_ensemble(const Ensemble& e);
ValidationReport validate_povm(const Povm& m, int dim);

/// Average success probability sum_j xi_j Tr(rho_j Pi_j).
double success_probability(const Ensemble& e, const Povm& m);

/// P(k|j) = Tr(rho_j Pi_k); row j is the outcome distribution of source j.
/// Negative round-off entries are clamped to zero on output.
Eigen::MatrixXd confusion_matrix(const Ensemble& e, const Povm& m);

}  // namespace qsd

#endif  // QSD_MODEL_HPP
