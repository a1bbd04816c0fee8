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

#ifndef QSD_HERMITIAN_HPP
#define QSD_HERMITIAN_HPP

#include <Eigen/Dense>

#include "qsd/errors.hpp"

namespace qsd {

/// Relative eigenvalue threshold below which a PSD matrix is treated as
/// rank-deficient by sqrt_psd / pinv_psd.
inline constexpr double kDefaultRankCutoff = 1e-12;

/// Dense complex Hermitian matrix. The constructor replaces its argument by
/// the Hermitian part (A + A^dag)/2 and keeps the size of the discarded
/// anti-Hermitian part around for diagnostics, so downstream code can rely on
/// exact hermiticity of the stored entries. Immutable after construction.
class HermitianMatrix {
 public:
  /// Throws Error on empty, non-square, or non-finite input.
  explicit HermitianMatrix(const Eigen::MatrixXcd& raw);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

  /// Max-abs entry of (A - A^dag)/2 measured on the constructor argument.
  double hermiticity_deviation() const { return hermiticity_deviation_; }

  /// Re Tr A (the imaginary part is zero for Hermitian entries).
  double trace() const { return mat_.trace().real(); }

  /// Max-abs entry norm.
  double max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXcd mat_;
  double hermiticity_deviation_ = 0.0;
};

/// Eigensystem of a Hermitian matrix: real eigenvalues in ascending order and
/// a unitary matrix whose columns are the matching eigenvectors.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

/// Full eigendecomposition. Throws ConvergenceFailure if the underlying
/// eigen-iteration fails, which signals pathological input.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// Positive semidefinite square root. Eigenvalues below the cutoff (relative
/// to max(1, largest eigenvalue)) are mapped to zero; eigenvalues below the
/// negated cutoff raise NotPositiveSemidefinite.
HermitianMatrix sqrt_psd(const HermitianMatrix& a,
                         double rank_cutoff = kDefaultRankCutoff);

/// Moore-Penrose pseudo-inverse of a PSD matrix: eigenvalues above
/// rank_cutoff * (largest eigenvalue) are inverted, the rest are zeroed.
HermitianMatrix pinv_psd(const HermitianMatrix& a,
                         double rank_cutoff = kDefaultRankCutoff);

/// Smallest eigenvalue.
double min_eigenvalue(const HermitianMatrix& a);

/// Re Tr(AB). Throws DimensionMismatch on unequal dims and Error if the
/// imaginary part of the trace exceeds 1e-10 (impossible for genuinely
/// Hermitian inputs, so it indicates corruption).
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace qsd

#endif  // QSD_HERMITIAN_HPP
