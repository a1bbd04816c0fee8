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

#include "qsd/hermitian.hpp"

#include <cmath>

namespace qsd {

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& raw) {
  if (raw.rows() == 0 || raw.rows() != raw.cols()) {
    throw Error("HermitianMatrix: input must be square and non-empty, got " +
                std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
  }
  if (!raw.allFinite()) {
    throw Error("HermitianMatrix: input contains NaN or Inf entries");
  }
  const Eigen::MatrixXcd anti = 0.5 * (raw - raw.adjoint());
  hermiticity_deviation_ = anti.cwiseAbs().maxCoeff();
  mat_ = 0.5 * (raw + raw.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eig_hermitian: eigen-iteration did not converge");
  }
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Applies f to the spectrum and reassembles U f(w) U^dag.
HermitianMatrix map_spectrum(const EigenDecomposition& eig,
                             const Eigen::VectorXd& mapped) {
  const Eigen::MatrixXcd result = eig.eigenvectors *
                                  mapped.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                                  eig.eigenvectors.adjoint();
  return HermitianMatrix(result);
}

}  // namespace

HermitianMatrix sqrt_psd(const HermitianMatrix& a, double rank_cutoff) {
  const EigenDecomposition eig = eig_hermitian(a);
  const double w_max = eig.eigenvalues.maxCoeff();
  const double threshold = rank_cutoff * std::max(1.0, w_max);
  if (eig.eigenvalues.minCoeff() < -threshold) {
    throw NotPositiveSemidefinite(
        "sqrt_psd: min eigenvalue " + std::to_string(eig.eigenvalues.minCoeff()) +
        " below PSD tolerance " + std::to_string(-threshold));
  }
  Eigen::VectorXd mapped = eig.eigenvalues;
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped(i) = mapped(i) <= threshold ? 0.0 : std::sqrt(mapped(i));
  }
  return map_spectrum(eig, mapped);
}

HermitianMatrix pinv_psd(const HermitianMatrix& a, double rank_cutoff) {
  const EigenDecomposition eig = eig_hermitian(a);
  const double w_max = eig.eigenvalues.maxCoeff();
  if (eig.eigenvalues.minCoeff() < -rank_cutoff * std::max(1.0, w_max)) {
    throw NotPositiveSemidefinite(
        "pinv_psd: min eigenvalue " + std::to_string(eig.eigenvalues.minCoeff()) +
        " makes the input indefinite");
  }
  const double threshold = rank_cutoff * std::max(w_max, 0.0);
  Eigen::VectorXd mapped = eig.eigenvalues;
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped(i) = mapped(i) > threshold ? 1.0 / mapped(i) : 0.0;
  }
  return map_spectrum(eig, mapped);
}

double min_eigenvalue(const HermitianMatrix& a) {
  return eig_hermitian(a).eigenvalues(0);
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("trace_product: dims " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
  const std::complex<double> tr = (a.matrix() * b.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-10) {
    throw Error("trace_product: trace has imaginary part " +
                std::to_string(tr.imag()) + ", inputs are not Hermitian");
  }
  return tr.real();
}

}  // namespace qsd
