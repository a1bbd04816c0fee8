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

#ifndef QSD_SDP_HPP
#define QSD_SDP_HPP

#include <filesystem>
#include <vector>

#include "qsd/model.hpp"

namespace qsd {

/// Orthonormal Hermitian operator basis: Tr(Gamma_i Gamma_j) = delta_ij, with
/// gammas[0] = I/sqrt(p) and the remaining p^2 - 1 members traceless. Order is
/// fixed (identity, symmetric pairs, antisymmetric pairs, diagonal traceless)
/// so serialized problems are byte-stable across runs.
struct OperatorBasis {
  int dim = 0;
  std::vector<HermitianMatrix> gammas;
};

OperatorBasis operator_basis(int dim);

/// The discrimination problem in dual semidefinite-program form:
///   maximize -Tr(F0 Z),  Z >= 0,  Tr(F_i Z) = c_i,
/// with F0 the direct sum of -xi_j rho_j over sources, F_i the direct sum of
/// M copies of Gamma_i, c_i = Tr Gamma_i, and Z the direct sum of the POVM
/// elements. Only the per-block data is stored; the block structure is
/// implied.
struct SdpProblem {
  int block_count = 0;
  int block_dim = 0;
  std::vector<HermitianMatrix> f0_blocks;  // -xi_j rho_j per source
  OperatorBasis basis;
  std::vector<double> c;
};

SdpProblem build_dual_sdp(const Ensemble& e);

/// -Tr(F0 Z) for Z = direct sum of the POVM elements; equals the success
/// probability whenever the POVM is complete.
double dual_objective(const SdpProblem& p, const Povm& m);

/// Tr(F_i Z) for every i; equals c when the POVM is complete.
Eigen::VectorXd dual_constraint_values(const SdpProblem& p, const Povm& m);

/// Coordinates of a multiplier in the primal problem
///   minimize c^T x,  F(x) = F0 + sum_i x_i F_i >= 0.
struct PrimalPoint {
  Eigen::VectorXd x;              // x_i = Tr(lambda Gamma_i)
  double value = 0.0;             // c^T x = Tr lambda
  double feasibility_min_eig = 0.0;  // min eigenvalue of F(x)
};

PrimalPoint primal_objective(const Ensemble& e, const HermitianMatrix& lambda);

/// [[Re X, -Im X], [Im X, Re X]]: real symmetric matrix with the eigenvalues
/// of the complex Hermitian block, each doubled in multiplicity.
Eigen::MatrixXd real_embedding(const HermitianMatrix& x);

struct SdpaEntry {
  int matno = 0;  // 0 for the constant matrix, 1..mdim for constraints
  int blkno = 0;  // 1-based block index
  int row = 0;    // 1-based, row <= col (upper triangle)
  int col = 0;
  double value = 0.0;
};

/// In-memory image of a sparse SDPA (".dat-s") file.
struct SdpaData {
  int mdim = 0;
  int nblock = 0;
  std::vector<int> block_sizes;
  std::vector<double> c;
  std::vector<SdpaEntry> entries;
};

/// File image of the problem. Complex p x p blocks become 2p x 2p real
/// symmetric embeddings; matrix coefficients are scaled by 1/2 so that the
/// embedding's doubled traces cancel and an external solver's objective can
/// be compared to the success probability directly.
SdpaData sdpa_data(const SdpProblem& p);

/// Writes sparse SDPA format with 17-significant-digit decimals (lossless for
/// doubles). Throws IoFailure when the file cannot be written.
void export_sdpa(const SdpProblem& p, const std::filesystem::path& path);

/// Reads a file written by export_sdpa back into its in-memory image.
SdpaData read_sdpa(const std::filesystem::path& path);

}  // namespace qsd

#endif  // QSD_SDP_HPP
