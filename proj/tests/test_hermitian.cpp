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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsd/hermitian.hpp"
#include "test_support.hpp"

using namespace qsd;
using namespace qsd::testing;

namespace {

Eigen::MatrixXcd diag2(double a, double b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("constructor symmetrizes and records the deviation") {
  Eigen::Matrix2cd skewed;
  skewed << 1.0, std::complex<double>(0.5, 0.25),
      std::complex<double>(0.5, -0.05), 2.0;
  HermitianMatrix m(skewed);
  CHECK(max_abs_diff(m.matrix(), m.matrix().adjoint()) == 0.0);
  CHECK(m.hermiticity_deviation() == doctest::Approx(0.1).epsilon(1e-12));

  HermitianMatrix clean(diag2(1, 2));
  CHECK(clean.hermiticity_deviation() == 0.0);
}

TEST_CASE("constructor rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(HermitianMatrix(Eigen::MatrixXcd::Zero(2, 3)), Error);
  CHECK_THROWS_AS(HermitianMatrix(Eigen::MatrixXcd::Zero(0, 0)), Error);
  Eigen::Matrix2cd bad = Eigen::Matrix2cd::Zero();
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianMatrix{bad}, Error);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(HermitianMatrix{bad}, Error);
}

TEST_CASE("eig_hermitian on diagonal and Pauli matrices") {
  const EigenDecomposition diag = eig_hermitian(HermitianMatrix(diag2(3, 1)));
  CHECK(diag.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(diag.eigenvalues(1) == doctest::Approx(3.0));

  const EigenDecomposition sx = eig_hermitian(HermitianMatrix(pauli_x()));
  CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian reconstructs a random 4x4 input") {
  Rng rng(7);
  const HermitianMatrix a = random_hermitian(4, rng);
  const EigenDecomposition eig = eig_hermitian(a);
  const Eigen::MatrixXcd rebuilt =
      eig.eigenvectors *
      eig.eigenvalues.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
      eig.eigenvectors.adjoint();
  const double spectral =
      std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(3)));
  CHECK(max_abs_diff(rebuilt, a.matrix()) <= 1e-10 * std::max(1.0, spectral));
  CHECK(max_abs_diff(eig.eigenvectors.adjoint() * eig.eigenvectors,
                     Eigen::MatrixXcd::Identity(4, 4)) <= 1e-10);
}

TEST_CASE("sqrt_psd on the known cases") {
  CHECK(max_abs_diff(sqrt_psd(HermitianMatrix(diag2(4, 9))).matrix(),
                     diag2(2, 3)) <= 1e-12);
  CHECK(sqrt_psd(HermitianMatrix::zero(3)).max_abs() == 0.0);

  // rank-1: A = v v^dag with |v| = 2 has sqrt (1/2) v v^dag
  Eigen::Vector2cd v;
  v << 2.0 * std::cos(0.3), 2.0 * std::sin(0.3) * std::complex<double>(0, 1);
  const HermitianMatrix a(v * v.adjoint());
  const HermitianMatrix root = sqrt_psd(a);
  CHECK(max_abs_diff(root.matrix(), 0.5 * v * v.adjoint()) <= 1e-12);
  CHECK(max_abs_diff(root.matrix() * root.matrix(), a.matrix()) <= 1e-9 * 4.0);
}

TEST_CASE("sqrt_psd rejects indefinite input") {
  CHECK_THROWS_AS(sqrt_psd(HermitianMatrix(pauli_z())),
                  NotPositiveSemidefinite);
}

TEST_CASE("pinv_psd on the known cases") {
  CHECK(max_abs_diff(pinv_psd(HermitianMatrix(diag2(2, 0))).matrix(),
                     diag2(0.5, 0)) <= 1e-12);
  CHECK(max_abs_diff(pinv_psd(HermitianMatrix::identity(3)).matrix(),
                     Eigen::MatrixXcd::Identity(3, 3)) <= 1e-12);
  CHECK_THROWS_AS(pinv_psd(HermitianMatrix(pauli_z())),
                  NotPositiveSemidefinite);
}

TEST_CASE("pinv_psd satisfies the Penrose identities on a rank-2 4x4 input") {
  Rng rng(11);
  const Eigen::MatrixXcd g = random_gaussian(4, rng).leftCols(2);
  const HermitianMatrix a(g * g.adjoint());
  const Eigen::MatrixXcd pinv = pinv_psd(a).matrix();
  const double scale = a.max_abs();
  CHECK(max_abs_diff(a.matrix() * pinv * a.matrix(), a.matrix()) <=
        1e-9 * scale);
  CHECK(max_abs_diff(pinv * a.matrix() * pinv, pinv) <= 1e-9);
  CHECK(max_abs_diff((a.matrix() * pinv).adjoint(), a.matrix() * pinv) <=
        1e-9);
}

TEST_CASE("min_eigenvalue basics") {
  CHECK(min_eigenvalue(HermitianMatrix(pauli_z())) == doctest::Approx(-1.0));
  CHECK(min_eigenvalue(HermitianMatrix::identity(2)) == doctest::Approx(1.0));
  CHECK(min_eigenvalue(pure_state(ket0()).matrix) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("trace_product basics and errors") {
  CHECK(trace_product(HermitianMatrix::identity(2),
                      HermitianMatrix::identity(2)) == doctest::Approx(2.0));
  CHECK(trace_product(HermitianMatrix(pauli_x()), HermitianMatrix(pauli_z())) ==
        doctest::Approx(0.0));
  CHECK(trace_product(pure_state(ket0()).matrix,
                      pure_state(ket_plus()).matrix) == doctest::Approx(0.5));
  CHECK_THROWS_AS(trace_product(HermitianMatrix::identity(2),
                                HermitianMatrix::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("spectral contracts hold over 1000 random PSD instances") {
  Rng rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 3;
    const HermitianMatrix a = random_psd(dim, rng);
    const EigenDecomposition eig = eig_hermitian(a);
    const double spectral = std::max(std::abs(eig.eigenvalues(0)),
                                     std::abs(eig.eigenvalues(dim - 1)));
    const Eigen::MatrixXcd rebuilt =
        eig.eigenvectors *
        eig.eigenvalues.asDiagonal()
            .toDenseMatrix()
            .cast<std::complex<double>>() *
        eig.eigenvectors.adjoint();
    REQUIRE(max_abs_diff(rebuilt, a.matrix()) <=
            1e-10 * std::max(1.0, spectral));

    const HermitianMatrix root = sqrt_psd(a);
    REQUIRE(max_abs_diff(root.matrix() * root.matrix(), a.matrix()) <=
            1e-9 * std::max(1.0, spectral));

    const Eigen::MatrixXcd pinv = pinv_psd(a).matrix();
    REQUIRE(max_abs_diff(a.matrix() * pinv * a.matrix(), a.matrix()) <=
            1e-9 * std::max(1.0, spectral));

    REQUIRE(min_eigenvalue(a) == eig.eigenvalues(0));
  }
}

TEST_CASE("trace_product is symmetric over random pairs") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 3;
    const HermitianMatrix a = random_hermitian(dim, rng);
    const HermitianMatrix b = random_hermitian(dim, rng);
    REQUIRE(std::abs(trace_product(a, b) - trace_product(b, a)) <= 1e-12);
  }
}
