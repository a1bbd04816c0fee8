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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qsd/certificate.hpp"
#include "qsd/oracle.hpp"
#include "qsd/sdp.hpp"
#include "qsd/solver.hpp"
#include "test_support.hpp"

using namespace qsd;
using namespace qsd::testing;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("the qubit basis is the normalized Pauli set") {
  const OperatorBasis basis = operator_basis(2);
  REQUIRE(basis.gammas.size() == 4);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(basis.gammas[0].matrix(),
                     s * Eigen::MatrixXcd::Identity(2, 2)) <= 1e-15);
  CHECK(max_abs_diff(basis.gammas[1].matrix(), s * pauli_x()) <= 1e-15);
  CHECK(max_abs_diff(basis.gammas[2].matrix(), s * pauli_y()) <= 1e-15);
  CHECK(max_abs_diff(basis.gammas[3].matrix(), s * pauli_z()) <= 1e-15);
}

TEST_CASE("the operator basis is orthonormal") {
  for (int dim : {2, 3}) {
    const OperatorBasis basis = operator_basis(dim);
    REQUIRE(static_cast<int>(basis.gammas.size()) == dim * dim);
    for (std::size_t i = 0; i < basis.gammas.size(); ++i) {
      for (std::size_t j = 0; j < basis.gammas.size(); ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        REQUIRE(std::abs(trace_product(basis.gammas[i], basis.gammas[j]) -
                         expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("dual data reproduces objective and constraints") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());
  const SdpProblem problem = build_dual_sdp(orth);
  REQUIRE(problem.c[0] == doctest::Approx(std::sqrt(2.0)));
  for (std::size_t i = 1; i < problem.c.size(); ++i) {
    REQUIRE(std::abs(problem.c[i]) <= 1e-12);
  }

  const Povm optimum({pure_state(ket0()).matrix, pure_state(ket1()).matrix});
  CHECK(dual_objective(problem, optimum) == doctest::Approx(1.0));

  const Eigen::VectorXd constraints =
      dual_constraint_values(problem, default_initial_povm(2, 2));
  CHECK(constraints(0) == doctest::Approx(std::sqrt(2.0)));
  for (int i = 1; i < constraints.size(); ++i) {
    CHECK(std::abs(constraints(i)) <= 1e-10);
  }
}

TEST_CASE("objective and constraint equivalence on random strategies") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int count = 2 + trial % 3;
    const int dim = 2 + trial % 2;
    const Ensemble e = random_ensemble(count, dim, rng);
    const SdpProblem problem = build_dual_sdp(e);
    const Povm m = random_povm(count, dim, rng);

    REQUIRE(std::abs(dual_objective(problem, m) - success_probability(e, m)) <=
            1e-10);

    const Eigen::VectorXd values = dual_constraint_values(problem, m);
    for (std::size_t i = 0; i < problem.c.size(); ++i) {
      REQUIRE(std::abs(values(static_cast<Eigen::Index>(i)) - problem.c[i]) <=
              1e-10);
    }
  }
}

TEST_CASE("violated completeness shows up in the constraints") {
  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const Ensemble e = random_ensemble(2, 2, rng);
    const SdpProblem problem = build_dual_sdp(e);
    Povm m = random_povm(2, 2, rng);
    // break completeness by scaling one element
    std::vector<HermitianMatrix> broken = m.elements();
    broken[0] = HermitianMatrix((1.0 + 0.1 * (1 + trial % 5)) *
                                broken[0].matrix());
    const Povm bad(broken);

    Eigen::MatrixXcd sum = bad.element(0).matrix() + bad.element(1).matrix();
    const double completeness_dev =
        max_abs_diff(sum, Eigen::MatrixXcd::Identity(2, 2));
    REQUIRE(completeness_dev > 1e-3);

    const Eigen::VectorXd values = dual_constraint_values(problem, bad);
    double worst = 0.0;
    for (std::size_t i = 0; i < problem.c.size(); ++i) {
      worst = std::max(worst,
                       std::abs(values(static_cast<Eigen::Index>(i)) -
                                problem.c[i]));
    }
    REQUIRE(worst > 1e-6);
  }
}

TEST_CASE("primal coordinates of a multiplier") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());
  const HermitianMatrix half(0.5 * Eigen::MatrixXcd::Identity(2, 2));
  const PrimalPoint point = primal_objective(orth, half);
  CHECK(point.x(0) == doctest::Approx(std::sqrt(2.0) / 2.0));
  for (int i = 1; i < point.x.size(); ++i) {
    CHECK(std::abs(point.x(i)) <= 1e-12);
  }
  CHECK(point.value == doctest::Approx(1.0));
  CHECK(point.feasibility_min_eig == doctest::Approx(0.0).epsilon(1e-12));

  const PrimalPoint at_zero = primal_objective(orth, HermitianMatrix::zero(2));
  CHECK(at_zero.value == doctest::Approx(0.0));
  CHECK(at_zero.feasibility_min_eig < 0.0);
}

TEST_CASE("primal value, certificate bound and trace agree at the optimum") {
  const SolveReport report = solve(trine_ensemble());
  REQUIRE(report.converged);
  const Certificate cert = certify(trine_ensemble(), report.povm);
  const PrimalPoint point =
      primal_objective(trine_ensemble(), report.lagrange_operator);
  CHECK(point.value ==
        doctest::Approx(report.lagrange_operator.trace()).epsilon(1e-12));
  if (point.feasibility_min_eig >= 0.0) {
    CHECK(point.value == doctest::Approx(cert.upper_bound).epsilon(1e-9));
  }
}

TEST_CASE("real embedding doubles every eigenvalue's multiplicity") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 3;
    const HermitianMatrix h = random_hermitian(dim, rng);
    const Eigen::MatrixXd embedded = real_embedding(h);
    REQUIRE(max_abs_diff(embedded.cast<std::complex<double>>(),
                         embedded.transpose().cast<std::complex<double>>()) <=
            1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_eig(embedded);
    const Eigen::VectorXd complex_eig = eig_hermitian(h).eigenvalues;
    for (int i = 0; i < dim; ++i) {
      REQUIRE(real_eig.eigenvalues()(2 * i) ==
              doctest::Approx(complex_eig(i)).epsilon(1e-10));
      REQUIRE(real_eig.eigenvalues()(2 * i + 1) ==
              doctest::Approx(complex_eig(i)).epsilon(1e-10));
    }
  }
}

TEST_CASE("export header matches the block structure") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());
  const auto path = temp_file("qsd_test_orth.dat-s");
  export_sdpa(build_dual_sdp(orth), path);

  std::ifstream in(path);
  std::string line1, line2, line3;
  std::getline(in, line1);
  std::getline(in, line2);
  std::getline(in, line3);
  CHECK(line1 == "4 = mDIM");
  CHECK(line2 == "2 = nBLOCK");
  CHECK(line3 == "4 4");
  std::filesystem::remove(path);
}

TEST_CASE("export round-trips coefficient-identically") {
  Rng rng(71);
  const Ensemble e = random_ensemble(3, 2, rng);
  const SdpProblem problem = build_dual_sdp(e);
  const SdpaData written = sdpa_data(problem);

  const auto path = temp_file("qsd_test_roundtrip.dat-s");
  export_sdpa(problem, path);
  const SdpaData reread = read_sdpa(path);
  std::filesystem::remove(path);

  REQUIRE(reread.mdim == written.mdim);
  REQUIRE(reread.nblock == written.nblock);
  REQUIRE(reread.block_sizes == written.block_sizes);
  REQUIRE(reread.c.size() == written.c.size());
  for (std::size_t i = 0; i < written.c.size(); ++i) {
    REQUIRE(reread.c[i] == written.c[i]);
  }
  REQUIRE(reread.entries.size() == written.entries.size());
  for (std::size_t i = 0; i < written.entries.size(); ++i) {
    REQUIRE(reread.entries[i].matno == written.entries[i].matno);
    REQUIRE(reread.entries[i].blkno == written.entries[i].blkno);
    REQUIRE(reread.entries[i].row == written.entries[i].row);
    REQUIRE(reread.entries[i].col == written.entries[i].col);
    REQUIRE(reread.entries[i].value == written.entries[i].value);
  }
}

TEST_CASE("export failure raises IoFailure") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());
  CHECK_THROWS_AS(
      export_sdpa(build_dual_sdp(orth), "/nonexistent-dir/out.dat-s"),
      IoFailure);
}
