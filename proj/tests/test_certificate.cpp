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

#include "qsd/certificate.hpp"
#include "qsd/oracle.hpp"
#include "qsd/solver.hpp"
#include "test_support.hpp"

using namespace qsd;
using namespace qsd::testing;

namespace {

const HermitianMatrix kHalfIdentity(0.5 * Eigen::MatrixXcd::Identity(2, 2));

Povm orthogonal_optimum() {
  return Povm({pure_state(ket0()).matrix, pure_state(ket1()).matrix});
}

}  // namespace

TEST_CASE("helstrom residuals at the orthogonal optimum vanish") {
  const Ensemble e = two_state_ensemble(ket0(), ket1());
  const std::vector<double> residuals = helstrom_residuals(e, kHalfIdentity);
  REQUIRE(residuals.size() == 2);
  CHECK(residuals[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(residuals[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("identity is always dual feasible, zero never is") {
  Rng rng(3);
  const Ensemble e = random_ensemble(3, 2, rng);
  for (double r : helstrom_residuals(e, HermitianMatrix::identity(2))) {
    CHECK(r >= -1e-12);
  }
  const std::vector<double> at_zero =
      helstrom_residuals(e, HermitianMatrix::zero(2));
  for (int j = 0; j < e.size(); ++j) {
    if (e.prior(j) > 0.0) {
      CHECK(at_zero[j] < 0.0);
    }
  }
}

TEST_CASE("slackness residual on the known cases") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());
  CHECK(slackness_residual(orth, orthogonal_optimum(), kHalfIdentity) <=
        1e-12);

  // the uniform strategy for |0>,|+> is not stationary
  const Ensemble zp = two_state_ensemble(ket0(), ket_plus());
  const Povm uniform = default_initial_povm(2, 2);
  const HermitianMatrix lambda = lagrange_operator(zp, uniform);
  CHECK(slackness_residual(zp, uniform, lambda) > 1e-3);

  // single source, identity strategy, lambda = rho
  Rng rng(9);
  const DensityMatrix rho = random_density(2, rng);
  const Ensemble single({rho}, {1.0});
  CHECK(slackness_residual(single, Povm({HermitianMatrix::identity(2)}),
                           rho.matrix) <= 1e-12);
}

TEST_CASE("dual upper bound construction") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());

  // already feasible: no shift
  const auto [witness, bound] = dual_upper_bound(orth, kHalfIdentity);
  CHECK(bound == doctest::Approx(1.0));
  CHECK(max_abs_diff(witness.matrix(), kHalfIdentity.matrix()) <= 1e-12);

  // lambda = 0 for a single pure state: shift by 1, trace = dim
  const Ensemble single({pure_state(ket0())}, {1.0});
  const auto [shifted, p_bound] =
      dual_upper_bound(single, HermitianMatrix::zero(2));
  CHECK(p_bound == doctest::Approx(2.0));
  CHECK(max_abs_diff(shifted.matrix(), Eigen::MatrixXcd::Identity(2, 2)) <=
        1e-12);
}

TEST_CASE("certify on the known cases") {
  const Ensemble orth = two_state_ensemble(ket0(), ket1());
  const Certificate at_optimum = certify(orth, orthogonal_optimum());
  CHECK(at_optimum.gap <= 1e-10);
  CHECK(at_optimum.gap >= -1e-9);

  const Ensemble zp = two_state_ensemble(ket0(), ket_plus());
  const Certificate at_uniform = certify(zp, default_initial_povm(2, 2));
  CHECK(at_uniform.gap >= 0.3);

  const SolveReport trine = solve(trine_ensemble());
  const Certificate trine_cert = certify(trine_ensemble(), trine.povm);
  CHECK(trine_cert.gap <= 1e-6);
  CHECK(trine_cert.upper_bound == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("weak duality holds for arbitrary strategies and multipliers") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int count = 2 + trial % 3;
    const int dim = 2 + trial % 2;
    const Ensemble e = random_ensemble(count, dim, rng);
    const Povm m = random_povm(count, dim, rng);
    const HermitianMatrix lambda = random_hermitian(dim, rng);
    const auto [witness, bound] = dual_upper_bound(e, lambda);
    REQUIRE(success_probability(e, m) <= bound + 1e-9);
    for (double r : helstrom_residuals(e, witness)) {
      REQUIRE(r >= -1e-10);
    }
  }
}

TEST_CASE("a certified optimum dominates every sampled strategy") {
  Rng rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const Ensemble e = random_ensemble(2 + trial % 2, 2, rng);
    const SolveReport report = solve(e);
    REQUIRE(report.converged);
    const Certificate cert = certify(e, report.povm);
    for (int sample = 0; sample < 50; ++sample) {
      const Povm other = random_povm(e.size(), 2, rng);
      REQUIRE(success_probability(e, other) <=
              report.success_probability + cert.gap + 1e-9);
    }
  }
}

TEST_CASE("a tiny gap forces the stationarity conditions") {
  Rng rng(321);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 10; ++trial) {
    const Ensemble e = random_ensemble(2 + trial % 3, 2, rng);
    SolverConfig cfg;
    cfg.gap_tolerance = 1e-11;
    cfg.max_iterations = 100000;
    const SolveReport report = solve(e, cfg);
    const Certificate cert = certify(e, report.povm);
    if (cert.gap > 1e-10) continue;
    ++tested;
    CHECK(cert.slackness_residual <= 1e-8);
    for (double r : cert.helstrom_residuals) {
      CHECK(r >= -1e-8);
    }
  }
  CHECK(tested >= 10);
}
