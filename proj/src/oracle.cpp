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

#include "qsd/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace qsd {

namespace {

// Projector onto the qubit state with Bloch vector n(theta, phi).
Eigen::Matrix2cd bloch_projector(double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  Eigen::Matrix2cd proj;
  proj << 0.5 * (1.0 + nz), 0.5 * std::complex<double>(nx, -ny),
      0.5 * std::complex<double>(nx, ny), 0.5 * (1.0 - nz);
  return proj;
}

Povm two_outcome_povm(int element_count, int dim, int label_plus,
                      int label_minus, const Eigen::MatrixXcd& projector) {
  std::vector<HermitianMatrix> elements(
      element_count, HermitianMatrix::zero(dim));
  elements[label_plus] = HermitianMatrix(projector);
  elements[label_minus] = HermitianMatrix(
      Eigen::MatrixXcd::Identity(dim, dim) - projector);
  return Povm(std::move(elements));
}

}  // namespace

OracleResult projective_oracle_qubit(
    const Ensemble& e, int grid_density,
    std::optional<std::pair<int, int>> assignment) {
  if (e.dim() != 2) {
    throw UnsupportedDimension(
        "projective_oracle_qubit: only dim 2 is supported, got " +
        std::to_string(e.dim()));
  }
  if (grid_density < 2) {
    throw Error("projective_oracle_qubit: grid_density must be >= 2");
  }
  std::vector<std::pair<int, int>> assignments;
  if (assignment) {
    const auto [a, b] = *assignment;
    if (a < 0 || b < 0 || a >= e.size() || b >= e.size() || a == b) {
      throw Error("projective_oracle_qubit: assignment labels must be two "
                  "distinct source indices");
    }
    assignments.push_back(*assignment);
  } else {
    for (int a = 0; a < e.size(); ++a) {
      for (int b = 0; b < e.size(); ++b) {
        if (a != b) assignments.emplace_back(a, b);
      }
    }
  }
  if (assignments.empty()) {
    // Single source: the only two-outcome strategies collapse to "answer 0".
    assignments.emplace_back(0, 0);
  }

  double best_value = -1.0;
  double best_theta = 0.0;
  double best_phi = 0.0;
  std::pair<int, int> best_assignment = assignments.front();
  long long evaluations = 0;

  for (int it = 0; it < grid_density; ++it) {
    const double theta = std::numbers::pi * it / (grid_density - 1);
    for (int ip = 0; ip < grid_density; ++ip) {
      const double phi = 2.0 * std::numbers::pi * ip / grid_density;
      const Eigen::Matrix2cd proj = bloch_projector(theta, phi);
      const Eigen::Matrix2cd comp = Eigen::Matrix2cd::Identity() - proj;
      for (const auto& [a, b] : assignments) {
        ++evaluations;
        double value =
            e.prior(a) * (e.state(a).matrix.matrix() * proj).trace().real();
        if (b != a) {
          value +=
              e.prior(b) * (e.state(b).matrix.matrix() * comp).trace().real();
        }
        if (value > best_value) {
          best_value = value;
          best_theta = theta;
          best_phi = phi;
          best_assignment = {a, b};
        }
      }
    }
  }

  Povm best_povm =
      best_assignment.first == best_assignment.second
          ? Povm([&] {
              std::vector<HermitianMatrix> elements(
                  e.size(), HermitianMatrix::zero(2));
              elements[0] = HermitianMatrix::identity(2);
              return elements;
            }())
          : two_outcome_povm(e.size(), 2, best_assignment.first,
                             best_assignment.second,
                             bloch_projector(best_theta, best_phi));
  const double exact = success_probability(e, best_povm);
  return OracleResult{exact, std::move(best_povm), evaluations};
}

Povm random_povm(int element_count, int dim, Rng& rng) {
  std::vector<Eigen::MatrixXcd> grams;
  grams.reserve(element_count);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < element_count; ++j) {
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        g(r, c) = rng.complex_normal();
      }
    }
    Eigen::MatrixXcd gram = g * g.adjoint();
    grams.push_back(gram);
    sum += gram;
  }
  const Eigen::MatrixXcd normalizer =
      pinv_psd(sqrt_psd(HermitianMatrix(sum))).matrix();
  std::vector<HermitianMatrix> elements;
  elements.reserve(element_count);
  for (const Eigen::MatrixXcd& gram : grams) {
    elements.emplace_back(normalizer * gram * normalizer);
  }
  return Povm(std::move(elements));
}

OracleResult random_povm_search(const Ensemble& e, long long samples,
                                std::uint64_t seed) {
  if (samples < 1) {
    throw Error("random_povm_search: samples must be >= 1");
  }
  Rng rng(seed);
  double best_value = -1.0;
  std::optional<Povm> best;
  for (long long s = 0; s < samples; ++s) {
    Povm candidate = random_povm(e.size(), e.dim(), rng);
    const double value = success_probability(e, candidate);
    if (value > best_value) {
      best_value = value;
      best = std::move(candidate);
    }
  }
  return OracleResult{best_value, std::move(*best), samples};
}

int sample_measurement(const DensityMatrix& state, const Povm& m, Rng& rng) {
  if (state.dim() != m.dim()) {
    throw DimensionMismatch("sample_measurement: state dim " +
                            std::to_string(state.dim()) + " vs povm dim " +
                            std::to_string(m.dim()));
  }
  std::vector<double> probabilities(m.size());
  double total = 0.0;
  for (int k = 0; k < m.size(); ++k) {
    const double p = trace_product(state.matrix, m.element(k));
    probabilities[k] = p < 0.0 ? 0.0 : p;
    total += probabilities[k];
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw InvalidDistribution("outcome probabilities sum to " +
                              std::to_string(total));
  }
  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  for (int k = 0; k + 1 < m.size(); ++k) {
    cumulative += probabilities[k];
    if (u < cumulative) return k;
  }
  return m.size() - 1;  // final bucket absorbs the remainder
}

GameStats simulate_game(const Ensemble& e, const Povm& m, long long trials,
                        std::uint64_t seed) {
  if (trials < 1) {
    throw Error("simulate_game: trials must be >= 1");
  }
  if (e.size() != m.size() || e.dim() != m.dim()) {
    throw DimensionMismatch("simulate_game: ensemble/povm mismatch");
  }
  Rng rng(seed);
  long long successes = 0;
  for (long long t = 0; t < trials; ++t) {
    const double u = rng.uniform();
    int source = e.size() - 1;
    double cumulative = 0.0;
    for (int j = 0; j + 1 < e.size(); ++j) {
      cumulative += e.prior(j);
      if (u < cumulative) {
        source = j;
        break;
      }
    }
    if (sample_measurement(e.state(source), m, rng) == source) {
      ++successes;
    }
  }
  const double rate = double(successes) / double(trials);
  const double std_error = std::sqrt(rate * (1.0 - rate) / double(trials));
  return GameStats{trials, successes, rate, std_error};
}

}  // namespace qsd
