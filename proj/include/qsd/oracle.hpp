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

#ifndef QSD_ORACLE_HPP
#define QSD_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "qsd/model.hpp"
#include "qsd/rng.hpp"

namespace qsd {

struct OracleResult {
  double best_value = 0.0;
  Povm best_povm;
  long long evaluations = 0;
};

/// Exhaustive scan over two-outcome projective measurements of a qubit,
/// parameterized by Bloch angles (theta, phi) on a grid_density^2 grid. The
/// two projectors are assigned to a pair of source labels (every ordered pair
/// is tried unless one is given); the remaining labels get zero elements.
/// Throws UnsupportedDimension unless dim == 2.
OracleResult projective_oracle_qubit(
    const Ensemble& e, int grid_density,
    std::optional<std::pair<int, int>> assignment = std::nullopt);

/// Draws one POVM: Gram matrices of complex Gaussian samples, renormalized by
/// the inverse square root of their sum, which makes completeness exact by
/// construction while reaching the interior of the POVM set.
Povm random_povm(int element_count, int dim, Rng& rng);

/// Best of `samples` random POVMs; a lower bound on the optimum.
OracleResult random_povm_search(const Ensemble& e, long long samples,
                                std::uint64_t seed);

/// Samples an outcome index with probability Tr(rho Pi_k). Tiny negative
/// probabilities are clamped to zero and the total renormalized; a total off
/// by more than 1e-6 throws InvalidDistribution. The final bucket absorbs the
/// floating-point remainder, so every draw yields a valid outcome.
int sample_measurement(const DensityMatrix& state, const Povm& m, Rng& rng);

struct GameStats {
  long long trials = 0;
  long long successes = 0;
  double empirical_rate = 0.0;
  double std_error = 0.0;  // sqrt(rate * (1 - rate) / trials)
};

/// Monte-Carlo run of the discrimination game: each trial picks a source by
/// the priors, measures, and counts a success when the outcome index matches
/// the source. Bit-reproducible for a fixed seed.
GameStats simulate_game(const Ensemble& e, const Povm& m, long long trials,
                        std::uint64_t seed);

}  // namespace qsd

#endif  // QSD_ORACLE_HPP
