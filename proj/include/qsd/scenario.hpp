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

#ifndef QSD_SCENARIO_HPP
#define QSD_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qsd/solver.hpp"

namespace qsd {

/// Three coplanar pure qubit states: |Psi_1> = cos(phi)|0> - sin(phi)|1> and
/// |Psi_2> = cos(phi)|0> + sin(phi)|1> (Bloch vectors (-+sin 2phi, 0,
/// cos 2phi), symmetric about the z axis) with priors xi/2 each, and
/// |Psi_3> = (|0> + |1>)/sqrt(2) along Bloch +x with prior 1 - xi. Psi_3 sits
/// off-axis on Psi_2's side, which breaks the mirror symmetry of the pair;
/// Psi_1 is the pair member facing away from Psi_3. At small xi the optimal
/// device discriminates Psi_1 from Psi_3 and ignores Psi_2, which is what the
/// region-I label below encodes.
struct CoplanarScenario {
  double phi = 0.0;  // radians, meaningful range (0, pi/4)
  double xi = 0.0;   // weight of the symmetric pair, in [0, 1]
};

Ensemble coplanar_three_states(const CoplanarScenario& s);

/// Prior below which the third state stops being ignorable:
/// 1 / (1 + sin(phi) cos(phi)).
double threshold_xi_23(double phi);

/// Number of active output channels decides the regime: two channels on the
/// symmetric pair (III), three channels (II), or two channels on Psi_1/Psi_3
/// (I). A single active channel is reported as degenerate (prior endpoints).
enum class Region { kI, kII, kIII, kDegenerate };

std::string region_name(Region r);

/// Counts elements with Tr Pi_j > weight_threshold and maps the pattern to a
/// region. Requires a three-source ensemble. Throws AmbiguousClassification
/// when two element weights sit within a decade of the threshold at once, or
/// when the vanished element is Psi_1's (which no regime produces).
Region classify_region(const Povm& m, const Ensemble& e,
                       double weight_threshold = 1e-6);

struct SweepPoint {
  double xi = 0.0;
  double error_rate = 0.0;  // 1 - P_s
  int outcome_count = 0;
  Region region = Region::kDegenerate;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct ScenarioSolve {
  SweepPoint point;
  SolveReport report;  // the adopted strategy in full
};

/// Solves one prior value and classifies it. The optimum can be degenerate
/// (in region I the mirror symmetry of the pair makes whole families of
/// optimal strategies, including three-channel ones), so in addition to the
/// plain solve this re-solves with each channel pinned to zero and adopts the
/// certified strategy with the fewest active channels; that is the channel
/// count the regime labels are defined by.
ScenarioSolve solve_scenario_point(double phi, double xi,
                                   const SolverConfig& cfg = {});

/// Error-rate sweep over the given priors. Points are solved independently
/// (in parallel when jobs != 1; jobs = 0 uses the hardware thread count).
/// Per-point non-convergence is recorded in the point, never thrown.
std::vector<SweepPoint> sweep_xi(double phi, const std::vector<double>& xi_grid,
                                 const SolverConfig& cfg = {}, int jobs = 0);

/// points evenly spaced values covering [0, 1].
std::vector<double> uniform_xi_grid(int points);

enum class RegionPair { kI_II, kII_III };

/// Bisection of the region classifier to 1e-5 in xi. Throws BracketingFailure
/// if the pair of regions never occurs adjacently for this phi.
double find_threshold_numeric(double phi, RegionPair pair,
                              const SolverConfig& cfg = {});

/// CSV with header xi,phi,error_rate,outcome_count,region,gap,iterations,
/// 12 significant digits, LF line endings.
void write_sweep_csv(std::ostream& out, double phi,
                     const std::vector<SweepPoint>& points);

}  // namespace qsd

#endif  // QSD_SCENARIO_HPP
