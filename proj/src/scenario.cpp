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

#include "qsd/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace qsd {

namespace {

DensityMatrix pure_qubit(double amp0_re, double amp1_re) {
  Eigen::Vector2cd ket;
  ket << amp0_re, amp1_re;
  return DensityMatrix{HermitianMatrix(ket * ket.adjoint())};
}

}  // namespace

Ensemble coplanar_three_states(const CoplanarScenario& s) {
  if (!(s.xi >= 0.0 && s.xi <= 1.0)) {
    throw Error("coplanar_three_states: xi must lie in [0, 1]");
  }
  const double c = std::cos(s.phi);
  const double d = std::sin(s.phi);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<DensityMatrix> states;
  states.push_back(pure_qubit(c, -d));
  states.push_back(pure_qubit(c, d));
  states.push_back(pure_qubit(inv_sqrt2, inv_sqrt2));
  return Ensemble(std::move(states), {s.xi / 2.0, s.xi / 2.0, 1.0 - s.xi});
}

double threshold_xi_23(double phi) {
  return 1.0 / (1.0 + std::sin(phi) * std::cos(phi));
}

std::string region_name(Region r) {
  switch (r) {
    case Region::kI: return "I";
    case Region::kII: return "II";
    case Region::kIII: return "III";
    case Region::kDegenerate: return "degenerate";
  }
  return "?";
}

Region classify_region(const Povm& m, const Ensemble& e,
                       double weight_threshold) {
  if (e.size() != 3 || m.size() != 3) {
    throw Error("classify_region: expects the three-source scenario");
  }
  std::vector<double> weights(3);
  int gray = 0;
  for (int j = 0; j < 3; ++j) {
    weights[j] = m.element(j).trace();
    if (weights[j] > 0.1 * weight_threshold &&
        weights[j] < 10.0 * weight_threshold) {
      ++gray;
    }
  }
  if (gray >= 2) {
    throw AmbiguousClassification(
        "two element weights sit within a decade of the threshold " +
        std::to_string(weight_threshold));
  }
  std::vector<int> vanished;
  for (int j = 0; j < 3; ++j) {
    if (weights[j] <= weight_threshold) vanished.push_back(j);
  }
  switch (vanished.size()) {
    case 0:
      return Region::kII;
    case 1:
      if (vanished[0] == 1) return Region::kI;
      if (vanished[0] == 2) return Region::kIII;
      throw AmbiguousClassification(
          "the Psi_1 element vanished, which matches no regime");
    default:
      return Region::kDegenerate;
  }
}

namespace {

Povm pinned_initial_povm(int element_count, int dim, int pinned) {
  int active = element_count - 1;
  std::vector<HermitianMatrix> elements;
  elements.reserve(element_count);
  for (int j = 0; j < element_count; ++j) {
    elements.push_back(j == pinned
                           ? HermitianMatrix::zero(dim)
                           : HermitianMatrix(
                                 Eigen::MatrixXcd::Identity(dim, dim) /
                                 double(active)));
  }
  return Povm(std::move(elements));
}

int active_channel_count(const Povm& m, double weight_threshold) {
  int count = 0;
  for (int j = 0; j < m.size(); ++j) {
    if (m.element(j).trace() > weight_threshold) ++count;
  }
  return count;
}

}  // namespace

ScenarioSolve solve_scenario_point(double phi, double xi,
                                   const SolverConfig& cfg) {
  constexpr double kWeightThreshold = 1e-6;
  const Ensemble ensemble = coplanar_three_states({phi, xi});

  // The plain solve plus one pinned solve per channel; the certified
  // candidate with the fewest active channels wins. Certified candidates all
  // sit within gap_tolerance of the optimum, so preferring fewer channels
  // never trades away success probability beyond that.
  struct Candidate {
    SolveReport report;
    int count = 0;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(4);
  candidates.push_back({solve(ensemble, cfg), 0});
  for (int pinned = 2; pinned >= 0; --pinned) {
    candidates.push_back(
        {solve_from(ensemble, pinned_initial_povm(3, 2, pinned), cfg), 0});
  }
  for (Candidate& candidate : candidates) {
    candidate.count = active_channel_count(candidate.report.povm,
                                           kWeightThreshold);
  }

  int adopted = 0;
  bool any_converged = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!candidates[i].report.converged) continue;
    if (!any_converged ||
        candidates[i].count < candidates[adopted].count) {
      adopted = static_cast<int>(i);
      any_converged = true;
    }
  }

  Candidate& winner = candidates[adopted];
  Region region = Region::kDegenerate;
  try {
    region = classify_region(winner.report.povm, ensemble, kWeightThreshold);
  } catch (const AmbiguousClassification&) {
    region = Region::kDegenerate;
  }
  SweepPoint point{xi,
                   std::max(0.0, 1.0 - winner.report.success_probability),
                   winner.count,
                   region,
                   winner.report.gap,
                   winner.report.iterations_used,
                   winner.report.converged};
  return ScenarioSolve{point, std::move(winner.report)};
}

std::vector<SweepPoint> sweep_xi(double phi, const std::vector<double>& xi_grid,
                                 const SolverConfig& cfg, int jobs) {
  for (double xi : xi_grid) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw Error("sweep_xi: grid values must lie in [0, 1]");
    }
  }
  std::vector<SweepPoint> points(xi_grid.size());
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
  }
  const std::size_t worker_count =
      std::min(static_cast<std::size_t>(jobs), xi_grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < xi_grid.size();
         i = next.fetch_add(1)) {
      points[i] = solve_scenario_point(phi, xi_grid[i], cfg).point;
    }
  };
  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (std::size_t t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return points;
}

std::vector<double> uniform_xi_grid(int points) {
  if (points < 2) {
    throw Error("uniform_xi_grid: need at least 2 points");
  }
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = double(i) / double(points - 1);
  }
  return grid;
}

namespace {

// I < II < III along increasing xi; degenerate points carry no rank.
int region_rank(Region r) {
  switch (r) {
    case Region::kI: return 0;
    case Region::kII: return 1;
    case Region::kIII: return 2;
    case Region::kDegenerate: return -1;
  }
  return -1;
}

}  // namespace

double find_threshold_numeric(double phi, RegionPair pair,
                              const SolverConfig& cfg) {
  const Region lower = pair == RegionPair::kI_II ? Region::kI : Region::kII;
  const Region upper = pair == RegionPair::kI_II ? Region::kII : Region::kIII;
  const int lower_rank = region_rank(lower);
  const int upper_rank = region_rank(upper);

  // Coarse scan for a bracket. The middle region can pinch off to below the
  // scan resolution (it collapses as phi approaches pi/4), so a jump straight
  // across the sought boundary is also accepted as a bracket; the bisection
  // below then converges onto the pinch point, where both boundaries meet.
  constexpr int kScanPoints = 61;
  constexpr double kScanLow = 0.005;
  constexpr double kScanHigh = 0.995;
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  int previous_rank = -1;
  double previous_xi = 0.0;
  for (int i = 0; i < kScanPoints; ++i) {
    const double xi =
        kScanLow + (kScanHigh - kScanLow) * double(i) / double(kScanPoints - 1);
    const int rank =
        region_rank(solve_scenario_point(phi, xi, cfg).point.region);
    if (i > 0 && previous_rank >= 0 && previous_rank <= lower_rank &&
        rank >= upper_rank) {
      lo = previous_xi;
      hi = xi;
      bracketed = true;
      break;
    }
    previous_rank = rank;
    previous_xi = xi;
  }
  if (!bracketed) {
    throw BracketingFailure("regions " + region_name(lower) + "/" +
                            region_name(upper) +
                            " do not occur adjacently for phi = " +
                            std::to_string(phi));
  }
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    const int rank =
        region_rank(solve_scenario_point(phi, mid, cfg).point.region);
    if (rank < 0) {
      throw BracketingFailure("a degenerate point appeared inside the " +
                              region_name(lower) + "/" + region_name(upper) +
                              " bracket");
    }
    if (rank <= lower_rank) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void write_sweep_csv(std::ostream& out, double phi,
                     const std::vector<SweepPoint>& points) {
  auto g12 = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return std::string(buffer);
  };
  out << "xi,phi,error_rate,outcome_count,region,gap,iterations\n";
  for (const SweepPoint& p : points) {
    out << g12(p.xi) << ',' << g12(phi) << ',' << g12(p.error_rate) << ','
        << p.outcome_count << ',' << region_name(p.region) << ','
        << g12(p.gap) << ',' << p.iterations << "\n";
  }
}

}  // namespace qsd
