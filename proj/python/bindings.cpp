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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qsd/certificate.hpp"
#include "qsd/io.hpp"
#include "qsd/oracle.hpp"
#include "qsd/scenario.hpp"
#include "qsd/sdp.hpp"
#include "qsd/solver.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

// User-facing constructors reject clearly non-Hermitian input instead of
// symmetrizing it away, matching the problem-file parser.
qsd::HermitianMatrix checked_hermitian(const Eigen::MatrixXcd& raw,
                                       const char* what) {
  qsd::HermitianMatrix m(raw);
  if (m.hermiticity_deviation() > 1e-8) {
    throw py::value_error(std::string(what) + " is not Hermitian (deviation " +
                          std::to_string(m.hermiticity_deviation()) + ")");
  }
  return m;
}

qsd::Ensemble make_ensemble(const std::vector<Eigen::MatrixXcd>& states,
                            const std::vector<double>& priors) {
  std::vector<qsd::DensityMatrix> density;
  density.reserve(states.size());
  for (const Eigen::MatrixXcd& s : states) {
    density.push_back(qsd::DensityMatrix{checked_hermitian(s, "state")});
  }
  return qsd::Ensemble(std::move(density), priors);
}

qsd::Povm make_povm(const std::vector<Eigen::MatrixXcd>& elements) {
  std::vector<qsd::HermitianMatrix> converted;
  converted.reserve(elements.size());
  for (const Eigen::MatrixXcd& el : elements) {
    converted.push_back(checked_hermitian(el, "povm element"));
  }
  return qsd::Povm(std::move(converted));
}

std::vector<Eigen::MatrixXcd> povm_matrices(const qsd::Povm& m) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(m.size());
  for (const qsd::HermitianMatrix& el : m.elements()) {
    out.push_back(el.matrix());
  }
  return out;
}

qsd::SolverConfig make_config(int max_iterations, double gap_tolerance,
                              double rank_cutoff, const std::string& init,
                              std::uint64_t seed, double jitter_amplitude) {
  qsd::SolverConfig cfg;
  cfg.max_iterations = max_iterations;
  cfg.gap_tolerance = gap_tolerance;
  cfg.rank_cutoff = rank_cutoff;
  if (init == "jitter") {
    cfg.init_mode = qsd::InitMode::kRandomJitter;
  } else if (init == "uniform") {
    cfg.init_mode = qsd::InitMode::kUniform;
  } else {
    throw py::value_error("init must be 'uniform' or 'jitter'");
  }
  cfg.jitter_seed = seed;
  cfg.jitter_amplitude = jitter_amplitude;
  return cfg;
}

constexpr char kConfigArgsDoc[] =
    "max_iterations, gap_tolerance, rank_cutoff, init ('uniform'/'jitter'), "
    "seed and jitter_amplitude tune the iteration.";

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum-error discrimination of quantum sources: fixed-point "
            "POVM solver with semidefinite-programming optimality "
            "certificates";

  py::register_exception<qsd::Error>(m, "QsdError", PyExc_ValueError);

  py::class_<qsd::Ensemble>(m, "Ensemble",
                            "Prior-weighted quantum sources to discriminate")
      .def(py::init(&make_ensemble), "states"_a, "priors"_a)
      .def_property_readonly("dim", &qsd::Ensemble::dim)
      .def("__len__", &qsd::Ensemble::size)
      .def_property_readonly("priors", &qsd::Ensemble::priors)
      .def_property_readonly("states",
                             [](const qsd::Ensemble& e) {
                               std::vector<Eigen::MatrixXcd> out;
                               for (const qsd::DensityMatrix& s : e.states()) {
                                 out.push_back(s.matrix.matrix());
                               }
                               return out;
                             })
      .def("validate", [](const qsd::Ensemble& e) {
        std::vector<std::string> messages;
        for (const qsd::Violation& v : qsd::validate_ensemble(e).violations) {
          messages.push_back(v.message);
        }
        return messages;
      });

  py::class_<qsd::Povm>(m, "Povm", "Measurement strategy, one element per "
                                   "source label")
      .def(py::init(&make_povm), "elements"_a)
      .def_property_readonly("dim", &qsd::Povm::dim)
      .def("__len__", &qsd::Povm::size)
      .def_property_readonly("elements", &povm_matrices)
      .def("validate", [](const qsd::Povm& p, int dim) {
        std::vector<std::string> messages;
        for (const qsd::Violation& v :
             qsd::validate_povm(p, dim).violations) {
          messages.push_back(v.message);
        }
        return messages;
      }, "dim"_a);

  py::class_<qsd::SolveReport>(m, "SolveReport")
      .def_readonly("success_probability", &qsd::SolveReport::success_probability)
      .def_readonly("gap", &qsd::SolveReport::gap)
      .def_readonly("iterations_used", &qsd::SolveReport::iterations_used)
      .def_readonly("converged", &qsd::SolveReport::converged)
      .def_readonly("trace", &qsd::SolveReport::trace)
      .def_property_readonly("povm",
                             [](const qsd::SolveReport& r) { return r.povm; })
      .def_property_readonly("lagrange_operator",
                             [](const qsd::SolveReport& r) {
                               return r.lagrange_operator.matrix();
                             })
      .def("__repr__", [](const qsd::SolveReport& r) {
        return "<SolveReport P_s=" + std::to_string(r.success_probability) +
               " gap=" + std::to_string(r.gap) + " iterations=" +
               std::to_string(r.iterations_used) + ">";
      });

  py::class_<qsd::Certificate>(m, "Certificate")
      .def_readonly("upper_bound", &qsd::Certificate::upper_bound)
      .def_readonly("gap", &qsd::Certificate::gap)
      .def_readonly("helstrom_residuals", &qsd::Certificate::helstrom_residuals)
      .def_readonly("slackness_residual", &qsd::Certificate::slackness_residual)
      .def_property_readonly("feasible_dual", [](const qsd::Certificate& c) {
        return c.feasible_dual.matrix();
      });

  py::class_<qsd::GameStats>(m, "GameStats")
      .def_readonly("trials", &qsd::GameStats::trials)
      .def_readonly("successes", &qsd::GameStats::successes)
      .def_readonly("empirical_rate", &qsd::GameStats::empirical_rate)
      .def_readonly("std_error", &qsd::GameStats::std_error);

  py::class_<qsd::OracleResult>(m, "OracleResult")
      .def_readonly("best_value", &qsd::OracleResult::best_value)
      .def_readonly("evaluations", &qsd::OracleResult::evaluations)
      .def_property_readonly("best_povm", [](const qsd::OracleResult& r) {
        return r.best_povm;
      });

  py::enum_<qsd::Region>(m, "Region")
      .value("I", qsd::Region::kI)
      .value("II", qsd::Region::kII)
      .value("III", qsd::Region::kIII)
      .value("DEGENERATE", qsd::Region::kDegenerate);

  py::class_<qsd::SweepPoint>(m, "SweepPoint")
      .def_readonly("xi", &qsd::SweepPoint::xi)
      .def_readonly("error_rate", &qsd::SweepPoint::error_rate)
      .def_readonly("outcome_count", &qsd::SweepPoint::outcome_count)
      .def_readonly("region", &qsd::SweepPoint::region)
      .def_readonly("gap", &qsd::SweepPoint::gap)
      .def_readonly("iterations", &qsd::SweepPoint::iterations)
      .def_readonly("converged", &qsd::SweepPoint::converged);

  m.def("success_probability", &qsd::success_probability, "ensemble"_a,
        "povm"_a, "Average probability of naming the true source");
  m.def("confusion_matrix", &qsd::confusion_matrix, "ensemble"_a, "povm"_a,
        "P(outcome k | source j) as a row-stochastic matrix");

  m.def(
      "solve",
      [](const qsd::Ensemble& e, int max_iterations, double gap_tolerance,
         double rank_cutoff, const std::string& init, std::uint64_t seed,
         double jitter_amplitude) {
        return qsd::solve(e, make_config(max_iterations, gap_tolerance,
                                         rank_cutoff, init, seed,
                                         jitter_amplitude));
      },
      "ensemble"_a, "max_iterations"_a = 10000, "gap_tolerance"_a = 1e-8,
      "rank_cutoff"_a = qsd::kDefaultRankCutoff, "init"_a = "uniform",
      "seed"_a = 0, "jitter_amplitude"_a = 1e-3,
      (std::string("Iterate to a certified optimal strategy. ") +
       kConfigArgsDoc).c_str());
  m.def("iterate_once",
        [](const qsd::Ensemble& e, const qsd::Povm& m_) {
          return qsd::iterate_once(e, m_);
        },
        "ensemble"_a, "povm"_a, "One fixed-point update of the strategy");
  m.def("lagrange_operator",
        [](const qsd::Ensemble& e, const qsd::Povm& m_) {
          return qsd::lagrange_operator(e, m_).matrix();
        },
        "ensemble"_a, "povm"_a);
  m.def("certify", &qsd::certify, "ensemble"_a, "povm"_a,
        "Dual-feasibility certificate and duality gap for a strategy");
  m.def("helstrom_residuals",
        [](const qsd::Ensemble& e, const Eigen::MatrixXcd& lambda) {
          return qsd::helstrom_residuals(e,
                                         checked_hermitian(lambda, "lambda"));
        },
        "ensemble"_a, "lambda"_a);
  m.def("dual_upper_bound",
        [](const qsd::Ensemble& e, const Eigen::MatrixXcd& lambda) {
          auto [shifted, bound] =
              qsd::dual_upper_bound(e, checked_hermitian(lambda, "lambda"));
          return py::make_tuple(shifted.matrix(), bound);
        },
        "ensemble"_a, "lambda"_a);

  m.def("operator_basis",
        [](int dim) {
          std::vector<Eigen::MatrixXcd> out;
          for (const qsd::HermitianMatrix& g :
               qsd::operator_basis(dim).gammas) {
            out.push_back(g.matrix());
          }
          return out;
        },
        "dim"_a, "Orthonormal Hermitian operator basis, identity first");
  m.def("export_sdpa",
        [](const qsd::Ensemble& e, const std::filesystem::path& path) {
          qsd::export_sdpa(qsd::build_dual_sdp(e), path);
        },
        "ensemble"_a, "path"_a,
        "Write the problem in sparse SDPA format for external solvers");

  m.def("projective_oracle_qubit",
        [](const qsd::Ensemble& e, int grid_density,
           std::optional<std::pair<int, int>> assignment) {
          return qsd::projective_oracle_qubit(e, grid_density, assignment);
        },
        "ensemble"_a, "grid_density"_a, "assignment"_a = py::none(),
        "Brute-force scan over two-outcome projective qubit measurements");
  m.def("random_povm_search", &qsd::random_povm_search, "ensemble"_a,
        "samples"_a, "seed"_a,
        "Best of `samples` random strategies; lower-bounds the optimum");
  m.def("simulate_game", &qsd::simulate_game, "ensemble"_a, "povm"_a,
        "trials"_a, "seed"_a,
        "Monte-Carlo estimate of the success probability");

  m.def("coplanar_three_states",
        [](double phi, double xi) {
          return qsd::coplanar_three_states({phi, xi});
        },
        "phi"_a, "xi"_a,
        "The three-coplanar-qubit-states family (symmetric pair + state "
        "along Bloch x)");
  m.def("threshold_xi_23", &qsd::threshold_xi_23, "phi"_a);
  m.def(
      "sweep_xi",
      [](double phi, const std::vector<double>& grid, int jobs,
         int max_iterations, double gap_tolerance) {
        qsd::SolverConfig cfg;
        cfg.max_iterations = max_iterations;
        cfg.gap_tolerance = gap_tolerance;
        return qsd::sweep_xi(phi, grid, cfg, jobs);
      },
      "phi"_a, "xi_grid"_a, "jobs"_a = 0, "max_iterations"_a = 10000,
      "gap_tolerance"_a = 1e-8,
      "Certified error-rate sweep over the pair prior");
  m.def("classify_region",
        [](const qsd::Povm& m_, const qsd::Ensemble& e,
           double weight_threshold) {
          return qsd::classify_region(m_, e, weight_threshold);
        },
        "povm"_a, "ensemble"_a, "weight_threshold"_a = 1e-6);
  m.def("find_threshold_numeric",
        [](double phi, const std::string& pair) {
          if (pair == "I/II") {
            return qsd::find_threshold_numeric(phi, qsd::RegionPair::kI_II);
          }
          if (pair == "II/III") {
            return qsd::find_threshold_numeric(phi, qsd::RegionPair::kII_III);
          }
          throw py::value_error("pair must be 'I/II' or 'II/III'");
        },
        "phi"_a, "pair"_a,
        "Bisect the region boundary in the pair prior to 1e-5");

  m.def("load_problem",
        [](const std::filesystem::path& path) {
          return qsd::load_problem(path);
        },
        "path"_a, "Read a problem JSON document");

  m.attr("__version__") = "0.1.0";
}
