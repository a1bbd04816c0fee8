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

#include "qsd/io.hpp"

#include <fstream>

namespace qsd {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kHermiticityRejectTolerance = 1e-8;

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoFailure("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw ParseError(path.string(), err.what());
  }
  return doc;
}

HermitianMatrix parse_matrix(const json& value, const std::string& field,
                             int dim) {
  if (!value.is_array() || static_cast<int>(value.size()) != dim) {
    throw ParseError(field, "expected " + std::to_string(dim) + " rows");
  }
  Eigen::MatrixXcd raw(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = value[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError(field + "[" + std::to_string(r) + "]",
                       "expected " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError(field + "[" + std::to_string(r) + "][" +
                             std::to_string(c) + "]",
                         "expected a two-element [re, im] array");
      }
      raw(r, c) = std::complex<double>(entry[0].get<double>(),
                                       entry[1].get<double>());
    }
  }
  HermitianMatrix parsed = [&] {
    try {
      return HermitianMatrix(raw);
    } catch (const Error& err) {
      throw ParseError(field, err.what());
    }
  }();
  if (parsed.hermiticity_deviation() > kHermiticityRejectTolerance) {
    throw ParseError(field, "matrix is not Hermitian (deviation " +
                                std::to_string(parsed.hermiticity_deviation()) +
                                ")");
  }
  return parsed;
}

}  // namespace

Ensemble parse_problem(const json& doc) {
  if (!doc.is_object()) {
    throw ParseError("$", "expected a JSON object");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("dim", "expected a positive integer");
  }
  const int dim = doc["dim"].get<int>();
  if (dim < 1) {
    throw ParseError("dim", "expected a positive integer");
  }
  if (!doc.contains("states") || !doc["states"].is_array() ||
      doc["states"].empty()) {
    throw ParseError("states", "expected a non-empty array");
  }
  std::vector<DensityMatrix> states;
  std::vector<double> priors;
  int index = 0;
  for (const json& item : doc["states"]) {
    const std::string field = "states[" + std::to_string(index) + "]";
    if (!item.is_object()) {
      throw ParseError(field, "expected an object");
    }
    if (!item.contains("prior") || !item["prior"].is_number()) {
      throw ParseError(field + ".prior", "expected a number");
    }
    if (!item.contains("matrix")) {
      throw ParseError(field + ".matrix", "missing");
    }
    priors.push_back(item["prior"].get<double>());
    states.push_back(
        DensityMatrix{parse_matrix(item["matrix"], field + ".matrix", dim)});
    ++index;
  }
  return Ensemble(std::move(states), std::move(priors));
}

Ensemble load_problem(const std::filesystem::path& path) {
  return parse_problem(load_json(path));
}

Povm parse_povm(const json& doc, int dim) {
  if (!doc.is_object() || !doc.contains("povm") || !doc["povm"].is_array() ||
      doc["povm"].empty()) {
    throw ParseError("povm", "expected a non-empty array of matrices");
  }
  std::vector<HermitianMatrix> elements;
  int index = 0;
  for (const json& item : doc["povm"]) {
    elements.push_back(
        parse_matrix(item, "povm[" + std::to_string(index) + "]", dim));
    ++index;
  }
  return Povm(std::move(elements));
}

Povm load_povm(const std::filesystem::path& path, int dim) {
  return parse_povm(load_json(path), dim);
}

ordered_json matrix_to_json(const HermitianMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.dim(); ++c) {
      const std::complex<double> v = m.matrix()(r, c);
      row.push_back({v.real(), v.imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json ensemble_to_json(const Ensemble& e) {
  ordered_json states = ordered_json::array();
  for (int j = 0; j < e.size(); ++j) {
    states.push_back({{"prior", e.prior(j)},
                      {"matrix", matrix_to_json(e.state(j).matrix)}});
  }
  return {{"dim", e.dim()}, {"states", std::move(states)}};
}

ordered_json validation_to_json(const ValidationReport& report) {
  ordered_json violations = ordered_json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"message", v.message}, {"deviation", v.deviation}});
  }
  return {{"valid", report.valid()}, {"violations", std::move(violations)}};
}

ordered_json report_to_json(const SolveReport& report) {
  ordered_json povm = ordered_json::array();
  for (const HermitianMatrix& element : report.povm.elements()) {
    povm.push_back(matrix_to_json(element));
  }
  return {{"success_probability", report.success_probability},
          {"gap", report.gap},
          {"converged", report.converged},
          {"iterations_used", report.iterations_used},
          {"povm", std::move(povm)},
          {"lagrange_operator", matrix_to_json(report.lagrange_operator)},
          {"trace", report.trace}};
}

ordered_json certificate_to_json(const Certificate& cert) {
  return {{"upper_bound", cert.upper_bound},
          {"gap", cert.gap},
          {"helstrom_residuals", cert.helstrom_residuals},
          {"slackness_residual", cert.slackness_residual},
          {"feasible_dual", matrix_to_json(cert.feasible_dual)}};
}

ordered_json stats_to_json(const GameStats& stats) {
  return {{"trials", stats.trials},
          {"successes", stats.successes},
          {"empirical_rate", stats.empirical_rate},
          {"std_error", stats.std_error}};
}

}  // namespace qsd
