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

#ifndef QSD_IO_HPP
#define QSD_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "qsd/certificate.hpp"
#include "qsd/model.hpp"
#include "qsd/oracle.hpp"
#include "qsd/solver.hpp"

namespace qsd {

// Problem documents look like
//   { "dim": 2,
//     "states": [ { "prior": 0.5, "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]] },
//                 ... ] }
// with matrices row-major and every entry a two-element [re, im] array.
// Certify/simulate documents add "povm": [matrix, ...]. Matrices that are
// non-Hermitian beyond 1e-8 are rejected (ParseError naming the field) rather
// than silently symmetrized.

Ensemble parse_problem(const nlohmann::json& doc);
Ensemble load_problem(const std::filesystem::path& path);

/// Reads the "povm" array of a document; dim must match the problem's.
Povm parse_povm(const nlohmann::json& doc, int dim);
Povm load_povm(const std::filesystem::path& path, int dim);

nlohmann::ordered_json matrix_to_json(const HermitianMatrix& m);
nlohmann::ordered_json ensemble_to_json(const Ensemble& e);
nlohmann::ordered_json validation_to_json(const ValidationReport& report);
nlohmann::ordered_json report_to_json(const SolveReport& report);
nlohmann::ordered_json certificate_to_json(const Certificate& cert);
nlohmann::ordered_json stats_to_json(const GameStats& stats);

}  // namespace qsd

#endif  // QSD_IO_HPP
