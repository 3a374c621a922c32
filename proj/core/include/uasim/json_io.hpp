/*
 * Copyright 2026 The uasim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "uasim/averaging.hpp"
#include "uasim/complex_matrix.hpp"
#include "uasim/experiments.hpp"
#include "uasim/mesh.hpp"

// File formats. Malformed input raises ConfigError.
namespace uasim {

using Json = nlohmann::json;

// {"rows": R, "cols": C, "data": [[re, im], ...]}, row-major.
Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);
ComplexMatrix read_matrix_file(const std::string& path);

// {"m": m, "layers": [[{"top", "theta", "phi"}, ...], ...], "output_phases": [...]}
// Padded meshes add {"mode", "phi", "stage": "input"|"idle"} entries to a
// layer and a top-level "depth".
Json mesh_to_json(const MeshSpec& spec);
MeshSpec mesh_from_json(const Json& j);

Json lcu_to_json(const LCUSpec& spec);
Json network_to_json(const AveragingNetwork& net);

// Overrides the fields of `base` present in j. Keys: m, n, nu, N, runs,
// seed, target, input, fresh_target_per_run, da_metric, workers. nu and N
// take either arrays or the CLI list syntax.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});
Json config_to_json(const ExperimentConfig& config);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace uasim
