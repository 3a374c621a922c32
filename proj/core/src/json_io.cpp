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

#include "uasim/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uasim/errors.hpp"

namespace uasim {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(std::string(what) + ": missing \"" + key + "\"");
    }
    return j.at(key);
}

std::size_t as_count(const Json& j, const char* what) {
    if (j.is_number_unsigned()) {
        return j.get<std::size_t>();
    }
    if (j.is_number_integer() && j.get<long long>() >= 0) {
        return static_cast<std::size_t>(j.get<long long>());
    }
    throw ConfigError(std::string(what) + ": expected a non-negative integer");
}

double as_real(const Json& j, const char* what) {
    if (!j.is_number()) {
        throw ConfigError(std::string(what) + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(std::string(what) + ": non-finite value");
    }
    return v;
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

} // namespace

Json matrix_to_json(const ComplexMatrix& a) {
    Json data = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            data.push_back(complex_pair(a(i, k)));
        }
    }
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const std::size_t rows = as_count(field(j, "rows", "matrix"), "matrix rows");
    const std::size_t cols = as_count(field(j, "cols", "matrix"), "matrix cols");
    const Json& data = field(j, "data", "matrix");
    if (!data.is_array()) {
        throw ConfigError("matrix: \"data\" must be an array");
    }
    if (data.size() != rows * cols) {
        throw ConfigError("matrix: data has " + std::to_string(data.size()) + " entries, expected " +
                          std::to_string(rows * cols));
    }
    std::vector<Complex> values;
    values.reserve(data.size());
    for (const auto& entry : data) {
        if (!entry.is_array() || entry.size() != 2) {
            throw ConfigError("matrix: every entry must be [re, im]");
        }
        values.emplace_back(as_real(entry[0], "matrix entry"), as_real(entry[1], "matrix entry"));
    }
    return ComplexMatrix(rows, cols, std::move(values));
}

ComplexMatrix read_matrix_file(const std::string& path) {
    try {
        return matrix_from_json(read_json_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Json mesh_to_json(const MeshSpec& spec) {
    Json layers = Json::array();
    for (const auto& layer : spec.layers) {
        Json elems = Json::array();
        for (const auto& p : layer.input_phases) {
            elems.push_back({{"mode", p.mode}, {"phi", p.phi}, {"stage", "input"}});
        }
        for (const auto& bs : layer.couplers) {
            elems.push_back({{"top", bs.top}, {"theta", bs.theta}, {"phi", bs.phi}});
        }
        for (const auto& p : layer.idle_phases) {
            elems.push_back({{"mode", p.mode}, {"phi", p.phi}, {"stage", "idle"}});
        }
        layers.push_back(std::move(elems));
    }
    Json out = {{"m", spec.m}, {"layers", std::move(layers)}, {"output_phases", spec.output_phases}};
    if (spec.depth != 0) {
        out["depth"] = spec.depth;
    }
    return out;
}

MeshSpec mesh_from_json(const Json& j) {
    MeshSpec spec;
    spec.m = as_count(field(j, "m", "mesh"), "mesh m");
    const Json& layers = field(j, "layers", "mesh");
    if (!layers.is_array()) {
        throw ConfigError("mesh: \"layers\" must be an array");
    }
    for (const auto& elems : layers) {
        if (!elems.is_array()) {
            throw ConfigError("mesh: each layer must be an array");
        }
        MeshLayer layer;
        for (const auto& e : elems) {
            if (e.contains("top")) {
                layer.couplers.push_back({as_count(e.at("top"), "coupler top"),
                                          as_real(field(e, "theta", "coupler"), "coupler theta"),
                                          as_real(field(e, "phi", "coupler"), "coupler phi")});
                continue;
            }
            const PhaseShift ps{as_count(field(e, "mode", "phase"), "phase mode"),
                                as_real(field(e, "phi", "phase"), "phase phi")};
            const Json& stage = field(e, "stage", "phase");
            if (stage == "input") {
                layer.input_phases.push_back(ps);
            } else if (stage == "idle") {
                layer.idle_phases.push_back(ps);
            } else {
                throw ConfigError("mesh: phase stage must be \"input\" or \"idle\"");
            }
        }
        spec.layers.push_back(std::move(layer));
    }
    for (const auto& p : field(j, "output_phases", "mesh")) {
        spec.output_phases.push_back(as_real(p, "output phase"));
    }
    if (j.contains("depth")) {
        spec.depth = as_count(j.at("depth"), "mesh depth");
    }
    try {
        validate(spec);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("mesh: ") + e.what());
    }
    return spec;
}

Json lcu_to_json(const LCUSpec& spec) {
    Json unitaries = Json::array();
    for (const auto& u : spec.unitaries) {
        unitaries.push_back(matrix_to_json(u));
    }
    Json coefficients = Json::array();
    for (const auto& c : spec.coefficients) {
        coefficients.push_back(complex_pair(c));
    }
    return {{"unitaries", std::move(unitaries)},
            {"coefficients", std::move(coefficients)},
            {"scale", spec.scale}};
}

Json network_to_json(const AveragingNetwork& net) {
    Json copies = Json::array();
    for (const auto& u : net.copies) {
        copies.push_back(matrix_to_json(u));
    }
    Json alpha = Json::array();
    for (const auto& a : net.alpha) {
        alpha.push_back(complex_pair(a));
    }
    return {{"N", net.size()},
            {"m", net.modes()},
            {"copies", std::move(copies)},
            {"encoder", matrix_to_json(net.encoder)},
            {"decoder", matrix_to_json(net.decoder)},
            {"alpha", std::move(alpha)}};
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig base) {
    if (!j.is_object()) {
        throw ConfigError("config: expected a JSON object");
    }
    static const char* const kKeys[] = {"m",      "n",     "nu",    "N",
                                        "runs",   "seed",  "target", "input",
                                        "fresh_target_per_run", "da_metric", "workers"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            throw ConfigError("config: unknown key \"" + key + "\"");
        }
    }
    if (j.contains("m")) {
        base.m = as_count(j["m"], "config m");
    }
    if (j.contains("n")) {
        base.n = as_count(j["n"], "config n");
    }
    if (j.contains("nu")) {
        const Json& nu = j["nu"];
        if (nu.is_string()) {
            base.nu_values = parse_real_list(nu.get<std::string>());
        } else if (nu.is_array()) {
            base.nu_values.clear();
            for (const auto& v : nu) {
                base.nu_values.push_back(as_real(v, "config nu"));
            }
        } else {
            base.nu_values = {as_real(nu, "config nu")};
        }
    }
    if (j.contains("N")) {
        const Json& big_n = j["N"];
        if (big_n.is_string()) {
            base.N_values = parse_count_list(big_n.get<std::string>());
        } else if (big_n.is_array()) {
            base.N_values.clear();
            for (const auto& v : big_n) {
                base.N_values.push_back(as_count(v, "config N"));
            }
        } else {
            base.N_values = {as_count(big_n, "config N")};
        }
    }
    if (j.contains("runs")) {
        base.runs = as_count(j["runs"], "config runs");
    }
    if (j.contains("seed")) {
        base.master_seed = as_count(j["seed"], "config seed");
    }
    if (j.contains("target")) {
        if (!j["target"].is_string()) {
            throw ConfigError("config: target must be a string");
        }
        base.target = TargetSpec::parse(j["target"].get<std::string>());
    }
    if (j.contains("input")) {
        if (!j["input"].is_string()) {
            throw ConfigError("config: input must be a string like \"1,1,0\"");
        }
        try {
            base.input_state = FockState::parse(j["input"].get<std::string>());
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    if (j.contains("fresh_target_per_run")) {
        if (!j["fresh_target_per_run"].is_boolean()) {
            throw ConfigError("config: fresh_target_per_run must be a boolean");
        }
        base.fresh_target_per_run = j["fresh_target_per_run"].get<bool>();
    }
    if (j.contains("da_metric")) {
        if (!j["da_metric"].is_string()) {
            throw ConfigError("config: da_metric must be a string");
        }
        base.da_metric = parse_da_metric(j["da_metric"].get<std::string>());
    }
    if (j.contains("workers")) {
        base.workers = as_count(j["workers"], "config workers");
    }
    return base;
}

Json config_to_json(const ExperimentConfig& config) {
    Json out = {{"m", config.m},
                {"n", config.n},
                {"nu", config.nu_values},
                {"N", config.N_values},
                {"runs", config.runs},
                {"seed", config.master_seed},
                {"target", config.target.to_string()},
                {"input", config.input().to_string()},
                {"fresh_target_per_run", config.fresh_target_per_run},
                {"da_metric", to_string(config.da_metric)}};
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw ConfigError("write failed for " + path);
    }
}

} // namespace uasim
