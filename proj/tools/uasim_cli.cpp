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

// uasim command line: decompose, bound, grid, lcu, repeat, simulate.
//
// Exit codes: 0 success, 2 bad configuration or input, 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uasim/averaging.hpp"
#include "uasim/errors.hpp"
#include "uasim/experiments.hpp"
#include "uasim/json_io.hpp"
#include "uasim/mesh.hpp"
#include "uasim/sampling.hpp"

namespace {

using namespace uasim;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void emit(const Json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

FockState resolve_input(const std::string& input, std::optional<std::size_t> photons, std::size_t m) {
    if (!input.empty()) {
        FockState s;
        try {
            s = FockState::parse(input);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        if (s.modes() != m) {
            throw ConfigError("input " + s.to_string() + " does not have " + std::to_string(m) +
                              " modes");
        }
        if (photons && *photons != s.photons()) {
            throw ConfigError("--input and --n disagree on the photon count");
        }
        return s;
    }
    const std::size_t n = photons.value_or(1);
    if (n > m) {
        throw ConfigError("cannot place " + std::to_string(n) + " single photons in " +
                          std::to_string(m) + " modes; pass --input");
    }
    return FockState::single_photons(m, n);
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
    std::string matrix;
    std::string out;
    bool pad = false;
};

void run_decompose(const DecomposeArgs& a) {
    const ComplexMatrix u = read_matrix_file(a.matrix);
    if (!u.is_square() || !is_unitary(u, 1e-8)) {
        throw ConfigError(a.matrix + ": not a unitary matrix (tolerance 1e-8)");
    }
    MeshSpec spec = clements_decompose(u);
    if (a.pad) {
        spec = uniform_depth_pad(spec);
    }
    emit(mesh_to_json(spec), a.out);
}

// -------------------------------------------------------------------- bound

struct BoundArgs {
    std::string a;
    std::string b;
    std::optional<std::size_t> n;
    std::string input;
};

void run_bound(const BoundArgs& args) {
    const ComplexMatrix a = read_matrix_file(args.a);
    const ComplexMatrix b = read_matrix_file(args.b);
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ConfigError("both matrices must be square with the same size");
    }
    const FockState input = resolve_input(args.input, args.n, a.rows());
    const std::size_t n = input.photons();
    const Distribution da = heralded_distribution(a, input);
    const Distribution db = heralded_distribution(b, input);
    const Theorem1Bound t1 = theorem1_bound(a, da.herald_probability, b, db.herald_probability, n);

    Json out = {{"n", n},
                {"input", input.to_string()},
                {"tvd", tvd(da, db)},
                {"p_a", da.herald_probability},
                {"p_b", db.herald_probability},
                {"theorem1_bound", t1.value},
                {"theorem1_k", t1.k},
                {"theorem1_hypothesis_met", t1.hypothesis_met}};
    if (is_unitary(a, 1e-8) && is_unitary(b, 1e-8)) {
        out["arkhipov_bound"] = arkhipov_bound(a, b, n);
    } else {
        out["arkhipov_bound"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
}

// --------------------------------------------------------------------- grid

struct GridArgs {
    double nu = 0.01;
    std::string d = "1..20";
    std::string n = "1..20";
    std::string out;
};

void run_grid(const GridArgs& a) {
    if (!(a.nu >= 0.0 && a.nu < 2.0)) {
        throw ConfigError("--nu must lie in [0, 2)");
    }
    const auto d_values = parse_count_list(a.d);
    const auto n_values = parse_count_list(a.n);
    std::ostringstream csv;
    write_grid_csv(csv, run_fig3_grid(a.nu, d_values, n_values));
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(a.out, csv.str());
    }
}

// ---------------------------------------------------------------------- lcu

struct LcuArgs {
    std::string target;
    std::string input;
    std::optional<std::size_t> n;
    std::string out;
};

void run_lcu(const LcuArgs& a) {
    const ComplexMatrix target = read_matrix_file(a.target);
    if (!target.is_square()) {
        throw ConfigError(a.target + ": target must be square");
    }
    if (operator_norm(target) > 1.0 + 1e-9) {
        throw ConfigError(a.target + ": target operator norm exceeds 1");
    }
    const LCUSpec spec = decompose_into_unitaries(target);
    const AveragingNetwork net = network_from_lcu(spec);
    const FockState input = resolve_input(a.input, a.n, target.rows());
    const ComplexMatrix effective = effective_transform(net);

    Json out = {{"lcu", lcu_to_json(spec)},
                {"network", network_to_json(net)},
                {"scale", spec.scale},
                {"input", input.to_string()},
                {"herald_probability", herald_probability(effective, input)},
                {"block_residual", max_abs(effective - (1.0 / spec.scale) * target)}};
    emit(out, a.out);
}

// ------------------------------------------------------------------- repeat

struct RepeatArgs {
    std::vector<std::string> copies;
    std::string input;
    std::string target;
    double nu = 0.01;
    std::size_t num_copies = 2;
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    std::string out;
};

void run_repeat(const RepeatArgs& a) {
    Json out;
    if (!a.copies.empty()) {
        std::vector<ComplexMatrix> copies;
        for (const auto& path : a.copies) {
            copies.push_back(read_matrix_file(path));
            if (!copies.back().is_square() || copies.back().rows() != copies.front().rows()) {
                throw ConfigError(path + ": copies must be square with the same size");
            }
            if (!is_unitary(copies.back(), 1e-8)) {
                throw ConfigError(path + ": copy is not unitary to 1e-8");
            }
        }
        const FockState input = resolve_input(a.input, std::nullopt, copies.front().rows());
        const RepeatabilityReport rep = run_repeatability(copies, input);
        out = {{"mode", "exact"}, {"copies", rep.copies}, {"input", input.to_string()},
               {"witness", rep.witness}};
    } else {
        if (a.target.empty()) {
            throw ConfigError("repeat needs --copies or --target");
        }
        const ComplexMatrix target = read_matrix_file(a.target);
        if (!target.is_square() || !is_unitary(target, 1e-8)) {
            throw ConfigError(a.target + ": target is not unitary to 1e-8");
        }
        const FockState input = resolve_input(a.input, std::nullopt, target.rows());
        const RepeatabilityReport rep =
            run_repeatability(target, a.nu, a.num_copies, input, a.runs, a.seed);
        out = {{"mode", "noise"},   {"copies", rep.copies},   {"input", input.to_string()},
               {"nu", a.nu},        {"runs", a.runs},         {"seed", a.seed},
               {"witness", rep.witness}, {"ci95_low", rep.ci_low}, {"ci95_high", rep.ci_high}};
    }
    emit(out, a.out);
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string panel = "all";
    std::string config;
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    std::optional<std::string> nu;
    std::optional<std::string> big_n;
    std::optional<std::string> nu_sweep;
    std::optional<std::size_t> n_fixed;
    std::optional<std::size_t> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> target;
    std::optional<std::string> input;
    std::optional<std::string> da_metric;
    std::optional<std::size_t> workers;
    bool fresh_target = false;
    std::string out = ".";
};

std::string csv_of(const std::vector<RunRecord>& records, bool summary) {
    std::ostringstream s;
    if (summary) {
        write_summary_csv(s, records);
    } else {
        write_panel_csv(s, records);
    }
    return s.str();
}

void run_simulate(const SimulateArgs& a) {
    const std::string& panel = a.panel;
    if (panel != "a" && panel != "b" && panel != "c" && panel != "d" && panel != "all") {
        throw ConfigError("--panel must be one of a, b, c, d, all");
    }

    ExperimentConfig base;
    std::vector<double> nu_sweep{0.0, 0.005, 0.01, 0.02, 0.05};
    std::size_t n_fixed = 4;
    if (!a.config.empty()) {
        Json j = read_json_file(a.config);
        if (j.is_object() && j.contains("nu_sweep")) {
            const Json& v = j["nu_sweep"];
            nu_sweep = v.is_string() ? parse_real_list(v.get<std::string>()) : v.get<std::vector<double>>();
            j.erase("nu_sweep");
        }
        if (j.is_object() && j.contains("N_fixed")) {
            n_fixed = j["N_fixed"].get<std::size_t>();
            j.erase("N_fixed");
        }
        base = config_from_json(j, base);
    }
    if (a.m) base.m = *a.m;
    if (a.n) base.n = *a.n;
    if (a.nu) base.nu_values = parse_real_list(*a.nu);
    if (a.big_n) base.N_values = parse_count_list(*a.big_n);
    if (a.nu_sweep) nu_sweep = parse_real_list(*a.nu_sweep);
    if (a.n_fixed) n_fixed = *a.n_fixed;
    if (a.runs) base.runs = *a.runs;
    if (a.seed) base.master_seed = *a.seed;
    if (a.target) base.target = TargetSpec::parse(*a.target);
    if (a.input) {
        try {
            base.input_state = FockState::parse(*a.input);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    if (a.da_metric) base.da_metric = parse_da_metric(*a.da_metric);
    if (a.workers) base.workers = *a.workers;
    if (a.fresh_target) base.fresh_target_per_run = true;

    const bool want_ac = panel == "a" || panel == "c" || panel == "all";
    const bool want_bd = panel == "b" || panel == "d" || panel == "all";
    ExperimentConfig cfg_ac = base;
    ExperimentConfig cfg_bd = base;
    cfg_bd.nu_values = nu_sweep;
    cfg_bd.N_values = {n_fixed};
    // Everything is validated before any simulation starts.
    if (want_ac) {
        validate(cfg_ac);
        if (cfg_ac.nu_values.size() != 1) {
            throw ConfigError("panels a and c take a single --nu");
        }
    }
    if (want_bd) {
        validate(cfg_bd);
    }

    std::filesystem::create_directories(a.out);
    const auto path = [&](const std::string& name) { return (std::filesystem::path(a.out) / name).string(); };

    Json meta = {{"tool", "uasim"},
                 {"version", "0.1.0"},
                 {"target_mode", base.fresh_target_per_run ? "fresh-per-run" : "fixed"},
                 {"da_metric", to_string(base.da_metric)},
                 {"copy_streams", "keyed by (seed, run, copy index); shared across N and nu"},
                 {"panels", Json::array()}};
    const ComplexMatrix target0 = resolve_target(base, 0);
    meta["depth"] = noisy_depth(target0);
    if (!base.fresh_target_per_run) {
        write_text_file(path("target.json"), matrix_to_json(target0).dump(2) + "\n");
    }

    if (want_ac) {
        const auto records = run_panel_a_c(cfg_ac);
        const std::string raw = csv_of(records, false);
        const std::string summary = csv_of(records, true);
        for (const char* p : {"a", "c"}) {
            if (panel == "all" || panel == p) {
                write_text_file(path(std::string("panel_") + p + ".csv"), raw);
                write_text_file(path(std::string("summary_") + p + ".csv"), summary);
                meta["panels"].push_back(p);
            }
        }
        meta["config_a_c"] = config_to_json(cfg_ac);
    }
    if (want_bd) {
        const auto records = run_panel_b_d(cfg_bd);
        const std::string raw = csv_of(records, false);
        const std::string summary = csv_of(records, true);
        for (const char* p : {"b", "d"}) {
            if (panel == "all" || panel == p) {
                write_text_file(path(std::string("panel_") + p + ".csv"), raw);
                write_text_file(path(std::string("summary_") + p + ".csv"), summary);
                meta["panels"].push_back(p);
            }
        }
        meta["config_b_d"] = config_to_json(cfg_bd);
    }
    write_text_file(path("metadata.json"), meta.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unitary averaging simulator for noisy linear-optical interferometers"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* dec_cmd = app.add_subcommand("decompose", "Rectangular mesh of a unitary matrix (JSON)");
    dec_cmd->add_option("matrix", dec.matrix, "Matrix JSON file")->required();
    dec_cmd->add_flag("--pad", dec.pad, "Pad to uniform depth");
    dec_cmd->add_option("--out", dec.out, "Output file (default stdout)");

    BoundArgs bnd;
    auto* bnd_cmd = app.add_subcommand("bound", "Exact TVD and distance bounds for two transforms");
    bnd_cmd->add_option("a", bnd.a, "First matrix JSON")->required();
    bnd_cmd->add_option("b", bnd.b, "Second matrix JSON")->required();
    bnd_cmd->add_option("--n", bnd.n, "Photon count (single photons in the first n modes)");
    bnd_cmd->add_option("--input", bnd.input, "Input occupations, e.g. 1,1,0");

    GridArgs grd;
    auto* grd_cmd = app.add_subcommand("grid", "Closed-form success probability over (d, n)");
    grd_cmd->add_option("--nu", grd.nu, "Parameter variance")->capture_default_str();
    grd_cmd->add_option("--d", grd.d, "Depth values, e.g. 1..20")->capture_default_str();
    grd_cmd->add_option("--n", grd.n, "Photon counts, e.g. 1..20")->capture_default_str();
    grd_cmd->add_option("--out", grd.out, "CSV output (default stdout)");

    LcuArgs lcu;
    auto* lcu_cmd = app.add_subcommand("lcu", "Four-unitary decomposition and heralded network");
    lcu_cmd->add_option("--target", lcu.target, "Matrix JSON with operator norm <= 1")->required();
    lcu_cmd->add_option("--input", lcu.input, "Input occupations");
    lcu_cmd->add_option("--n", lcu.n, "Photon count");
    lcu_cmd->add_option("--out", lcu.out, "Output file (default stdout)");

    RepeatArgs rep;
    auto* rep_cmd = app.add_subcommand("repeat", "Repeatability witness of interferometer copies");
    rep_cmd->add_option("--copies", rep.copies, "Matrix JSON files, one per copy");
    rep_cmd->add_option("--input", rep.input, "Input occupations");
    rep_cmd->add_option("--target", rep.target, "Generate noisy copies of this matrix instead");
    rep_cmd->add_option("--nu", rep.nu, "Noise variance for generated copies")->capture_default_str();
    rep_cmd->add_option("--num-copies", rep.num_copies, "Copies per run")->capture_default_str();
    rep_cmd->add_option("--runs", rep.runs, "Noise runs")->capture_default_str();
    rep_cmd->add_option("--seed", rep.seed, "Master seed")->capture_default_str();
    rep_cmd->add_option("--out", rep.out, "Output file (default stdout)");
    rep_cmd->callback([&] {
        if (!rep.copies.empty() && !rep.target.empty()) {
            throw CLI::ValidationError("--copies and --target are exclusive");
        }
    });

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo comparison of unitary and distribution averaging");
    sim_cmd->add_option("--panel", sim.panel, "a, b, c, d or all")->capture_default_str();
    sim_cmd->add_option("--config", sim.config, "JSON config; flags override it");
    sim_cmd->add_option("--m", sim.m, "Mode count");
    sim_cmd->add_option("--n", sim.n, "Photon count");
    sim_cmd->add_option("--nu", sim.nu, "Variance for panels a and c");
    sim_cmd->add_option("--N", sim.big_n, "Copy counts for panels a and c, e.g. 1..8");
    sim_cmd->add_option("--nu-sweep", sim.nu_sweep, "Variances for panels b and d");
    sim_cmd->add_option("--N-fixed", sim.n_fixed, "Copy count for panels b and d");
    sim_cmd->add_option("--runs", sim.runs, "Monte Carlo runs");
    sim_cmd->add_option("--seed", sim.seed, "Master seed");
    sim_cmd->add_option("--target", sim.target, "haar, identity or file:<path>");
    sim_cmd->add_option("--input", sim.input, "Input occupations");
    sim_cmd->add_option("--da-metric", sim.da_metric, "mean-tvd or tvd-of-mean");
    sim_cmd->add_option("--workers", sim.workers, "Worker threads (0 = all cores)");
    sim_cmd->add_flag("--fresh-target-per-run", sim.fresh_target, "Draw a new Haar target per run");
    sim_cmd->add_option("--out", sim.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*dec_cmd) run_decompose(dec);
        if (*bnd_cmd) run_bound(bnd);
        if (*grd_cmd) run_grid(grd);
        if (*lcu_cmd) run_lcu(lcu);
        if (*rep_cmd) run_repeat(rep);
        if (*sim_cmd) run_simulate(sim);
    } catch (const NumericalError& e) {
        std::cerr << "uasim: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "uasim: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Json::exception& e) {
        std::cerr << "uasim: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "uasim: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
