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

#include "uasim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <ostream>
#include <thread>
#include <utility>

#include "uasim/averaging.hpp"
#include "uasim/errors.hpp"
#include "uasim/json_io.hpp"
#include "uasim/mesh.hpp"
#include "uasim/random_stream.hpp"
#include "uasim/sampling.hpp"

namespace uasim {

namespace {

// Stream key namespaces under the master seed.
constexpr std::uint64_t kTargetKey = 0x7461726765740000ULL;
constexpr std::uint64_t kCopyKey = 0x636f707900000000ULL;
constexpr std::uint64_t kBootstrapKey = 0x626f6f7400000000ULL;

constexpr std::size_t kMaxPhotons = 12;
constexpr std::size_t kBootstrapResamples = 2000;

struct PreparedTarget {
    ComplexMatrix unitary;
    MeshSpec padded;
    Distribution ideal;
};

PreparedTarget prepare(const ComplexMatrix& target, const FockState& input) {
    PreparedTarget out{target, uniform_depth_pad(clements_decompose(target)), {}};
    out.ideal = ideal_distribution(target, input);
    return out;
}

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::size_t parse_count(const std::string& token, std::string_view whole) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ConfigError("bad count '" + token + "' in '" + std::string(whole) + "'");
    }
    return value;
}

// Runs fn(run) for run in [0, runs) on `workers` threads. Each run writes only
// its own slot, so results never depend on scheduling. The exception of the
// lowest failing run is rethrown.
void for_each_run(std::size_t runs, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, runs);
    std::vector<std::exception_ptr> errors(runs);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t r = next.fetch_add(1); r < runs; r = next.fetch_add(1)) {
            try {
                fn(r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(body);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

// Records for one run, indexed [nu_index * N_values.size() + N_index].
std::vector<RunRecord> simulate_run(const ExperimentConfig& config, const PreparedTarget& target,
                                    std::size_t run) {
    const FockState input = config.input();
    const std::size_t n = input.photons();
    const std::size_t max_n = *std::max_element(config.N_values.begin(), config.N_values.end());
    std::vector<RunRecord> out;
    out.reserve(config.nu_values.size() * config.N_values.size());

    for (double nu : config.nu_values) {
        std::vector<ComplexMatrix> copies;
        std::vector<Distribution> dists;
        std::vector<double> tvd_single;
        std::vector<double> arkhipov;
        copies.reserve(max_n);
        for (std::size_t i = 0; i < max_n; ++i) {
            RandomStream rng = RandomStream::derive(config.master_seed, {kCopyKey, run, i});
            copies.push_back(mesh_to_unitary(perturb(target.padded, NoiseModel{nu}, rng)));
            dists.push_back(ideal_distribution(copies.back(), input));
            tvd_single.push_back(tvd(target.ideal, dists.back()));
            arkhipov.push_back(arkhipov_bound(target.unitary, copies.back(), n));
        }

        for (std::size_t big_n : config.N_values) {
            const std::span<const ComplexMatrix> used(copies.data(), big_n);
            const ComplexMatrix u_avg = unitary_average(used);
            const Distribution ua = heralded_distribution(u_avg, input);
            const Theorem1Bound bound =
                theorem1_bound(target.unitary, 1.0, u_avg, ua.herald_probability, n);

            RunRecord rec;
            rec.run = run;
            rec.N = big_n;
            rec.nu = nu;
            rec.tvd_ua = tvd(target.ideal, ua);
            rec.tvd_da_mean = summarize(std::span(tvd_single.data(), big_n)).mean;
            rec.tvd_da_of_mean =
                tvd(target.ideal, distribution_average(std::span(dists.data(), big_n)));
            rec.tvd_da = config.da_metric == DaMetric::mean_tvd ? rec.tvd_da_mean : rec.tvd_da_of_mean;
            rec.bound_ua = bound.value;
            rec.bound_da = summarize(std::span(arkhipov.data(), big_n)).mean;
            rec.p_post = ua.herald_probability;
            rec.p_uni = p_uni(nu, target.padded.depth, n);
            rec.invertible = bound.hypothesis_met;
            out.push_back(rec);
        }
    }
    return out;
}

std::vector<std::vector<RunRecord>> simulate_all(const ExperimentConfig& config) {
    validate(config);
    const FockState input = config.input();
    std::optional<PreparedTarget> fixed;
    if (!config.fresh_target_per_run) {
        fixed = prepare(resolve_target(config, 0), input);
    }
    std::vector<std::vector<RunRecord>> per_run(config.runs);
    for_each_run(config.runs, config.workers, [&](std::size_t run) {
        if (fixed) {
            per_run[run] = simulate_run(config, *fixed, run);
        } else {
            per_run[run] = simulate_run(config, prepare(resolve_target(config, run), input), run);
        }
    });
    return per_run;
}

} // namespace

TargetSpec TargetSpec::parse(std::string_view text) {
    if (text == "haar") {
        return {TargetKind::haar, {}};
    }
    if (text == "identity") {
        return {TargetKind::identity, {}};
    }
    if (text.starts_with("file:") && text.size() > 5) {
        return {TargetKind::file, std::string(text.substr(5))};
    }
    throw ConfigError("unknown target '" + std::string(text) + "' (haar, identity, file:<path>)");
}

std::string TargetSpec::to_string() const {
    switch (kind) {
    case TargetKind::haar:
        return "haar";
    case TargetKind::identity:
        return "identity";
    case TargetKind::file:
        return "file:" + path;
    }
    return "haar";
}

DaMetric parse_da_metric(std::string_view text) {
    if (text == "mean-tvd") {
        return DaMetric::mean_tvd;
    }
    if (text == "tvd-of-mean") {
        return DaMetric::tvd_of_mean;
    }
    throw ConfigError("unknown DA metric '" + std::string(text) + "' (mean-tvd, tvd-of-mean)");
}

std::string to_string(DaMetric metric) {
    return metric == DaMetric::mean_tvd ? "mean-tvd" : "tvd-of-mean";
}

FockState ExperimentConfig::input() const {
    return input_state ? *input_state : FockState::single_photons(m, n);
}

void validate(const ExperimentConfig& config) {
    if (config.m == 0) {
        throw ConfigError("m must be at least 1");
    }
    if (config.input_state) {
        if (config.input_state->modes() != config.m) {
            throw ConfigError("input state " + config.input_state->to_string() + " does not have " +
                              std::to_string(config.m) + " modes");
        }
        if (config.input_state->photons() != config.n) {
            throw ConfigError("input state " + config.input_state->to_string() + " does not carry " +
                              std::to_string(config.n) + " photons");
        }
    } else if (config.n > config.m) {
        throw ConfigError("default input needs n <= m; pass an explicit input state");
    }
    if (config.n > kMaxPhotons) {
        throw ConfigError("at most " + std::to_string(kMaxPhotons) + " photons are supported");
    }
    if (config.runs == 0) {
        throw ConfigError("runs must be at least 1");
    }
    if (config.nu_values.empty()) {
        throw ConfigError("need at least one nu value");
    }
    for (double nu : config.nu_values) {
        if (!(nu >= 0.0 && nu < 2.0)) {
            throw ConfigError("nu must lie in [0, 2), got " + format_real(nu));
        }
    }
    if (config.N_values.empty()) {
        throw ConfigError("need at least one N value");
    }
    for (std::size_t big_n : config.N_values) {
        if (big_n == 0) {
            throw ConfigError("N must be at least 1");
        }
    }
    if (config.target.kind == TargetKind::file && config.target.path.empty()) {
        throw ConfigError("file target needs a path");
    }
}

ComplexMatrix resolve_target(const ExperimentConfig& config, std::size_t run) {
    switch (config.target.kind) {
    case TargetKind::identity:
        return ComplexMatrix::identity(config.m);
    case TargetKind::file: {
        ComplexMatrix u = read_matrix_file(config.target.path);
        if (u.rows() != config.m || u.cols() != config.m) {
            throw ConfigError("target " + config.target.path + " is not " + std::to_string(config.m) +
                              "x" + std::to_string(config.m));
        }
        if (!is_unitary(u, 1e-8)) {
            throw ConfigError("target " + config.target.path + " is not unitary to 1e-8");
        }
        return u;
    }
    case TargetKind::haar:
        break;
    }
    RandomStream rng = config.fresh_target_per_run
                           ? RandomStream::derive(config.master_seed, {kTargetKey, run})
                           : RandomStream::derive(config.master_seed, {kTargetKey});
    return haar_random(config.m, rng);
}

std::size_t noisy_depth(const ComplexMatrix& target) {
    return uniform_depth_pad(clements_decompose(target)).depth;
}

std::vector<RunRecord> run_panel_a_c(const ExperimentConfig& config) {
    if (config.nu_values.size() != 1) {
        throw ConfigError("the N sweep takes exactly one nu value");
    }
    const auto per_run = simulate_all(config);
    std::vector<RunRecord> out;
    out.reserve(config.runs * config.N_values.size());
    for (std::size_t k = 0; k < config.N_values.size(); ++k) {
        for (const auto& recs : per_run) {
            out.push_back(recs[k]);
        }
    }
    return out;
}

std::vector<RunRecord> run_panel_b_d(const ExperimentConfig& config) {
    if (config.N_values.size() != 1) {
        throw ConfigError("the nu sweep takes exactly one N value");
    }
    const auto per_run = simulate_all(config);
    std::vector<RunRecord> out;
    out.reserve(config.runs * config.nu_values.size());
    for (std::size_t k = 0; k < config.nu_values.size(); ++k) {
        for (const auto& recs : per_run) {
            out.push_back(recs[k]);
        }
    }
    return out;
}

std::vector<GridCell> run_fig3_grid(double nu, std::span<const std::size_t> d_values,
                                    std::span<const std::size_t> n_values) {
    std::vector<GridCell> out;
    out.reserve(d_values.size() * n_values.size());
    for (std::size_t d : d_values) {
        for (std::size_t n : n_values) {
            out.push_back({d, n, p_uni(nu, d, n)});
        }
    }
    return out;
}

RepeatabilityReport run_repeatability(std::span<const ComplexMatrix> copies, const FockState& input) {
    if (copies.size() < 2) {
        throw ConfigError("the witness needs at least two copies");
    }
    RepeatabilityReport out;
    out.copies = copies.size();
    out.witness = repeatability_witness(copies, input);
    out.per_run = {out.witness};
    out.ci_low = out.ci_high = out.witness;
    return out;
}

RepeatabilityReport run_repeatability(const ComplexMatrix& target, double nu, std::size_t copies,
                                      const FockState& input, std::size_t runs,
                                      std::uint64_t seed) {
    if (copies < 2) {
        throw ConfigError("the witness needs at least two copies");
    }
    if (runs == 0) {
        throw ConfigError("runs must be at least 1");
    }
    if (!(nu >= 0.0)) {
        throw ConfigError("nu must be non-negative");
    }
    const MeshSpec padded = uniform_depth_pad(clements_decompose(target));
    RepeatabilityReport out;
    out.copies = copies;
    out.per_run.resize(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        std::vector<ComplexMatrix> us;
        for (std::size_t i = 0; i < copies; ++i) {
            RandomStream rng = RandomStream::derive(seed, {kCopyKey, r, i});
            us.push_back(mesh_to_unitary(perturb(padded, NoiseModel{nu}, rng)));
        }
        out.per_run[r] = repeatability_witness(us, input);
    }
    out.witness = summarize(out.per_run).mean;

    RandomStream rng = RandomStream::derive(seed, {kBootstrapKey});
    std::vector<double> means(kBootstrapResamples);
    std::vector<double> sample(runs);
    for (auto& mean : means) {
        for (auto& s : sample) {
            s = out.per_run[static_cast<std::size_t>(rng.uniform() * static_cast<double>(runs))];
        }
        mean = summarize(sample).mean;
    }
    std::sort(means.begin(), means.end());
    out.ci_low = means[static_cast<std::size_t>(0.025 * kBootstrapResamples)];
    out.ci_high = means[static_cast<std::size_t>(0.975 * kBootstrapResamples) - 1];
    return out;
}

std::vector<ComplexMatrix> theta_offset_pair(const ComplexMatrix& target, double offset) {
    MeshSpec spec = clements_decompose(target);
    for (auto& layer : spec.layers) {
        if (!layer.couplers.empty()) {
            layer.couplers.front().theta += offset;
            return {target, mesh_to_unitary(spec)};
        }
    }
    throw DomainError("theta_offset_pair: target mesh has no couplers");
}

SampleStats summarize(std::span<const double> values) {
    SampleStats out;
    out.count = values.size();
    if (values.empty()) {
        return out;
    }
    out.mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() < 2) {
        return out;
    }
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(),
                   [&](double v) { return (v - out.mean) * (v - out.mean); });
    const double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(values.size()));
    return out;
}

SampleStats paired_difference(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("paired_difference: samples differ in length");
    }
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff[i] = a[i] - b[i];
    }
    return summarize(diff);
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_count(part, text));
            continue;
        }
        const std::size_t lo = parse_count(trim(part.substr(0, dots)), text);
        const std::size_t hi = parse_count(trim(part.substr(dots + 2)), text);
        if (hi < lo) {
            throw ConfigError("empty range '" + part + "'");
        }
        for (std::size_t v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
            throw ConfigError("bad number '" + part + "' in '" + std::string(text) + "'");
        }
        out.push_back(value);
    }
    return out;
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_panel_csv(std::ostream& out, std::span<const RunRecord> records) {
    out << "run,N,nu,tvd_ua,tvd_da,bound_ua,bound_da,p_post,p_uni,invertible_flag\n";
    for (const auto& r : records) {
        out << r.run << ',' << r.N << ',' << format_real(r.nu) << ',' << format_real(r.tvd_ua) << ','
            << format_real(r.tvd_da) << ',' << format_real(r.bound_ua) << ','
            << format_real(r.bound_da) << ',' << format_real(r.p_post) << ','
            << format_real(r.p_uni) << ',' << (r.invertible ? 1 : 0) << '\n';
    }
}

void write_summary_csv(std::ostream& out, std::span<const RunRecord> records) {
    std::vector<std::pair<std::size_t, double>> keys;
    std::map<std::pair<std::size_t, double>, std::vector<const RunRecord*>> groups;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.N, r.nu);
        auto& group = groups[key];
        if (group.empty()) {
            keys.push_back(key);
        }
        group.push_back(&r);
    }

    out << "N,nu,runs,tvd_ua_mean,tvd_ua_se,tvd_da_mean,tvd_da_se,bound_ua_mean,bound_ua_se,"
           "bound_da_mean,bound_da_se,p_post_mean,p_post_se,p_uni\n";
    std::vector<double> column;
    auto stats = [&](const std::vector<const RunRecord*>& group, double RunRecord::*field) {
        column.clear();
        for (const auto* r : group) {
            column.push_back(r->*field);
        }
        const SampleStats s = summarize(column);
        return format_real(s.mean) + ',' + format_real(s.se);
    };
    for (const auto& key : keys) {
        const auto& group = groups[key];
        out << key.first << ',' << format_real(key.second) << ',' << group.size() << ','
            << stats(group, &RunRecord::tvd_ua) << ',' << stats(group, &RunRecord::tvd_da) << ','
            << stats(group, &RunRecord::bound_ua) << ',' << stats(group, &RunRecord::bound_da) << ','
            << stats(group, &RunRecord::p_post) << ',' << format_real(group.front()->p_uni) << '\n';
    }
}

void write_grid_csv(std::ostream& out, std::span<const GridCell> grid) {
    out << "d,n,p_uni\n";
    for (const auto& c : grid) {
        out << c.d << ',' << c.n << ',' << format_real(c.p_uni) << '\n';
    }
}

} // namespace uasim
