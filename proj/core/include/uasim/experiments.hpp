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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uasim/complex_matrix.hpp"
#include "uasim/fock.hpp"

namespace uasim {

enum class TargetKind { haar, identity, file };

struct TargetSpec {
    TargetKind kind = TargetKind::haar;
    /// Matrix JSON path, only for TargetKind::file.
    std::string path;

    /// "haar", "identity" or "file:<path>".
    static TargetSpec parse(std::string_view text);
    std::string to_string() const;
};

/**
 * What tvd_da measures.
 *
 * mean_tvd: (1/N) sum_i TVD(D_U, D_{U_i}), the expected distance of one
 * noisy sampler from the target. Does not shrink with N.
 *
 * tvd_of_mean: TVD(D_U, (1/N) sum_i D_{U_i}). Shrinks with N until it hits
 * the O(nu) bias of the mean distribution.
 */
enum class DaMetric { mean_tvd, tvd_of_mean };

DaMetric parse_da_metric(std::string_view text);
std::string to_string(DaMetric metric);

struct ExperimentConfig {
    std::size_t m = 2;
    std::size_t n = 2;
    std::vector<double> nu_values{0.01};
    std::vector<std::size_t> N_values{1, 2, 3, 4, 5, 6, 7, 8};
    std::size_t runs = 300;
    std::uint64_t master_seed = 1;
    TargetSpec target;
    /// Defaults to n single photons in the first n modes.
    std::optional<FockState> input_state;
    bool fresh_target_per_run = false;
    DaMetric da_metric = DaMetric::mean_tvd;
    /// Threads used for runs; 0 means hardware concurrency. Never affects output.
    std::size_t workers = 1;

    FockState input() const;
};

/// Throws ConfigError on the first violated invariant.
void validate(const ExperimentConfig& config);

struct RunRecord {
    std::size_t run = 0;
    std::size_t N = 0;
    double nu = 0.0;
    double tvd_ua = 0.0;
    /// Selected by ExperimentConfig::da_metric.
    double tvd_da = 0.0;
    double bound_ua = 0.0;
    double bound_da = 0.0;
    double p_post = 1.0;
    double p_uni = 1.0;
    bool invertible = true;
    /// Both DA metrics, whichever tvd_da reports.
    double tvd_da_mean = 0.0;
    double tvd_da_of_mean = 0.0;
};

/**
 * Monte Carlo sweep over N for a single nu. Rows are ordered (N, run).
 *
 * Run r draws copy i from the stream keyed (master_seed, r, i), so the
 * first N copies of a run are shared by every N' >= N and every nu. The
 * differences between neighbouring N are then paired and their standard
 * errors come from per-run differences.
 */
std::vector<RunRecord> run_panel_a_c(const ExperimentConfig& config);

/// Same sweep over nu for a single N. Rows are ordered (nu, run).
std::vector<RunRecord> run_panel_b_d(const ExperimentConfig& config);

/// Target interferometer for a run: fixed per master seed unless
/// fresh_target_per_run is set.
ComplexMatrix resolve_target(const ExperimentConfig& config, std::size_t run);

/// Uniform depth of the padded mesh used for every noisy copy of `target`.
std::size_t noisy_depth(const ComplexMatrix& target);

struct GridCell {
    std::size_t d = 0;
    std::size_t n = 0;
    double p_uni = 1.0;
};

/// p_uni(nu, d, n) over the product of the ranges, d-major.
std::vector<GridCell> run_fig3_grid(double nu, std::span<const std::size_t> d_values,
                                    std::span<const std::size_t> n_values);

struct RepeatabilityReport {
    std::size_t copies = 0;
    /// Exact witness for the given copies, or the mean over noise runs.
    double witness = 0.0;
    std::vector<double> per_run;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Exact witness for fixed copies. Needs at least two.
RepeatabilityReport run_repeatability(std::span<const ComplexMatrix> copies, const FockState& input);

/**
 * Witness for `copies` noisy realisations of `target`, once per run, with a
 * 95% percentile bootstrap interval on the mean (2000 resamples).
 */
RepeatabilityReport run_repeatability(const ComplexMatrix& target, double nu, std::size_t copies,
                                      const FockState& input, std::size_t runs,
                                      std::uint64_t seed);

/// The target and a second copy whose first coupler's theta is shifted.
std::vector<ComplexMatrix> theta_offset_pair(const ComplexMatrix& target, double offset);

struct SampleStats {
    std::size_t count = 0;
    double mean = 0.0;
    /// Standard error of the mean; 0 for fewer than two samples.
    double se = 0.0;
};

SampleStats summarize(std::span<const double> values);

/// Mean and standard error of a[i] - b[i].
SampleStats paired_difference(std::span<const double> a, std::span<const double> b);

/// "1..8", "1,2,4" or a mix like "1..3,8". Throws ConfigError.
std::vector<std::size_t> parse_count_list(std::string_view text);

/// Comma separated reals. Throws ConfigError.
std::vector<double> parse_real_list(std::string_view text);

/// Raw panel CSV: run,N,nu,tvd_ua,tvd_da,bound_ua,bound_da,p_post,p_uni,invertible_flag
void write_panel_csv(std::ostream& out, std::span<const RunRecord> records);

/// Mean and standard error per (N, nu) group, in first-seen order.
void write_summary_csv(std::ostream& out, std::span<const RunRecord> records);

/// d,n,p_uni
void write_grid_csv(std::ostream& out, std::span<const GridCell> grid);

/// %.17g
std::string format_real(double value);

} // namespace uasim
