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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "uasim/averaging.hpp"
#include "uasim/errors.hpp"
#include "uasim/experiments.hpp"
#include "uasim/mesh.hpp"
#include "uasim/random_stream.hpp"
#include "uasim/sampling.hpp"

using namespace uasim;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.runs = 6;
    c.N_values = {1, 2, 4};
    c.nu_values = {0.02};
    c.master_seed = 5;
    return c;
}

std::string panel_text(const std::vector<RunRecord>& rows) {
    std::ostringstream out;
    write_panel_csv(out, rows);
    return out.str();
}

} // namespace

TEST(Experiments, ZeroNoiseGivesZeroDistances) {
    ExperimentConfig c = small_config();
    c.nu_values = {0.0};
    for (const auto& r : run_panel_a_c(c)) {
        EXPECT_LT(r.tvd_ua, 1e-12);
        EXPECT_LT(r.tvd_da, 1e-12);
        EXPECT_LT(r.bound_ua, 1e-10);
        EXPECT_LT(r.bound_da, 1e-10);
        EXPECT_NEAR(r.p_post, 1.0, 1e-12);
        EXPECT_EQ(r.p_uni, 1.0);
    }
}

TEST(Experiments, SingleCopyAveragingEqualsDirect) {
    const auto rows = run_panel_a_c(small_config());
    std::size_t checked = 0;
    for (const auto& r : rows) {
        if (r.N == 1) {
            EXPECT_NEAR(r.tvd_ua, r.tvd_da_mean, 1e-12);
            EXPECT_NEAR(r.tvd_ua, r.tvd_da_of_mean, 1e-12);
            EXPECT_NEAR(r.p_post, 1.0, 1e-12);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 6u);
}

TEST(Experiments, RowOrderAndShape) {
    const auto rows = run_panel_a_c(small_config());
    ASSERT_EQ(rows.size(), 18u);
    EXPECT_EQ(rows[0].N, 1u);
    EXPECT_EQ(rows[0].run, 0u);
    EXPECT_EQ(rows[5].run, 5u);
    EXPECT_EQ(rows[6].N, 2u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.nu, 0.02);
        EXPECT_EQ(r.tvd_da, r.tvd_da_mean);
        EXPECT_TRUE(r.invertible);
        EXPECT_GE(r.bound_ua + 1e-12, r.tvd_ua);
        EXPECT_GE(r.bound_da + 1e-12, r.tvd_da_mean);
    }
}

TEST(Experiments, MetricSelection) {
    ExperimentConfig c = small_config();
    c.da_metric = DaMetric::tvd_of_mean;
    for (const auto& r : run_panel_a_c(c)) {
        EXPECT_EQ(r.tvd_da, r.tvd_da_of_mean);
    }
}

TEST(Experiments, PanelBDOrdersByNoise) {
    ExperimentConfig c = small_config();
    c.N_values = {3};
    c.nu_values = {0.0, 0.01, 0.05};
    const auto rows = run_panel_b_d(c);
    ASSERT_EQ(rows.size(), 18u);
    EXPECT_EQ(rows[0].nu, 0.0);
    EXPECT_EQ(rows[6].nu, 0.01);
    EXPECT_EQ(rows[12].nu, 0.05);
    for (const auto& r : rows) {
        EXPECT_EQ(r.N, 3u);
    }
    ExperimentConfig two_n = c;
    two_n.N_values = {2, 3};
    EXPECT_THROW(run_panel_b_d(two_n), ConfigError);
    EXPECT_THROW(run_panel_a_c(c), ConfigError);
}

TEST(Experiments, CommonCopiesAcrossN) {
    // the same copies feed every N, so N = 1 rows agree across configurations
    ExperimentConfig a = small_config();
    ExperimentConfig b = small_config();
    b.N_values = {1};
    const auto ra = run_panel_a_c(a);
    const auto rb = run_panel_a_c(b);
    for (std::size_t i = 0; i < rb.size(); ++i) {
        EXPECT_EQ(ra[i].tvd_ua, rb[i].tvd_ua);
    }
}

TEST(Experiments, WorkerCountDoesNotChangeOutput) {
    ExperimentConfig c = small_config();
    c.workers = 1;
    const std::string one = panel_text(run_panel_a_c(c));
    c.workers = 3;
    EXPECT_EQ(panel_text(run_panel_a_c(c)), one);
    c.workers = 0;
    EXPECT_EQ(panel_text(run_panel_a_c(c)), one);
}

TEST(Experiments, SeedChangesOutput) {
    ExperimentConfig c = small_config();
    const std::string a = panel_text(run_panel_a_c(c));
    c.master_seed = 6;
    EXPECT_NE(panel_text(run_panel_a_c(c)), a);
}

TEST(Experiments, TargetResolution) {
    ExperimentConfig c = small_config();
    EXPECT_EQ(resolve_target(c, 0), resolve_target(c, 3));
    c.fresh_target_per_run = true;
    EXPECT_NE(resolve_target(c, 0), resolve_target(c, 3));
    c.target = TargetSpec::parse("identity");
    EXPECT_EQ(resolve_target(c, 2), ComplexMatrix::identity(2));
    c.target = TargetSpec::parse("file:/nonexistent/matrix.json");
    EXPECT_THROW(resolve_target(c, 0), ConfigError);
}

TEST(Experiments, NoisyDepth) {
    RandomStream rng(90);
    EXPECT_EQ(noisy_depth(haar_random(2, rng)), 3u);
    EXPECT_EQ(noisy_depth(haar_random(3, rng)), 7u);
    EXPECT_EQ(noisy_depth(haar_random(4, rng)), 9u);
}

TEST(Grid, ValuesAndMonotonicity) {
    const std::vector<std::size_t> ds{1, 10, 100};
    const std::vector<std::size_t> ns{1, 2, 3};
    const auto grid = run_fig3_grid(0.01, ds, ns);
    ASSERT_EQ(grid.size(), 9u);
    EXPECT_EQ(grid[0].d, 1u);
    EXPECT_EQ(grid[1].n, 2u);
    EXPECT_NEAR(grid[6].p_uni, 0.36695782172616738, 1e-15);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (j + 1 < 3) {
                EXPECT_GT(grid[3 * i + j].p_uni, grid[3 * i + j + 1].p_uni);
            }
            if (i + 1 < 3) {
                EXPECT_GT(grid[3 * i + j].p_uni, grid[3 * (i + 1) + j].p_uni);
            }
        }
    }
}

TEST(Repeatability, ThetaOffsetPair) {
    RandomStream rng(91);
    const ComplexMatrix target = haar_random(3, rng);
    const FockState input = FockState::single_photons(3, 2);
    EXPECT_LT(run_repeatability(theta_offset_pair(target, 0.0), input).witness, 1e-12);
    double previous = 0.0;
    for (double offset : {0.05, 0.1, 0.2}) {
        const auto report = run_repeatability(theta_offset_pair(target, offset), input);
        EXPECT_EQ(report.copies, 2u);
        EXPECT_GT(report.witness, previous);
        previous = report.witness;
    }
    const std::vector<ComplexMatrix> one{target};
    EXPECT_THROW(run_repeatability(one, input), ConfigError);
}

TEST(Repeatability, NoiseDriven) {
    RandomStream rng(92);
    const ComplexMatrix target = haar_random(2, rng);
    const FockState input = FockState::single_photons(2, 2);
    const auto quiet = run_repeatability(target, 0.0, 3, input, 10, 1);
    EXPECT_LT(quiet.witness, 1e-12);
    const auto noisy = run_repeatability(target, 0.05, 3, input, 50, 1);
    ASSERT_EQ(noisy.per_run.size(), 50u);
    EXPECT_GT(noisy.witness, 0.0);
    EXPECT_LE(noisy.ci_low, noisy.witness);
    EXPECT_GE(noisy.ci_high, noisy.witness);
    const auto again = run_repeatability(target, 0.05, 3, input, 50, 1);
    EXPECT_EQ(again.per_run, noisy.per_run);
}

TEST(Stats, SummarizeAndPairedDifference) {
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> b{0.5, 1.5, 2.5, 3.5};
    const SampleStats s = summarize(a);
    EXPECT_EQ(s.count, 4u);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    // sample sd sqrt(5/3), divided by 2
    EXPECT_NEAR(s.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    const SampleStats d = paired_difference(a, b);
    EXPECT_DOUBLE_EQ(d.mean, 0.5);
    EXPECT_NEAR(d.se, 0.0, 1e-15);
    EXPECT_EQ(summarize(std::vector<double>{7.0}).se, 0.0);
    EXPECT_THROW(paired_difference(a, std::vector<double>{1.0}), DimensionError);
}

TEST(Parsing, CountAndRealLists) {
    EXPECT_EQ(parse_count_list("1..4"), (std::vector<std::size_t>{1, 2, 3, 4}));
    EXPECT_EQ(parse_count_list("1,2,8"), (std::vector<std::size_t>{1, 2, 8}));
    EXPECT_EQ(parse_count_list("1..3,10"), (std::vector<std::size_t>{1, 2, 3, 10}));
    EXPECT_THROW(parse_count_list(""), ConfigError);
    EXPECT_THROW(parse_count_list("4..1"), ConfigError);
    EXPECT_THROW(parse_count_list("a"), ConfigError);
    EXPECT_EQ(parse_real_list("0,0.005,0.01"), (std::vector<double>{0.0, 0.005, 0.01}));
    EXPECT_THROW(parse_real_list("0.1,x"), ConfigError);
    EXPECT_EQ(TargetSpec::parse("haar").kind, TargetKind::haar);
    EXPECT_EQ(TargetSpec::parse("file:a.json").path, "a.json");
    EXPECT_EQ(TargetSpec::parse("file:a.json").to_string(), "file:a.json");
    EXPECT_THROW(TargetSpec::parse("random"), ConfigError);
    EXPECT_EQ(parse_da_metric("tvd-of-mean"), DaMetric::tvd_of_mean);
    EXPECT_EQ(to_string(DaMetric::mean_tvd), "mean-tvd");
    EXPECT_THROW(parse_da_metric("mean"), ConfigError);
}

TEST(Config, ValidationErrors) {
    EXPECT_NO_THROW(validate(ExperimentConfig{}));
    auto expect_bad = [](auto mutate) {
        ExperimentConfig c;
        mutate(c);
        EXPECT_THROW(validate(c), ConfigError);
    };
    expect_bad([](ExperimentConfig& c) { c.m = 0; });
    expect_bad([](ExperimentConfig& c) { c.n = 3; });
    expect_bad([](ExperimentConfig& c) { c.runs = 0; });
    expect_bad([](ExperimentConfig& c) { c.nu_values = {}; });
    expect_bad([](ExperimentConfig& c) { c.nu_values = {-0.1}; });
    expect_bad([](ExperimentConfig& c) { c.nu_values = {2.0}; });
    expect_bad([](ExperimentConfig& c) { c.N_values = {}; });
    expect_bad([](ExperimentConfig& c) { c.N_values = {0, 1}; });
    expect_bad([](ExperimentConfig& c) { c.input_state = FockState{{1, 1, 0}}; });
    expect_bad([](ExperimentConfig& c) { c.input_state = FockState{{2, 1}}; });
    expect_bad([](ExperimentConfig& c) { c.target = TargetSpec{TargetKind::file, ""}; });
    ExperimentConfig bunched;
    bunched.input_state = FockState{{2, 0}};
    EXPECT_NO_THROW(validate(bunched));
}

TEST(Csv, Headers) {
    std::ostringstream panel;
    write_panel_csv(panel, std::vector<RunRecord>{});
    EXPECT_EQ(panel.str(), "run,N,nu,tvd_ua,tvd_da,bound_ua,bound_da,p_post,p_uni,invertible_flag\n");
    std::ostringstream grid;
    const std::vector<GridCell> cells{{2, 1, 0.5}};
    write_grid_csv(grid, cells);
    EXPECT_EQ(grid.str(), "d,n,p_uni\n2,1,0.5\n");
    std::ostringstream summary;
    write_summary_csv(summary, run_panel_a_c(small_config()));
    const std::string text = summary.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "N,nu,runs,tvd_ua_mean,tvd_ua_se,tvd_da_mean,tvd_da_se,bound_ua_mean,bound_ua_se,"
              "bound_da_mean,bound_da_se,p_post_mean,p_post_se,p_uni");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}
