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

#include <filesystem>
#include <fstream>

#include "uasim/errors.hpp"
#include "uasim/json_io.hpp"
#include "uasim/mesh.hpp"
#include "uasim/random_stream.hpp"

using namespace uasim;

TEST(JsonIo, MatrixRoundTripIsExact) {
    RandomStream rng(101);
    const ComplexMatrix u = haar_random(3, rng);
    const Json j = matrix_to_json(u);
    EXPECT_EQ(j["rows"], 3);
    EXPECT_EQ(j["data"].size(), 9u);
    EXPECT_EQ(matrix_from_json(j), u);
    EXPECT_EQ(matrix_from_json(Json::parse(j.dump())), u);
}

TEST(JsonIo, MatrixErrors) {
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")), ConfigError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")), ConfigError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[["a",0]]})")), ConfigError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"cols":1,"data":[[1,0]]})")), ConfigError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":-1,"cols":1,"data":[]})")), ConfigError);
    EXPECT_THROW(read_matrix_file("/nonexistent/m.json"), ConfigError);
}

TEST(JsonIo, MeshRoundTrip) {
    RandomStream rng(102);
    const MeshSpec spec = uniform_depth_pad(clements_decompose(haar_random(4, rng)));
    const MeshSpec back = mesh_from_json(Json::parse(mesh_to_json(spec).dump()));
    EXPECT_EQ(back, spec);
    const MeshSpec plain = clements_decompose(haar_random(3, rng));
    EXPECT_EQ(mesh_from_json(mesh_to_json(plain)), plain);
}

TEST(JsonIo, MeshErrors) {
    EXPECT_THROW(mesh_from_json(Json::parse(R"({"m":2,"layers":{},"output_phases":[0,0]})")), ConfigError);
    EXPECT_THROW(mesh_from_json(Json::parse(R"({"m":2,"layers":[[{"top":1,"theta":0,"phi":0}]],"output_phases":[0,0]})")),
                 ConfigError);
    EXPECT_THROW(
        mesh_from_json(Json::parse(R"({"m":2,"layers":[[{"mode":0,"phi":0,"stage":"late"}]],"output_phases":[0,0]})")),
        ConfigError);
}

TEST(JsonIo, ConfigRoundTrip) {
    ExperimentConfig c;
    c.m = 3;
    c.n = 2;
    c.nu_values = {0.0, 0.02};
    c.N_values = {1, 3};
    c.runs = 17;
    c.master_seed = 99;
    c.target = TargetSpec::parse("identity");
    c.fresh_target_per_run = true;
    c.da_metric = DaMetric::tvd_of_mean;
    const ExperimentConfig back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.m, 3u);
    EXPECT_EQ(back.nu_values, c.nu_values);
    EXPECT_EQ(back.N_values, c.N_values);
    EXPECT_EQ(back.runs, 17u);
    EXPECT_EQ(back.master_seed, 99u);
    EXPECT_EQ(back.target.kind, TargetKind::identity);
    EXPECT_TRUE(back.fresh_target_per_run);
    EXPECT_EQ(back.da_metric, DaMetric::tvd_of_mean);
    EXPECT_EQ(back.input(), FockState::single_photons(3, 2));
}

TEST(JsonIo, ConfigAcceptsListStrings) {
    const ExperimentConfig c = config_from_json(Json::parse(R"({"N":"1..3","nu":"0,0.01","input":"2,0"})"));
    EXPECT_EQ(c.N_values, (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(c.nu_values, (std::vector<double>{0.0, 0.01}));
    EXPECT_EQ(c.input(), (FockState{{2, 0}}));
}

TEST(JsonIo, ConfigErrors) {
    EXPECT_THROW(config_from_json(Json::parse(R"({"bogus":1})")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"([1,2])")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"({"runs":"many"})")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"({"target":3})")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"({"input":"1,x"})")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"({"da_metric":1})")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"({"fresh_target_per_run":1})")), ConfigError);
}

TEST(JsonIo, FileRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "uasim_json_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "m.json").string();
    const ComplexMatrix a{{1.0, Complex(0.0, 2.0)}, {0.5, -1.0}};
    write_text_file(path, matrix_to_json(a).dump());
    EXPECT_EQ(read_matrix_file(path), a);
    std::ofstream(path) << "{not json";
    EXPECT_THROW(read_json_file(path), ConfigError);
    std::filesystem::remove_all(dir);
}
