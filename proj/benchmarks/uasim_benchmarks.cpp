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

#include <benchmark/benchmark.h>

#include <vector>

#include "uasim/averaging.hpp"
#include "uasim/experiments.hpp"
#include "uasim/fock.hpp"
#include "uasim/mesh.hpp"
#include "uasim/random_stream.hpp"
#include "uasim/sampling.hpp"

namespace {

using namespace uasim;

ComplexMatrix random_square(std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed);
    return ginibre(n, n, rng);
}

void BM_PermanentRyser(benchmark::State& state) {
    const ComplexMatrix a = random_square(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_ryser(a));
    }
}
BENCHMARK(BM_PermanentRyser)->DenseRange(4, 14, 2);

void BM_PermanentNaive(benchmark::State& state) {
    const ComplexMatrix a = random_square(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_naive(a));
    }
}
BENCHMARK(BM_PermanentNaive)->DenseRange(4, 8, 2);

void BM_Phi(benchmark::State& state) {
    RandomStream rng(3);
    const ComplexMatrix u = haar_random(static_cast<std::size_t>(state.range(0)), rng);
    const auto n = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_matrix(u, n));
    }
}
BENCHMARK(BM_Phi)->Args({2, 2})->Args({3, 3})->Args({4, 3})->Args({5, 4});

void BM_HeraldedDistribution(benchmark::State& state) {
    RandomStream rng(4);
    const auto m = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = 0.5 * (haar_random(m, rng) + haar_random(m, rng));
    const FockState input = FockState::single_photons(m, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(heralded_distribution(a, input));
    }
}
BENCHMARK(BM_HeraldedDistribution)->Args({2, 2})->Args({4, 3})->Args({6, 4})->Args({8, 5});

void BM_ClementsDecompose(benchmark::State& state) {
    RandomStream rng(5);
    const ComplexMatrix u = haar_random(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(clements_decompose(u));
    }
}
BENCHMARK(BM_ClementsDecompose)->RangeMultiplier(2)->Range(2, 16);

void BM_NoisySample(benchmark::State& state) {
    RandomStream rng(6);
    const ComplexMatrix u = haar_random(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_noisy_unitary(u, {0.01}, rng));
    }
}
BENCHMARK(BM_NoisySample)->RangeMultiplier(2)->Range(2, 16);

void BM_PanelA(benchmark::State& state) {
    ExperimentConfig c;
    c.runs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_panel_a_c(c));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PanelA)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
