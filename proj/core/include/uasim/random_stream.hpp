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

#include <array>
#include <cstdint>
#include <initializer_list>

namespace uasim {

/**
 * Reproducible random stream.
 *
 * Engine: xoshiro256** (Blackman & Vigna) with its state expanded from a
 * 64-bit seed by SplitMix64. Uniform doubles take the top 53 bits; normal
 * variates use Box-Muller, so the sequence is identical on every platform
 * and standard library (std::normal_distribution is not).
 *
 * Streams are values: copy one to fork it, or derive independent child
 * streams from a seed and a key path with derive().
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    /// Stream keyed by (seed, keys...). Different key paths give
    /// statistically independent streams; the same path gives the same one.
    static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1).
    double uniform() noexcept;

    /// Standard normal N(0, 1).
    double normal() noexcept;

private:
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finaliser; also used to hash key paths.
std::uint64_t mix64(std::uint64_t x) noexcept;

} // namespace uasim
