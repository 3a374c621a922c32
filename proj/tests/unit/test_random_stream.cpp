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

#include <cmath>
#include <set>

#include "uasim/random_stream.hpp"

using uasim::RandomStream;

TEST(RandomStream, SameSeedSameSequence) {
    RandomStream a(42);
    RandomStream b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next_u64(), b.next_u64());
    }
}

TEST(RandomStream, DifferentSeedsDiffer) {
    RandomStream a(1);
    RandomStream b(2);
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
        equal += a.next_u64() == b.next_u64() ? 1 : 0;
    }
    EXPECT_EQ(equal, 0);
}

TEST(RandomStream, DeriveIsDeterministicAndKeySensitive) {
    RandomStream a = RandomStream::derive(7, {1, 2, 3});
    RandomStream b = RandomStream::derive(7, {1, 2, 3});
    EXPECT_EQ(a.next_u64(), b.next_u64());
    std::set<std::uint64_t> firsts;
    firsts.insert(RandomStream::derive(7, {1, 2, 3}).next_u64());
    firsts.insert(RandomStream::derive(7, {1, 3, 2}).next_u64());
    firsts.insert(RandomStream::derive(7, {1, 2}).next_u64());
    firsts.insert(RandomStream::derive(8, {1, 2, 3}).next_u64());
    firsts.insert(RandomStream::derive(7, {}).next_u64());
    EXPECT_EQ(firsts.size(), 5u);
}

TEST(RandomStream, UniformInHalfOpenUnitInterval) {
    RandomStream r(3);
    double sum = 0.0;
    constexpr int kSamples = 100000;
    for (int i = 0; i < kSamples; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // variance 1/12
    EXPECT_LT(std::abs(sum / kSamples - 0.5), 4.0 * std::sqrt(1.0 / 12.0 / kSamples));
}

TEST(RandomStream, NormalMoments) {
    RandomStream r(4);
    constexpr int kSamples = 200000;
    double s1 = 0.0;
    double s2 = 0.0;
    double s4 = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double x = r.normal();
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    EXPECT_LT(std::abs(s1 / kSamples), 4.0 / std::sqrt(double(kSamples)));
    // Var(x^2) = 2, Var(x^4) = 96
    EXPECT_LT(std::abs(s2 / kSamples - 1.0), 4.0 * std::sqrt(2.0 / kSamples));
    EXPECT_LT(std::abs(s4 / kSamples - 3.0), 4.0 * std::sqrt(96.0 / kSamples));
}

TEST(Mix64, IsBijectiveOnSample) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        seen.insert(uasim::mix64(i));
    }
    EXPECT_EQ(seen.size(), 1000u);
}
