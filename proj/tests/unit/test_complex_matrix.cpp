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
#include <numbers>

#include "oracles.hpp"
#include "uasim/complex_matrix.hpp"
#include "uasim/errors.hpp"
#include "uasim/random_stream.hpp"

using namespace uasim;

namespace {

const Complex I1(0.0, 1.0);

ComplexMatrix random_hermitian(std::size_t n, RandomStream& rng) {
    const ComplexMatrix g = ginibre(n, n, rng);
    return 0.5 * (g + dagger(g));
}

} // namespace

TEST(ComplexMatrix, ConstructionChecksLength) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
    const ComplexMatrix a(2, 3);
    EXPECT_EQ(a.rows(), 2u);
    EXPECT_EQ(a.cols(), 3u);
    EXPECT_EQ(a(1, 2), Complex(0.0));
    EXPECT_THROW((void)a.at(2, 0), DimensionError);
}

TEST(ComplexMatrix, MatmulIdentity) {
    EXPECT_EQ(matmul(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(2));
}

TEST(ComplexMatrix, MatmulSwapIsInvolution) {
    const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    EXPECT_EQ(matmul(x, x), ComplexMatrix::identity(2));
}

TEST(ComplexMatrix, MatmulMatchesTripleLoop) {
    RandomStream rng(11);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = ginibre(3, 3, rng);
        const ComplexMatrix b = ginibre(3, 3, rng);
        EXPECT_LT(max_abs(matmul(a, b) - oracle::triple_loop_matmul(a, b)), 1e-12);
    }
    const ComplexMatrix r = ginibre(2, 4, rng);
    const ComplexMatrix s = ginibre(4, 3, rng);
    EXPECT_LT(max_abs(matmul(r, s) - oracle::triple_loop_matmul(r, s)), 1e-12);
}

TEST(ComplexMatrix, MatmulRejectsMismatch) {
    EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionError);
}

TEST(ComplexMatrix, MatmulAssociative) {
    RandomStream rng(12);
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix a = ginibre(4, 4, rng);
        const ComplexMatrix b = ginibre(4, 4, rng);
        const ComplexMatrix c = ginibre(4, 4, rng);
        EXPECT_LT(max_abs(matmul(matmul(a, b), c) - matmul(a, matmul(b, c))), 1e-10);
    }
}

TEST(ComplexMatrix, Dagger) {
    EXPECT_EQ(dagger(ComplexMatrix::identity(2)), ComplexMatrix::identity(2));
    EXPECT_EQ(dagger(ComplexMatrix{{I1}}), ComplexMatrix{{-I1}});
    RandomStream rng(13);
    const ComplexMatrix a = ginibre(3, 5, rng);
    EXPECT_EQ(dagger(dagger(a)), a);
    EXPECT_EQ(dagger(a), oracle::loop_dagger(a));
}

TEST(ComplexMatrix, OperatorNormOfUnitaryIsOne) {
    RandomStream rng(14);
    for (std::size_t m = 1; m <= 8; ++m) {
        EXPECT_NEAR(operator_norm(haar_random(m, rng)), 1.0, 1e-10);
    }
}

TEST(ComplexMatrix, OperatorNormDiagonal) {
    const std::vector<Complex> d{0.5, 0.3};
    EXPECT_NEAR(operator_norm(ComplexMatrix::diagonal(d)), 0.5, 1e-12);
}

TEST(ComplexMatrix, OperatorNormMatchesPowerIteration) {
    RandomStream rng(15);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = ginibre(4, 4, rng);
        EXPECT_NEAR(operator_norm(a), oracle::power_iteration_norm(a), 1e-8);
    }
}

TEST(ComplexMatrix, OperatorNormUnitaryInvariance) {
    RandomStream rng(16);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix u = haar_random(4, rng);
        const ComplexMatrix v = haar_random(4, rng);
        const ComplexMatrix a = ginibre(4, 4, rng);
        EXPECT_NEAR(operator_norm(matmul(u, matmul(a, v))), operator_norm(a), 1e-9);
    }
}

TEST(ComplexMatrix, EigHermitianIdentityAndPauliX) {
    const auto id = eig_hermitian(ComplexMatrix::identity(3));
    ASSERT_EQ(id.values.size(), 3u);
    for (double v : id.values) {
        EXPECT_NEAR(v, 1.0, 1e-14);
    }
    const auto x = eig_hermitian(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    EXPECT_NEAR(x.values[0], -1.0, 1e-14);
    EXPECT_NEAR(x.values[1], 1.0, 1e-14);
}

TEST(ComplexMatrix, EigHermitianReconstruction) {
    RandomStream rng(17);
    for (std::size_t n : {1u, 2u, 5u, 9u, 16u}) {
        const ComplexMatrix h = random_hermitian(n, rng);
        const auto e = eig_hermitian(h);
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
        EXPECT_LT(unitarity_defect(e.vectors), 1e-9);
        const ComplexMatrix rebuilt =
            matmul(e.vectors, matmul(ComplexMatrix::diagonal(std::vector<Complex>(e.values.begin(), e.values.end())),
                                     dagger(e.vectors)));
        EXPECT_LT(operator_norm(rebuilt - h), 1e-9) << "n=" << n;
    }
}

TEST(ComplexMatrix, EigHermitianRejectsNonHermitian) {
    EXPECT_THROW(eig_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), DomainError);
}

TEST(ComplexMatrix, DftSmallCases) {
    EXPECT_EQ(dft(1), ComplexMatrix{{1.0}});
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_LT(max_abs(dft(2) - ComplexMatrix{{r, r}, {r, -r}}), 1e-15);
    EXPECT_LT(max_abs(matmul(dagger(dft(4)), dft(4)) - ComplexMatrix::identity(4)), 1e-12);
    EXPECT_THROW(dft(0), DomainError);
}

TEST(ComplexMatrix, DftEntries) {
    const ComplexMatrix f = dft(5);
    for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t k = 0; k < 5; ++k) {
            const Complex expected = std::polar(1.0 / std::sqrt(5.0), 2.0 * std::numbers::pi * double(j * k) / 5.0);
            EXPECT_LT(std::abs(f(j, k) - expected), 1e-14);
        }
    }
}

TEST(ComplexMatrix, HaarIsUnitaryUpToSixteenModes) {
    RandomStream rng(18);
    for (std::size_t m = 1; m <= 16; ++m) {
        EXPECT_LT(unitarity_defect(haar_random(m, rng)), 1e-12) << "m=" << m;
    }
}

TEST(ComplexMatrix, HaarIsDeterministicPerSeed) {
    RandomStream a(99);
    RandomStream b(99);
    EXPECT_EQ(haar_random(4, a), haar_random(4, b));
}

TEST(ComplexMatrix, HaarFirstMomentOfU00) {
    // E|U_00|^2 = 1/m for Haar measure.
    RandomStream rng(19);
    constexpr int kSamples = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < kSamples; ++s) {
        const double v = std::norm(haar_random(2, rng)(0, 0));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / kSamples;
    const double se = std::sqrt((sum_sq / kSamples - mean * mean) / (kSamples - 1));
    EXPECT_LT(std::abs(mean - 0.5), 3.0 * se);
}

TEST(ComplexMatrix, HaarPhaseOfU00IsUniform) {
    RandomStream rng(20);
    constexpr int kSamples = 10000;
    Complex sum = 0.0;
    for (int s = 0; s < kSamples; ++s) {
        const Complex z = haar_random(2, rng)(0, 0);
        sum += z / std::abs(z);
    }
    // each term has unit modulus, so the mean has standard error <= 1/sqrt(N)
    EXPECT_LT(std::abs(sum) / kSamples, 3.0 / std::sqrt(double(kSamples)));
}

TEST(ComplexMatrix, SubMatrixRepetition) {
    const Complex a(1, 0), b(2, 0), c(3, 0), d(4, 0);
    const ComplexMatrix m{{a, b}, {c, d}};
    const std::vector<std::size_t> r00{0, 0}, c01{0, 1}, r1{1}, c0{0};
    EXPECT_EQ(sub_matrix(m, r00, c01), (ComplexMatrix{{a, b}, {a, b}}));
    EXPECT_EQ(sub_matrix(m, c01, c01), m);
    EXPECT_EQ(sub_matrix(m, r1, c0), ComplexMatrix{{c}});
    const std::vector<std::size_t> bad{2};
    EXPECT_THROW(sub_matrix(m, bad, c0), DimensionError);
}

TEST(ComplexMatrix, DirectSum) {
    const std::vector<ComplexMatrix> ids{ComplexMatrix::identity(2), ComplexMatrix::identity(3)};
    EXPECT_EQ(direct_sum(ids), ComplexMatrix::identity(5));
    RandomStream rng(21);
    const std::vector<ComplexMatrix> one{ginibre(3, 3, rng)};
    EXPECT_EQ(direct_sum(one), one.front());
    const std::vector<ComplexMatrix> scalars{ComplexMatrix{{2.0}}, ComplexMatrix{{3.0}}};
    const std::vector<Complex> diag{2.0, 3.0};
    EXPECT_EQ(direct_sum(scalars), ComplexMatrix::diagonal(diag));
}

TEST(ComplexMatrix, KronAndDeterminant) {
    const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    const ComplexMatrix k = kron(x, ComplexMatrix::identity(2));
    EXPECT_EQ(k(0, 2), Complex(1.0));
    EXPECT_EQ(k(2, 0), Complex(1.0));
    EXPECT_EQ(k(0, 0), Complex(0.0));
    EXPECT_NEAR(std::abs(determinant(x) - Complex(-1.0)), 0.0, 1e-15);
    const std::vector<Complex> diag{2.0, I1, 0.5};
    EXPECT_LT(std::abs(determinant(ComplexMatrix::diagonal(diag)) - I1), 1e-15);
}
