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
#include <span>
#include <vector>

#include "uasim/complex_matrix.hpp"
#include "uasim/fock.hpp"

/**
 * Output distributions of linear-optical transforms and the distance bounds
 * between them.
 *
 * Everything here is exact: distributions are computed over the full
 * C(m+n-1, n) outcome space, one Ryser permanent per outcome, so building
 * one costs O(C(m+n-1, n) n 2^n). The bounds only need two operator norms
 * plus the heralding probabilities. Those probabilities are computed here
 * from the same full sum; a coarse-grained O(log(n) n^3 2^n) route for them
 * exists but is not needed at the sizes this library targets.
 */
namespace uasim {

/**
 * Normalised output distribution over a Fock basis.
 *
 * herald_probability is the total weight before normalisation: 1 for a
 * unitary, and the success probability p of a vacuum-heralded transform.
 */
struct Distribution {
    FockBasis basis;
    std::vector<double> probs;
    double herald_probability = 1.0;
};

/// Sum in a fixed binary tree so results do not depend on evaluation order.
double pairwise_sum(std::span<const double> values);

/// |Perm(U_x)|^2 / prod x_i! for every outcome x. u must be unitary to 1e-8.
Distribution ideal_distribution(const ComplexMatrix& u, const FockState& input);

/**
 * Distribution after applying a sub-unitary transform and post-selecting on
 * vacuum in the discarded modes. Throws DomainError if ||a||_op > 1 + 1e-9,
 * NumericalError("zero heralding probability") if the success probability
 * is below 1e-300.
 */
Distribution heralded_distribution(const ComplexMatrix& a, const FockState& input);

/// Half the l1 distance. Throws DimensionError on a basis mismatch.
double tvd(const Distribution& d1, const Distribution& d2);

/// n * ||u - v||_op. Both arguments must be unitary to 1e-8.
double arkhipov_bound(const ComplexMatrix& u, const ComplexMatrix& v, std::size_t n);

struct Theorem1Bound {
    double value = 0.0;
    /// max(||A'||, ||B'||, 1) with A' = a p_a^{-1/2n}, B' = b p_b^{-1/2n}
    double k = 1.0;
    /// False when a or b is numerically singular (|det| <= 1e-12): the
    /// inequality is only guaranteed for invertible transforms.
    bool hypothesis_met = true;
};

/**
 * TVD bound for two vacuum-heralded transforms:
 *
 *     ||D_A - D_B|| <= n k^{n-1} || a p_a^{-1/2n} - b p_b^{-1/2n} ||_op
 *
 * k is floored at 1; any smaller admissible k would tighten the bound.
 * Throws DomainError for p <= 0 or ||a||, ||b|| > 1 + 1e-9.
 */
Theorem1Bound theorem1_bound(const ComplexMatrix& a, double p_a, const ComplexMatrix& b,
                             double p_b, std::size_t n);

/// (1 - nu/2)^{2 d n}. Requires 0 <= nu < 2.
double p_uni(double nu, std::size_t d, std::size_t n);

} // namespace uasim
