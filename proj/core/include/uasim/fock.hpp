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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uasim/complex_matrix.hpp"

namespace uasim {

/// Photon occupation numbers (x_1, ..., x_m).
struct FockState {
    std::vector<std::size_t> occupations;

    std::size_t modes() const noexcept { return occupations.size(); }
    std::size_t photons() const noexcept;

    /// "(x1,x2,...,xm)"
    std::string to_string() const;

    /// Parses "1,0,1" or "(1,0,1)". Throws DomainError on malformed text.
    static FockState parse(std::string_view text);

    /// n single photons in the first n of m modes.
    static FockState single_photons(std::size_t m, std::size_t n);

    friend bool operator==(const FockState&, const FockState&) = default;
    friend auto operator<=>(const FockState&, const FockState&) = default;
};

/**
 * All occupation vectors of n photons over m modes, in lexicographically
 * descending order: for (m, n) = (2, 2) that is (2,0), (1,1), (0,2).
 * Every distribution in the library is indexed by this order.
 */
class FockBasis {
public:
    FockBasis() = default;
    FockBasis(std::size_t m, std::size_t n, std::vector<FockState> states);

    std::size_t modes() const noexcept { return m_; }
    std::size_t photons() const noexcept { return n_; }
    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<FockState>& states() const noexcept { return states_; }
    const FockState& operator[](std::size_t i) const noexcept { return states_[i]; }

    std::optional<std::size_t> index_of(const FockState& state) const;

    friend bool operator==(const FockBasis& a, const FockBasis& b) {
        return a.m_ == b.m_ && a.n_ == b.n_;
    }

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<FockState> states_;
};

/// Throws DomainError for m == 0.
FockBasis enumerate_basis(std::size_t m, std::size_t n);

/// C(m + n - 1, n).
std::size_t basis_size(std::size_t m, std::size_t n);

/// k! as a double, exact for k <= 20.
double factorial(std::size_t k);

/// Sum over permutations; O(n! n). Square input with at most 9 rows.
Complex permanent_naive(const ComplexMatrix& a);

/// Ryser's formula with Gray-code ordered subsets; O(n 2^n).
Complex permanent_ryser(const ComplexMatrix& a);

/// n x n matrix repeating column j of `a` input_j times and row i output_i
/// times. Throws DimensionError if the photon numbers or sizes disagree.
ComplexMatrix build_submatrix(const ComplexMatrix& a, const FockState& input, const FockState& output);

/// <output| phi(a) |input> = Perm(a_{output,input}) / sqrt(prod input! prod output!)
Complex transition_amplitude(const ComplexMatrix& a, const FockState& input, const FockState& output);

/// The column phi(a)|input> over `basis` (which must match the photon count).
std::vector<Complex> output_amplitudes(const ComplexMatrix& a, const FockState& input,
                                       const FockBasis& basis);

/// n-photon lift of an m x m transform, indexed by enumerate_basis(m, n).
/// Entry (y, x) is transition_amplitude(a, x, y).
ComplexMatrix phi_matrix(const ComplexMatrix& a, std::size_t n);

} // namespace uasim
