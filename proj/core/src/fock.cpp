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

#include "uasim/fock.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

#include "uasim/errors.hpp"

namespace uasim {

namespace {

constexpr std::size_t kMaxFactorial = 20;
constexpr std::size_t kMaxNaiveRows = 9;
constexpr std::size_t kMaxRyserRows = 30;

constexpr std::array<double, kMaxFactorial + 1> make_factorials() {
    std::array<double, kMaxFactorial + 1> out{};
    out[0] = 1.0;
    for (std::size_t k = 1; k <= kMaxFactorial; ++k) {
        out[k] = out[k - 1] * static_cast<double>(k);
    }
    return out;
}

constexpr auto kFactorials = make_factorials();

void enumerate_into(std::size_t mode, std::size_t remaining, std::vector<std::size_t>& current,
                    std::vector<FockState>& out) {
    if (mode + 1 == current.size()) {
        current[mode] = remaining;
        out.push_back(FockState{current});
        return;
    }
    for (std::size_t k = remaining + 1; k-- > 0;) {
        current[mode] = k;
        enumerate_into(mode + 1, remaining - k, current, out);
    }
}

void require_square(const ComplexMatrix& a, const char* who) {
    if (!a.is_square()) {
        throw DimensionError(std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
}

double occupation_factorials(const FockState& s) {
    double out = 1.0;
    for (std::size_t x : s.occupations) {
        out *= factorial(x);
    }
    return out;
}

} // namespace

std::size_t FockState::photons() const noexcept {
    return std::accumulate(occupations.begin(), occupations.end(), std::size_t{0});
}

std::string FockState::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < occupations.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(occupations[i]);
    }
    out += ')';
    return out;
}

FockState FockState::parse(std::string_view text) {
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') {
            throw DomainError("FockState::parse: unbalanced parentheses in '" + std::string(text) + "'");
        }
        text = text.substr(1, text.size() - 2);
    }
    FockState out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw DomainError("FockState::parse: bad occupation '" + std::string(token) + "'");
        }
        out.occupations.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
        if (text.empty()) {
            throw DomainError("FockState::parse: trailing comma");
        }
    }
    if (out.occupations.empty()) {
        throw DomainError("FockState::parse: empty state");
    }
    return out;
}

FockState FockState::single_photons(std::size_t m, std::size_t n) {
    if (n > m) {
        throw DomainError("FockState::single_photons: " + std::to_string(n) + " photons in " +
                          std::to_string(m) + " modes");
    }
    FockState out{std::vector<std::size_t>(m, 0)};
    std::fill_n(out.occupations.begin(), n, std::size_t{1});
    return out;
}

FockBasis::FockBasis(std::size_t m, std::size_t n, std::vector<FockState> states)
    : m_(m), n_(n), states_(std::move(states)) {}

std::optional<std::size_t> FockBasis::index_of(const FockState& state) const {
    // states_ is sorted descending
    const auto it = std::lower_bound(states_.begin(), states_.end(), state, std::greater<>{});
    if (it == states_.end() || *it != state) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states_.begin());
}

FockBasis enumerate_basis(std::size_t m, std::size_t n) {
    if (m == 0) {
        throw DomainError("enumerate_basis: need at least one mode");
    }
    std::vector<FockState> states;
    states.reserve(basis_size(m, n));
    std::vector<std::size_t> current(m, 0);
    enumerate_into(0, n, current, states);
    return FockBasis(m, n, std::move(states));
}

std::size_t basis_size(std::size_t m, std::size_t n) {
    if (m == 0) {
        return 0;
    }
    // C(m + n - 1, n), multiplicative form stays exact in integers
    std::size_t out = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        out = out * (m - 1 + k) / k;
    }
    return out;
}

double factorial(std::size_t k) {
    if (k > kMaxFactorial) {
        throw DomainError("factorial: " + std::to_string(k) + "! exceeds the precomputed table");
    }
    return kFactorials[k];
}

Complex permanent_naive(const ComplexMatrix& a) {
    require_square(a, "permanent_naive");
    const std::size_t n = a.rows();
    if (n > kMaxNaiveRows) {
        throw DomainError("permanent_naive: limited to " + std::to_string(kMaxNaiveRows) + " rows");
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            term *= a(i, perm[i]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Complex permanent_ryser(const ComplexMatrix& a) {
    require_square(a, "permanent_ryser");
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1.0;
    }
    if (n > kMaxRyserRows) {
        throw DomainError("permanent_ryser: limited to " + std::to_string(kMaxRyserRows) + " rows");
    }
    // perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij,
    // visiting subsets S in Gray-code order so each step flips one column.
    std::vector<Complex> row_sums(n, Complex{});
    Complex total = 0.0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << j;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) {
                row_sums[i] += a(i, static_cast<std::size_t>(j));
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                row_sums[i] -= a(i, static_cast<std::size_t>(j));
            }
        }
        Complex prod = row_sums[0];
        for (std::size_t i = 1; i < n; ++i) {
            prod *= row_sums[i];
        }
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return n % 2 == 1 ? -total : total;
}

ComplexMatrix build_submatrix(const ComplexMatrix& a, const FockState& input, const FockState& output) {
    if (!a.is_square() || a.rows() != input.modes() || a.rows() != output.modes()) {
        throw DimensionError("build_submatrix: matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " but states have " +
                             std::to_string(input.modes()) + " and " +
                             std::to_string(output.modes()) + " modes");
    }
    if (input.photons() != output.photons()) {
        throw DimensionError("build_submatrix: photon number mismatch " + input.to_string() +
                             " -> " + output.to_string());
    }
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < output.modes(); ++i) {
        rows.insert(rows.end(), output.occupations[i], i);
    }
    for (std::size_t j = 0; j < input.modes(); ++j) {
        cols.insert(cols.end(), input.occupations[j], j);
    }
    return sub_matrix(a, rows, cols);
}

Complex transition_amplitude(const ComplexMatrix& a, const FockState& input, const FockState& output) {
    const ComplexMatrix sub = build_submatrix(a, input, output);
    const double norm = std::sqrt(occupation_factorials(input) * occupation_factorials(output));
    return permanent_ryser(sub) / norm;
}

std::vector<Complex> output_amplitudes(const ComplexMatrix& a, const FockState& input,
                                       const FockBasis& basis) {
    if (basis.photons() != input.photons() || basis.modes() != input.modes()) {
        throw DimensionError("output_amplitudes: input " + input.to_string() +
                             " does not match the basis");
    }
    std::vector<Complex> out(basis.size());
    for (std::size_t y = 0; y < basis.size(); ++y) {
        out[y] = transition_amplitude(a, input, basis[y]);
    }
    return out;
}

ComplexMatrix phi_matrix(const ComplexMatrix& a, std::size_t n) {
    require_square(a, "phi_matrix");
    const FockBasis basis = enumerate_basis(a.rows(), n);
    ComplexMatrix out(basis.size(), basis.size());
    for (std::size_t x = 0; x < basis.size(); ++x) {
        for (std::size_t y = 0; y < basis.size(); ++y) {
            out(y, x) = transition_amplitude(a, basis[x], basis[y]);
        }
    }
    return out;
}

} // namespace uasim
