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

#include "uasim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uasim/errors.hpp"

namespace uasim {

namespace {

constexpr double kUnitaryTol = 1e-8;
constexpr double kNormSlack = 1e-9;
constexpr double kMinHerald = 1e-300;
constexpr double kSingularDet = 1e-12;

void require_unitary(const ComplexMatrix& u, const char* who) {
    if (!is_unitary(u, kUnitaryTol)) {
        throw DomainError(std::string(who) + ": matrix is not unitary to 1e-8");
    }
}

void require_contraction(const ComplexMatrix& a, const char* who) {
    if (!a.is_square() || a.empty()) {
        throw DimensionError(std::string(who) + ": expected a non-empty square matrix");
    }
    const double norm = operator_norm(a);
    if (!(norm <= 1.0 + kNormSlack)) {
        throw DomainError(std::string(who) + ": operator norm " + std::to_string(norm) +
                          " exceeds 1");
    }
}

std::vector<double> output_weights(const ComplexMatrix& a, const FockState& input,
                                   const FockBasis& basis) {
    const auto amps = output_amplitudes(a, input, basis);
    std::vector<double> w(amps.size());
    std::transform(amps.begin(), amps.end(), w.begin(), [](Complex z) { return std::norm(z); });
    return w;
}

} // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Distribution ideal_distribution(const ComplexMatrix& u, const FockState& input) {
    require_unitary(u, "ideal_distribution (use heralded_distribution for non-unitary input)");
    Distribution out{enumerate_basis(u.rows(), input.photons()), {}, 1.0};
    out.probs = output_weights(u, input, out.basis);
    return out;
}

Distribution heralded_distribution(const ComplexMatrix& a, const FockState& input) {
    require_contraction(a, "heralded_distribution");
    Distribution out{enumerate_basis(a.rows(), input.photons()), {}, 1.0};
    out.probs = output_weights(a, input, out.basis);
    const double p = pairwise_sum(out.probs);
    if (!(p >= kMinHerald)) {
        throw NumericalError("zero heralding probability");
    }
    for (auto& v : out.probs) {
        v /= p;
    }
    out.herald_probability = std::min(p, 1.0);
    return out;
}

double tvd(const Distribution& d1, const Distribution& d2) {
    if (!(d1.basis == d2.basis) || d1.probs.size() != d2.probs.size()) {
        throw DimensionError("tvd: distributions live on different bases");
    }
    std::vector<double> diff(d1.probs.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = std::abs(d1.probs[i] - d2.probs[i]);
    }
    return std::clamp(0.5 * pairwise_sum(diff), 0.0, 1.0);
}

double arkhipov_bound(const ComplexMatrix& u, const ComplexMatrix& v, std::size_t n) {
    require_unitary(u, "arkhipov_bound");
    require_unitary(v, "arkhipov_bound");
    return static_cast<double>(n) * operator_norm(u - v);
}

Theorem1Bound theorem1_bound(const ComplexMatrix& a, double p_a, const ComplexMatrix& b,
                             double p_b, std::size_t n) {
    if (!(p_a > 0.0) || !(p_b > 0.0)) {
        throw DomainError("theorem1_bound: heralding probabilities must be positive");
    }
    require_contraction(a, "theorem1_bound");
    require_contraction(b, "theorem1_bound");
    if (a.rows() != b.rows()) {
        throw DimensionError("theorem1_bound: transforms act on different mode counts");
    }

    Theorem1Bound out;
    out.hypothesis_met =
        std::abs(determinant(a)) > kSingularDet && std::abs(determinant(b)) > kSingularDet;
    if (n == 0) {
        out.value = 0.0;
        return out;
    }
    const double exponent = -1.0 / (2.0 * static_cast<double>(n));
    const ComplexMatrix a_scaled = std::pow(p_a, exponent) * a;
    const ComplexMatrix b_scaled = std::pow(p_b, exponent) * b;
    out.k = std::max({operator_norm(a_scaled), operator_norm(b_scaled), 1.0});
    out.value = static_cast<double>(n) * std::pow(out.k, static_cast<double>(n - 1)) *
                operator_norm(a_scaled - b_scaled);
    return out;
}

double p_uni(double nu, std::size_t d, std::size_t n) {
    if (!(nu >= 0.0 && nu < 2.0)) {
        throw DomainError("p_uni: nu must lie in [0, 2)");
    }
    return std::pow(1.0 - nu / 2.0, 2.0 * static_cast<double>(d) * static_cast<double>(n));
}

} // namespace uasim
