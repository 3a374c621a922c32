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

#include "uasim/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uasim/errors.hpp"

namespace uasim {

namespace {

constexpr double kNetworkUnitaryTol = 1e-10;
constexpr double kAlphaTol = 1e-12;
constexpr double kCopyUnitaryTol = 1e-8;
constexpr double kCompletionSkip = 1e-8;
constexpr double kDropHermitian = 1e-12;

void require_same_dims(std::span<const ComplexMatrix> copies, const char* who) {
    if (copies.empty()) {
        throw DomainError(std::string(who) + ": need at least one copy");
    }
    const auto& first = copies.front();
    if (!first.is_square()) {
        throw DimensionError(std::string(who) + ": copies must be square");
    }
    for (const auto& c : copies) {
        if (c.rows() != first.rows() || c.cols() != first.cols()) {
            throw DimensionError(std::string(who) + ": copies have different dimensions");
        }
    }
}

std::vector<Complex> first_row_products(const ComplexMatrix& e, const ComplexMatrix& d) {
    std::vector<Complex> alpha(e.cols());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        alpha[k] = e(0, k) * d(0, k);
    }
    return alpha;
}

// Unitary whose first row is `row` (unit norm), remaining rows from
// Gram-Schmidt on e_0, e_1, ... in order.
ComplexMatrix complete_to_unitary(const std::vector<Complex>& row) {
    const std::size_t n = row.size();
    std::vector<std::vector<Complex>> rows{row};
    for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
        std::vector<Complex> r(n, Complex{});
        r[j] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : rows) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    proj += std::conj(q[i]) * r[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    r[i] -= proj * q[i];
                }
            }
        }
        double norm = 0.0;
        for (const auto& z : r) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        if (norm < kCompletionSkip) {
            continue;
        }
        for (auto& z : r) {
            z /= norm;
        }
        rows.push_back(std::move(r));
    }
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            out(i, k) = rows[i][k];
        }
    }
    return out;
}

} // namespace

AveragingNetwork AveragingNetwork::uniform(std::vector<ComplexMatrix> copies) {
    const std::size_t n = copies.size();
    if (n == 0) {
        throw DomainError("AveragingNetwork::uniform: need at least one copy");
    }
    // dft(n) is symmetric, so its adjoint is its entrywise conjugate.
    return with_encoders(std::move(copies), dft(n), dagger(dft(n)));
}

AveragingNetwork AveragingNetwork::with_encoders(std::vector<ComplexMatrix> copies,
                                                 ComplexMatrix encoder, ComplexMatrix decoder) {
    AveragingNetwork net;
    net.copies = std::move(copies);
    net.encoder = std::move(encoder);
    net.decoder = std::move(decoder);
    if (net.encoder.is_square() && net.decoder.is_square() &&
        net.encoder.rows() == net.decoder.rows() && !net.encoder.empty()) {
        net.alpha = first_row_products(net.encoder, net.decoder);
    }
    validate(net);
    return net;
}

void validate(const AveragingNetwork& net) {
    require_same_dims(net.copies, "AveragingNetwork");
    const std::size_t n = net.copies.size();
    if (net.encoder.rows() != n || net.encoder.cols() != n || net.decoder.rows() != n ||
        net.decoder.cols() != n) {
        throw DimensionError("AveragingNetwork: encoder and decoder must be " + std::to_string(n) +
                             "x" + std::to_string(n));
    }
    if (!is_unitary(net.encoder, kNetworkUnitaryTol) || !is_unitary(net.decoder, kNetworkUnitaryTol)) {
        throw DomainError("AveragingNetwork: encoder and decoder must be unitary to 1e-10");
    }
    for (const auto& c : net.copies) {
        if (!is_unitary(c, kCopyUnitaryTol)) {
            throw DomainError("AveragingNetwork: every copy must be unitary to 1e-8");
        }
    }
    if (net.alpha.size() != n) {
        throw DimensionError("AveragingNetwork: expected " + std::to_string(n) + " coefficients");
    }
    const auto expected = first_row_products(net.encoder, net.decoder);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(expected[k] - net.alpha[k]) > kAlphaTol) {
            throw DomainError("AveragingNetwork: alpha[" + std::to_string(k) +
                              "] disagrees with E(0,k) D(0,k)");
        }
    }
}

ComplexMatrix unitary_average(std::span<const ComplexMatrix> copies) {
    require_same_dims(copies, "unitary_average");
    ComplexMatrix sum = copies.front();
    for (std::size_t i = 1; i < copies.size(); ++i) {
        sum += copies[i];
    }
    return (1.0 / static_cast<double>(copies.size())) * sum;
}

ComplexMatrix effective_transform(const AveragingNetwork& net) {
    validate(net);
    ComplexMatrix out(net.modes(), net.modes());
    for (std::size_t k = 0; k < net.size(); ++k) {
        out += net.alpha[k] * net.copies[k];
    }
    return out;
}

ComplexMatrix build_global_unitary(const AveragingNetwork& net) {
    validate(net);
    const ComplexMatrix id = ComplexMatrix::identity(net.modes());
    const ComplexMatrix encode = kron(transpose(net.encoder), id);
    const ComplexMatrix decode = kron(net.decoder, id);
    return matmul(decode, matmul(direct_sum(net.copies), encode));
}

UaResult ua_distribution(std::span<const ComplexMatrix> copies, const FockState& input) {
    require_same_dims(copies, "ua_distribution");
    for (const auto& c : copies) {
        if (!is_unitary(c, kCopyUnitaryTol)) {
            throw DomainError("ua_distribution: every copy must be unitary to 1e-8");
        }
    }
    Distribution dist = heralded_distribution(unitary_average(copies), input);
    const double p = dist.herald_probability;
    return {std::move(dist), p};
}

Distribution distribution_average(std::span<const Distribution> dists) {
    if (dists.empty()) {
        throw DomainError("distribution_average: need at least one distribution");
    }
    Distribution out{dists.front().basis, std::vector<double>(dists.front().probs.size(), 0.0), 1.0};
    for (const auto& d : dists) {
        if (!(d.basis == out.basis) || d.probs.size() != out.probs.size()) {
            throw DimensionError("distribution_average: distributions live on different bases");
        }
        if (d.herald_probability != 1.0) {
            throw DomainError("distribution_average: inputs must be unheralded");
        }
    }
    const double weight = 1.0 / static_cast<double>(dists.size());
    std::vector<double> column(dists.size());
    for (std::size_t x = 0; x < out.probs.size(); ++x) {
        for (std::size_t i = 0; i < dists.size(); ++i) {
            column[i] = dists[i].probs[x];
        }
        out.probs[x] = weight * pairwise_sum(column);
    }
    return out;
}

LcuEncoders lcu_encoders(std::span<const Complex> alpha) {
    if (alpha.empty()) {
        throw DomainError("lcu_encoders: need at least one coefficient");
    }
    double l1 = 0.0;
    for (const auto& a : alpha) {
        l1 += std::abs(a);
    }
    if (!(l1 > 0.0)) {
        throw DomainError("lcu_encoders: all coefficients are zero");
    }
    std::vector<Complex> e_row(alpha.size());
    std::vector<Complex> d_row(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        const double r = std::sqrt(std::abs(alpha[k]) / l1);
        e_row[k] = std::polar(r, std::arg(alpha[k]));
        d_row[k] = r;
    }
    return {complete_to_unitary(e_row), complete_to_unitary(d_row), l1};
}

LCUSpec decompose_into_unitaries(const ComplexMatrix& m_target) {
    if (!m_target.is_square() || m_target.empty()) {
        throw DimensionError("decompose_into_unitaries: expected a non-empty square matrix");
    }
    if (!(operator_norm(m_target) <= 1.0 + 1e-9)) {
        throw DomainError("decompose_into_unitaries: operator norm exceeds 1");
    }
    if (is_unitary(m_target, 1e-10)) {
        return {{m_target}, {Complex(1.0, 0.0)}, 1.0};
    }

    const ComplexMatrix adj = dagger(m_target);
    const ComplexMatrix h_re = 0.5 * (m_target + adj);
    const ComplexMatrix h_im = Complex(0.0, -0.5) * (m_target - adj);

    LCUSpec out;
    out.scale = 0.0;
    auto add_hermitian_part = [&](const ComplexMatrix& h, Complex coefficient) {
        if (operator_norm(h) < kDropHermitian) {
            return;
        }
        // Round-off can leave h an ulp away from Hermitian.
        const ComplexMatrix sym = 0.5 * (h + dagger(h));
        const auto eig = eig_hermitian(sym);
        const std::size_t n = sym.rows();
        std::vector<Complex> plus(n);
        std::vector<Complex> minus(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double lambda = std::clamp(eig.values[i], -1.0, 1.0);
            const double root = std::sqrt(1.0 - lambda * lambda);
            plus[i] = Complex(lambda, root);
            minus[i] = Complex(lambda, -root);
        }
        const ComplexMatrix w_adj = dagger(eig.vectors);
        out.unitaries.push_back(matmul(eig.vectors, matmul(ComplexMatrix::diagonal(plus), w_adj)));
        out.unitaries.push_back(matmul(eig.vectors, matmul(ComplexMatrix::diagonal(minus), w_adj)));
        out.coefficients.push_back(coefficient);
        out.coefficients.push_back(coefficient);
        out.scale += 2.0 * std::abs(coefficient);
    };
    add_hermitian_part(h_re, Complex(0.5, 0.0));
    add_hermitian_part(h_im, Complex(0.0, 0.5));

    if (out.unitaries.empty()) {
        // only the zero matrix gets here
        throw DomainError("decompose_into_unitaries: target is numerically zero");
    }
    return out;
}

AveragingNetwork network_from_lcu(const LCUSpec& spec) {
    if (spec.unitaries.size() != spec.coefficients.size() || spec.unitaries.empty()) {
        throw DimensionError("network_from_lcu: unitaries and coefficients differ in length");
    }
    const LcuEncoders enc = lcu_encoders(spec.coefficients);
    return AveragingNetwork::with_encoders(spec.unitaries, enc.encoder, enc.decoder);
}

AveragingNetwork lcu_network(const ComplexMatrix& m_target) {
    return network_from_lcu(decompose_into_unitaries(m_target));
}

double herald_probability(const ComplexMatrix& a, const FockState& input) {
    if (!a.is_square() || a.rows() != input.modes()) {
        throw DimensionError("herald_probability: transform and input disagree on mode count");
    }
    const auto amps = output_amplitudes(a, input, enumerate_basis(a.rows(), input.photons()));
    std::vector<double> w(amps.size());
    std::transform(amps.begin(), amps.end(), w.begin(), [](Complex z) { return std::norm(z); });
    return pairwise_sum(w);
}

double repeatability_witness(std::span<const ComplexMatrix> copies, const FockState& input) {
    require_same_dims(copies, "repeatability_witness");
    for (const auto& c : copies) {
        if (!is_unitary(c, kCopyUnitaryTol)) {
            throw DomainError("repeatability_witness: every copy must be unitary to 1e-8");
        }
    }
    const double p_post = herald_probability(unitary_average(copies), input);
    return std::clamp(1.0 - p_post, 0.0, 1.0);
}

} // namespace uasim
