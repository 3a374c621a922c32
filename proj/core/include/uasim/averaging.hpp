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
#include "uasim/sampling.hpp"

namespace uasim {

/**
 * N copies of an m-mode interferometer sandwiched between an N x N encoder
 * E and decoder D.
 *
 * Modes are ordered copy-major: global mode r*m + j is mode j of copy r, and
 * copy 0 carries the original inputs. The other (N-1)m modes start in vacuum
 * and are heralded on vacuum at the output, which applies
 *
 *     M_N = sum_k alpha_k U_k,   alpha_k = E(0, k) * D(0, k)
 *
 * to the original modes. Encoder F and decoder conj(F), F the N-point DFT,
 * give alpha_k = 1/N, the plain unitary average, and D E^T = I so identical
 * copies leave the ancilla modes untouched.
 */
struct AveragingNetwork {
    std::vector<ComplexMatrix> copies;
    ComplexMatrix encoder;
    ComplexMatrix decoder;
    std::vector<Complex> alpha;

    std::size_t size() const noexcept { return copies.size(); }
    std::size_t modes() const noexcept { return copies.empty() ? 0 : copies.front().rows(); }

    /// Network with DFT encoder and conjugate-DFT decoder.
    static AveragingNetwork uniform(std::vector<ComplexMatrix> copies);

    /// Network with a given encoder/decoder pair; alpha is derived from them.
    static AveragingNetwork with_encoders(std::vector<ComplexMatrix> copies, ComplexMatrix encoder,
                                          ComplexMatrix decoder);
};

/// Throws DomainError/DimensionError if any invariant of the network fails.
void validate(const AveragingNetwork& net);

/// Non-unitary transform decomposed as sum_k coefficients[k] * unitaries[k].
struct LCUSpec {
    std::vector<ComplexMatrix> unitaries;
    std::vector<Complex> coefficients;
    /// l1 norm of the coefficients; the network applies target / scale.
    double scale = 1.0;
};

struct LcuEncoders {
    ComplexMatrix encoder;
    ComplexMatrix decoder;
    double scale = 1.0;
};

struct UaResult {
    Distribution distribution;
    double p_post = 1.0;
};

/// (1/N) sum_j copies[j].
ComplexMatrix unitary_average(std::span<const ComplexMatrix> copies);

/// sum_k alpha_k U_k, the transform heralded onto the original modes.
ComplexMatrix effective_transform(const AveragingNetwork& net);

/// (D (x) I_m) * (U_0 (+) ... (+) U_{N-1}) * (E^T (x) I_m) on N*m modes.
ComplexMatrix build_global_unitary(const AveragingNetwork& net);

/// Heralded output of plain unitary averaging; p_post is the probability of
/// vacuum on every ancilla mode.
UaResult ua_distribution(std::span<const ComplexMatrix> copies, const FockState& input);

/// Entrywise mean of unheralded distributions on one basis.
Distribution distribution_average(std::span<const Distribution> dists);

/**
 * Encoder/decoder pair whose first rows multiply to alpha / ||alpha||_1:
 * E(0,k) = sqrt|a_k| e^{i arg a_k} / sqrt||a||_1, D(0,k) = sqrt|a_k| / sqrt||a||_1.
 * The remaining rows are filled in by Gram-Schmidt against the standard
 * basis, skipping candidates within 1e-8 of the span so far.
 */
LcuEncoders lcu_encoders(std::span<const Complex> alpha);

/**
 * Writes a contraction (||m|| <= 1) as a combination of at most four
 * unitaries via its Hermitian parts H = (V+ + V-)/2 with
 * V+- = H +- i sqrt(I - H^2). A unitary target comes back as a single term.
 */
LCUSpec decompose_into_unitaries(const ComplexMatrix& m_target);

/// Network realising spec: its effective transform is target / spec.scale.
AveragingNetwork network_from_lcu(const LCUSpec& spec);

/// decompose_into_unitaries followed by network_from_lcu.
AveragingNetwork lcu_network(const ComplexMatrix& m_target);

/**
 * Probability that some photon leaves through an ancilla mode of the
 * averaging network built from `copies`, i.e. 1 - p_post. Zero exactly when
 * all copies agree on the input's support.
 */
double repeatability_witness(std::span<const ComplexMatrix> copies, const FockState& input);

/// Unnormalised success probability ||phi(a)|input>||^2.
double herald_probability(const ComplexMatrix& a, const FockState& input);

} // namespace uasim
