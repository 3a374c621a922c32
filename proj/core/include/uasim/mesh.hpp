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
#include <vector>

#include "uasim/complex_matrix.hpp"

namespace uasim {

class RandomStream;

/**
 * Tunable two-mode coupler acting on modes (top, top + 1) as
 *
 *     B(theta, phi) = [[e^{i phi} cos theta, -sin theta],
 *                      [e^{i phi} sin theta,  cos theta]]
 *
 * i.e. the phase phi sits on the top input, then the coupler mixes.
 * B(0, 0) is the identity and B(pi/2, 0) = [[0, -1], [1, 0]].
 */
struct BeamSplitter {
    std::size_t top = 0;
    double theta = 0.0;
    double phi = 0.0;

    friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

/// Single-mode phase element e^{i phi}. Target phi is 0 for padding.
struct PhaseShift {
    std::size_t mode = 0;
    double phi = 0.0;

    friend bool operator==(const PhaseShift&, const PhaseShift&) = default;
};

/**
 * One column of the mesh, applied in three stages:
 *   1. input_phases, on modes other than a coupler's top mode;
 *   2. couplers (each carrying its own phi on the top input);
 *   3. idle_phases, on modes no coupler touches.
 *
 * A freshly decomposed mesh only has couplers. uniform_depth_pad() fills
 * stages 1 and 3 so that every optical path picks up exactly two noisy
 * parameters per layer.
 */
struct MeshLayer {
    std::vector<PhaseShift> input_phases;
    std::vector<BeamSplitter> couplers;
    std::vector<PhaseShift> idle_phases;

    friend bool operator==(const MeshLayer&, const MeshLayer&) = default;
};

/**
 * Rectangular interferometer description. The implemented transform is
 *
 *     U = diag(e^{i output_phases}) * L_last * ... * L_0
 *
 * depth is 0 unless the mesh went through uniform_depth_pad(), in which case
 * every path traverses exactly `depth` noisy parameters:
 * two per layer plus the output phase.
 */
struct MeshSpec {
    std::size_t m = 0;
    std::vector<MeshLayer> layers;
    std::vector<double> output_phases;
    std::size_t depth = 0;

    std::size_t coupler_count() const noexcept;

    friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

/// Zero-mean Gaussian perturbation of every angle, variance nu (rad^2).
struct NoiseModel {
    double nu = 0.0;
};

/// 2x2 action of a coupler.
ComplexMatrix beam_splitter_matrix(double theta, double phi);

/// Checks layer well-formedness; throws DomainError naming the clash.
void validate(const MeshSpec& spec);

/**
 * Rectangular (Clements) decomposition of an m x m unitary into
 * m(m-1)/2 couplers plus output phases. Couplers that commute are packed
 * into the earliest layer available, which yields m layers for m >= 3.
 * Throws DomainError if u is not unitary to 1e-8.
 */
MeshSpec clements_decompose(const ComplexMatrix& u);

/// Ordered product of the mesh elements followed by the output phases.
ComplexMatrix mesh_to_unitary(const MeshSpec& spec);

/// Adds identity-acting phase elements so all paths have equal depth.
MeshSpec uniform_depth_pad(const MeshSpec& spec);

/// Adds an independent N(0, nu) draw to every angle. Structure unchanged.
MeshSpec perturb(const MeshSpec& spec, const NoiseModel& noise, RandomStream& rng);

struct NoisySample {
    ComplexMatrix unitary;
    std::size_t depth = 0;
};

/// clements_decompose -> uniform_depth_pad -> perturb -> mesh_to_unitary.
NoisySample sample_noisy_unitary(const ComplexMatrix& u, const NoiseModel& noise, RandomStream& rng);

/// (1 - nu/2)^d * u, the second-order mean of a noisy realisation.
ComplexMatrix mean_unitary_prediction(const ComplexMatrix& u, double nu, std::size_t d);

} // namespace uasim
