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

#include "uasim/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uasim/errors.hpp"
#include "uasim/random_stream.hpp"

namespace uasim {

namespace {

// Embedded 2x2 action on rows (top, top + 1): u <- B * u.
void apply_left(ComplexMatrix& u, std::size_t top, const ComplexMatrix& b) {
    for (std::size_t c = 0; c < u.cols(); ++c) {
        const Complex x = u(top, c);
        const Complex y = u(top + 1, c);
        u(top, c) = b(0, 0) * x + b(0, 1) * y;
        u(top + 1, c) = b(1, 0) * x + b(1, 1) * y;
    }
}

// Embedded 2x2 action on columns (top, top + 1): u <- u * b.
void apply_right(ComplexMatrix& u, std::size_t top, const ComplexMatrix& b) {
    for (std::size_t r = 0; r < u.rows(); ++r) {
        const Complex x = u(r, top);
        const Complex y = u(r, top + 1);
        u(r, top) = x * b(0, 0) + y * b(1, 0);
        u(r, top + 1) = x * b(0, 1) + y * b(1, 1);
    }
}

void scale_row(ComplexMatrix& u, std::size_t row, double phi) {
    const Complex phase = std::polar(1.0, phi);
    for (std::size_t c = 0; c < u.cols(); ++c) {
        u(row, c) *= phase;
    }
}

Complex unit(Complex z) {
    const double r = std::abs(z);
    return r == 0.0 ? Complex(1.0, 0.0) : z / r;
}

// Coupler nulling element (r, k) from the right: (u * B^dagger)(r, k) = 0.
BeamSplitter null_from_right(const ComplexMatrix& u, std::size_t r, std::size_t k) {
    const Complex a = u(r, k);
    const Complex b = u(r, k + 1);
    if (std::abs(a) == 0.0) {
        return {k, 0.0, 0.0};
    }
    const double theta = std::atan2(std::abs(a), std::abs(b));
    const double phi = std::abs(b) == 0.0 ? 0.0 : std::arg(a) - std::arg(b);
    return {k, theta, phi};
}

// Coupler nulling element (k + 1, c) from the left: (B * u)(k + 1, c) = 0.
BeamSplitter null_from_left(const ComplexMatrix& u, std::size_t k, std::size_t c) {
    const Complex a = u(k, c);
    const Complex b = u(k + 1, c);
    if (std::abs(b) == 0.0) {
        return {k, 0.0, 0.0};
    }
    const double theta = std::atan2(std::abs(b), std::abs(a));
    const double phi = std::abs(a) == 0.0 ? 0.0 : std::numbers::pi + std::arg(b) - std::arg(a);
    return {k, theta, phi};
}

struct Swapped {
    Complex g_top;
    Complex g_bottom;
    BeamSplitter coupler;
};

// Solve B^dagger(theta, phi) * diag(d0, d1) = diag(g0, g1) * B(theta', phi'),
// i.e. push a left-side coupler through the diagonal.
Swapped swap_through_diagonal(const BeamSplitter& left, Complex d0, Complex d1) {
    const ComplexMatrix bd = dagger(beam_splitter_matrix(left.theta, left.phi));
    const Complex m00 = bd(0, 0) * d0;
    const Complex m01 = bd(0, 1) * d1;
    const Complex m10 = bd(1, 0) * d0;
    const Complex m11 = bd(1, 1) * d1;

    const double c = std::abs(m11);
    const double s = std::abs(m01);
    const double theta = std::atan2(s, c);

    // Compute the products that are well conditioned for the dominant branch
    // first; the remaining factor only multiplies the small entry.
    Complex g0;
    Complex g1;
    Complex w;
    if (s >= c) {
        g0 = unit(-m01);
        const Complex g1w = unit(m10);
        g1 = c == 0.0 ? g1w : unit(m11);
        w = g1w / g1;
    } else {
        g1 = unit(m11);
        const Complex g0w = unit(m00);
        g0 = s == 0.0 ? g0w : unit(-m01);
        w = g0w / g0;
    }
    return {g0, g1, {left.top, theta, std::arg(w)}};
}

// Pack an ordered coupler sequence into layers, earliest-first, never
// reordering two couplers that share a mode.
std::vector<MeshLayer> pack_layers(std::size_t m, const std::vector<BeamSplitter>& sequence) {
    std::vector<std::size_t> next_free(m, 0);
    std::vector<MeshLayer> layers;
    for (const auto& bs : sequence) {
        const std::size_t layer = std::max(next_free[bs.top], next_free[bs.top + 1]);
        if (layer >= layers.size()) {
            layers.resize(layer + 1);
        }
        layers[layer].couplers.push_back(bs);
        next_free[bs.top] = layer + 1;
        next_free[bs.top + 1] = layer + 1;
    }
    for (auto& layer : layers) {
        std::sort(layer.couplers.begin(), layer.couplers.end(),
                  [](const BeamSplitter& a, const BeamSplitter& b) { return a.top < b.top; });
    }
    return layers;
}

} // namespace

std::size_t MeshSpec::coupler_count() const noexcept {
    std::size_t count = 0;
    for (const auto& layer : layers) {
        count += layer.couplers.size();
    }
    return count;
}

ComplexMatrix beam_splitter_matrix(double theta, double phi) {
    const Complex e = std::polar(1.0, phi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return ComplexMatrix{{e * c, -s}, {e * s, c}};
}

void validate(const MeshSpec& spec) {
    if (spec.output_phases.size() != spec.m) {
        throw DomainError("mesh: expected " + std::to_string(spec.m) + " output phases, got " +
                          std::to_string(spec.output_phases.size()));
    }
    for (std::size_t l = 0; l < spec.layers.size(); ++l) {
        const auto& layer = spec.layers[l];
        const std::string where = "mesh layer " + std::to_string(l) + ": ";
        std::vector<int> coupler_use(spec.m, 0);
        std::vector<bool> is_top(spec.m, false);
        for (const auto& bs : layer.couplers) {
            if (bs.top + 1 >= spec.m) {
                throw DomainError(where + "coupler on mode " + std::to_string(bs.top) +
                                  " exceeds " + std::to_string(spec.m) + " modes");
            }
            if (++coupler_use[bs.top] > 1 || ++coupler_use[bs.top + 1] > 1) {
                throw DomainError(where + "overlapping couplers at mode " + std::to_string(bs.top));
            }
            is_top[bs.top] = true;
        }
        std::vector<bool> seen(spec.m, false);
        for (const auto& ps : layer.input_phases) {
            if (ps.mode >= spec.m || seen[ps.mode] || is_top[ps.mode]) {
                throw DomainError(where + "bad input phase on mode " + std::to_string(ps.mode));
            }
            seen[ps.mode] = true;
        }
        std::fill(seen.begin(), seen.end(), false);
        for (const auto& ps : layer.idle_phases) {
            if (ps.mode >= spec.m || seen[ps.mode] || coupler_use[ps.mode] != 0) {
                throw DomainError(where + "bad idle phase on mode " + std::to_string(ps.mode));
            }
            seen[ps.mode] = true;
        }
    }
}

MeshSpec clements_decompose(const ComplexMatrix& u) {
    if (!u.is_square() || u.empty()) {
        throw DimensionError("clements_decompose: expected a non-empty square matrix");
    }
    if (!is_unitary(u, 1e-8)) {
        throw DomainError("clements_decompose: matrix is not unitary to 1e-8");
    }
    const std::size_t n = u.rows();
    ComplexMatrix work = u;
    std::vector<BeamSplitter> right;  // in the order applied, R_1 first
    std::vector<BeamSplitter> left;   // L_1 first

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (i % 2 == 0) {
            for (std::size_t j = 0; j <= i; ++j) {
                const std::size_t k = i - j;
                const BeamSplitter bs = null_from_right(work, n - 1 - j, k);
                apply_right(work, k, dagger(beam_splitter_matrix(bs.theta, bs.phi)));
                right.push_back(bs);
            }
        } else {
            for (std::size_t j = 1; j <= i + 1; ++j) {
                const std::size_t k = n + j - i - 3;
                const BeamSplitter bs = null_from_left(work, k, j - 1);
                apply_left(work, k, beam_splitter_matrix(bs.theta, bs.phi));
                left.push_back(bs);
            }
        }
    }

    // work = L_p...L_1 u R_1^dagger...R_q^dagger is diagonal, so
    // u = L_1^dagger...L_p^dagger D R_q...R_1. Push each L^dagger through D.
    std::vector<Complex> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = unit(work(i, i));
    }
    std::vector<BeamSplitter> swapped;  // T'_p first
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const Swapped s = swap_through_diagonal(*it, diag[it->top], diag[it->top + 1]);
        diag[it->top] = s.g_top;
        diag[it->top + 1] = s.g_bottom;
        swapped.push_back(s.coupler);
    }

    // Application order: R_1 ... R_q, then T'_p ... T'_1.
    std::vector<BeamSplitter> sequence = right;
    sequence.insert(sequence.end(), swapped.begin(), swapped.end());

    MeshSpec spec;
    spec.m = n;
    spec.layers = pack_layers(n, sequence);
    spec.output_phases.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        spec.output_phases[i] = std::arg(diag[i]);
    }
    return spec;
}

ComplexMatrix mesh_to_unitary(const MeshSpec& spec) {
    validate(spec);
    ComplexMatrix u = ComplexMatrix::identity(spec.m);
    for (const auto& layer : spec.layers) {
        for (const auto& ps : layer.input_phases) {
            scale_row(u, ps.mode, ps.phi);
        }
        for (const auto& bs : layer.couplers) {
            apply_left(u, bs.top, beam_splitter_matrix(bs.theta, bs.phi));
        }
        for (const auto& ps : layer.idle_phases) {
            scale_row(u, ps.mode, ps.phi);
        }
    }
    for (std::size_t i = 0; i < spec.m; ++i) {
        scale_row(u, i, spec.output_phases[i]);
    }
    return u;
}

MeshSpec uniform_depth_pad(const MeshSpec& spec) {
    validate(spec);
    MeshSpec out = spec;
    for (auto& layer : out.layers) {
        std::vector<bool> is_top(spec.m, false);
        std::vector<bool> touched(spec.m, false);
        for (const auto& bs : layer.couplers) {
            is_top[bs.top] = true;
            touched[bs.top] = true;
            touched[bs.top + 1] = true;
        }
        std::vector<bool> has_input(spec.m, false);
        for (const auto& ps : layer.input_phases) {
            has_input[ps.mode] = true;
        }
        std::vector<bool> has_idle(spec.m, false);
        for (const auto& ps : layer.idle_phases) {
            has_idle[ps.mode] = true;
        }
        for (std::size_t mode = 0; mode < spec.m; ++mode) {
            if (!is_top[mode] && !has_input[mode]) {
                layer.input_phases.push_back({mode, 0.0});
            }
            if (!touched[mode] && !has_idle[mode]) {
                layer.idle_phases.push_back({mode, 0.0});
            }
        }
        auto by_mode = [](const PhaseShift& a, const PhaseShift& b) { return a.mode < b.mode; };
        std::sort(layer.input_phases.begin(), layer.input_phases.end(), by_mode);
        std::sort(layer.idle_phases.begin(), layer.idle_phases.end(), by_mode);
    }
    out.depth = 2 * out.layers.size() + 1;
    return out;
}

MeshSpec perturb(const MeshSpec& spec, const NoiseModel& noise, RandomStream& rng) {
    if (!(noise.nu >= 0.0)) {
        throw DomainError("perturb: noise variance must be non-negative");
    }
    const double sigma = std::sqrt(noise.nu);
    MeshSpec out = spec;
    for (auto& layer : out.layers) {
        for (auto& ps : layer.input_phases) {
            ps.phi += sigma * rng.normal();
        }
        for (auto& bs : layer.couplers) {
            bs.theta += sigma * rng.normal();
            bs.phi += sigma * rng.normal();
        }
        for (auto& ps : layer.idle_phases) {
            ps.phi += sigma * rng.normal();
        }
    }
    for (auto& phase : out.output_phases) {
        phase += sigma * rng.normal();
    }
    return out;
}

NoisySample sample_noisy_unitary(const ComplexMatrix& u, const NoiseModel& noise, RandomStream& rng) {
    const MeshSpec padded = uniform_depth_pad(clements_decompose(u));
    return {mesh_to_unitary(perturb(padded, noise, rng)), padded.depth};
}

ComplexMatrix mean_unitary_prediction(const ComplexMatrix& u, double nu, std::size_t d) {
    if (!(nu >= 0.0)) {
        throw DomainError("mean_unitary_prediction: nu must be non-negative");
    }
    return std::pow(1.0 - nu / 2.0, static_cast<double>(d)) * u;
}

} // namespace uasim
