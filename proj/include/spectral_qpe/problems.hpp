// Copyright 2026 The spectral-qpe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Demo problems (transverse-field Ising chain, grid particle), guess
 * states, and qubit-count arithmetic for resource estimates.
 */
#pragma once

#include "gates.hpp"
#include "grid_particle.hpp"
#include "hamiltonian_terms.hpp"
#include "statevector.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace spectral_qpe {

/**
 * @brief Open-chain transverse-field Ising model
 * H = -J sum_i Z_i Z_{i+1} - h sum_i X_i on n sites.
 *
 * Terms are ordered bonds first (i = 0..n-2), then fields (i = 0..n-1).
 */
inline HamiltonianSum build_transverse_ising(std::size_t sites, double coupling,
                                             double field) {
    detail::require(sites >= 2 && sites <= max_dense_qubits, "build_transverse_ising",
                    "site count must lie in [2, 12]");
    const CMatrix z = gates::pauli_z().matrix();
    const CMatrix x = gates::pauli_x().matrix();
    CMatrix zz = CMatrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        const double a = (i & 1) != 0 ? -1.0 : 1.0;
        const double b = (i & 2) != 0 ? -1.0 : 1.0;
        zz(i, i) = a * b;
    }
    std::vector<LocalTerm> terms;
    for (std::size_t i = 0; i + 1 < sites; ++i) {
        terms.emplace_back(std::vector<std::size_t>{i, i + 1}, CMatrix(-coupling * zz));
    }
    for (std::size_t i = 0; i < sites; ++i) {
        terms.emplace_back(std::vector<std::size_t>{i}, CMatrix(-field * x));
    }
    return HamiltonianSum(std::move(terms), sites);
}

/// Tensor product of per-qubit states (a0, a1); entry 0 is qubit 0.
inline StateVector product_state_guess(std::size_t qubits,
                                       const std::vector<std::array<complex_t, 2>> &factors) {
    detail::require(factors.size() == qubits, "product_state_guess",
                    "need one amplitude pair per qubit");
    for (std::size_t q = 0; q < qubits; ++q) {
        const double n = std::norm(factors[q][0]) + std::norm(factors[q][1]);
        detail::require(std::abs(n - 1.0) <= norm_tolerance, "product_state_guess",
                        "amplitude pair for qubit " + std::to_string(q) +
                            " is not normalized");
    }
    std::vector<complex_t> amps(std::size_t{1} << qubits, 1.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        for (std::size_t q = 0; q < qubits; ++q) {
            amps[i] *= factors[q][(i >> q) & 1U];
        }
    }
    return StateVector::from_amplitudes(qubits, std::move(amps));
}

/// Uniform superposition, i.e. every qubit in |+>.
inline StateVector uniform_guess(std::size_t qubits) {
    const double s = 1.0 / std::sqrt(2.0);
    return product_state_guess(
        qubits, std::vector<std::array<complex_t, 2>>(qubits, {complex_t{s}, complex_t{s}}));
}

/// Normalized real Gaussian wavepacket on a 2^l periodic grid.
inline StateVector gaussian_guess(std::size_t grid_qubits, double center, double width) {
    detail::require(width > 0.0 && std::isfinite(width) && std::isfinite(center),
                    "gaussian_guess", "width must be positive and finite");
    const std::size_t n = std::size_t{1} << grid_qubits;
    std::vector<complex_t> amps(n);
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        // Minimum-image distance so the packet wraps around the ring.
        double d = std::remainder(static_cast<double>(x) - center, static_cast<double>(n));
        const double a = std::exp(-d * d / (4.0 * width * width));
        amps[x] = a;
        total += a * a;
    }
    detail::require(total > 0.0, "gaussian_guess", "wavepacket underflowed");
    const double scale = 1.0 / std::sqrt(total);
    for (auto &a : amps) {
        a *= scale;
    }
    return StateVector::from_amplitudes(grid_qubits, std::move(amps));
}

struct ResourceInputs {
    std::size_t particles = 0;
    std::size_t qubits_per_particle = 0;
    std::size_t index_qubits = 0;
    std::size_t scratch_qubits = 0;
    /// 0 when no position-space representation is used.
    std::size_t position_space_qubits_per_particle = 0;
    /// Two particles held in position space while their pair term runs.
    bool interacting_pair_in_position_space = false;
};

struct ResourceEstimate {
    ResourceInputs inputs;
    std::size_t particle_qubits = 0;
    std::size_t total = 0;
};

/**
 * @brief Qubit count of a first-quantized machine.
 *
 * Orbital basis only: n * q_pp + index + scratch.
 * With the interacting pair moved to position space:
 * 2 * q_pos + (n - 2) * q_pp + index + scratch.
 */
inline ResourceEstimate resource_estimate(const ResourceInputs &in) {
    ResourceEstimate out{in, 0, 0};
    if (in.interacting_pair_in_position_space) {
        detail::require(in.particles >= 2, "resource_estimate",
                        "an interacting pair needs at least two particles");
        out.particle_qubits = 2 * in.position_space_qubits_per_particle +
                              (in.particles - 2) * in.qubits_per_particle;
    } else {
        out.particle_qubits = in.particles * in.qubits_per_particle;
    }
    out.total = out.particle_qubits + in.index_qubits + in.scratch_qubits;
    return out;
}

} // namespace spectral_qpe
