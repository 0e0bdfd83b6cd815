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
 * Quantum Fourier transform over an arbitrary ordered register.
 *
 * Sign convention: the forward transform maps |j> to
 * (1/sqrt(M)) sum_k e^{+2 pi i jk/M} |k>, with register[0] the least
 * significant bit of j and k. Phase readout therefore uses qft_inverse,
 * which concentrates sum_j e^{i w j}|j> at bin wM/(2 pi).
 *
 * Implemented as the textbook circuit (Hadamards, controlled phases and a
 * final bit-reversal swap network). The swaps are always applied, so the
 * result is in natural order.
 */
#pragma once

#include "statevector.hpp"

#include <cmath>
#include <numbers>
#include <span>

namespace spectral_qpe {

namespace detail {

inline void controlled_phase(StateVector &state, std::size_t control,
                             std::size_t target, double angle) {
    const std::size_t mask =
        (std::size_t{1} << control) | (std::size_t{1} << target);
    const complex_t phase = std::polar(1.0, angle);
    auto amps = state.mutable_amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] *= phase;
        }
    }
}

inline void hadamard_kernel(StateVector &state, std::size_t target) {
    const double s = 1.0 / std::numbers::sqrt2;
    const std::size_t bit = std::size_t{1} << target;
    auto amps = state.mutable_amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            const complex_t a = amps[i];
            const complex_t b = amps[i | bit];
            amps[i] = s * (a + b);
            amps[i | bit] = s * (a - b);
        }
    }
}

inline void check_register(const StateVector &state,
                           std::span<const std::size_t> reg, const char *where) {
    detail::require(!reg.empty(), where, "empty register");
    check_qubit_list(reg, state.num_qubits(), where);
}

} // namespace detail

inline void qft_forward(StateVector &state, std::span<const std::size_t> reg) {
    detail::check_register(state, reg, "qft_forward");
    const std::size_t n = reg.size();
    for (std::size_t a = n; a-- > 0;) {
        detail::hadamard_kernel(state, reg[a]);
        for (std::size_t b = a; b-- > 0;) {
            const double angle =
                2.0 * std::numbers::pi / static_cast<double>(std::size_t{1} << (a - b + 1));
            detail::controlled_phase(state, reg[b], reg[a], angle);
        }
    }
    for (std::size_t a = 0; a < n / 2; ++a) {
        swap_qubits(state, reg[a], reg[n - 1 - a]);
    }
    state.check_norm("qft_forward");
}

inline void qft_inverse(StateVector &state, std::span<const std::size_t> reg) {
    detail::check_register(state, reg, "qft_inverse");
    const std::size_t n = reg.size();
    for (std::size_t a = 0; a < n / 2; ++a) {
        swap_qubits(state, reg[a], reg[n - 1 - a]);
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            const double angle =
                -2.0 * std::numbers::pi / static_cast<double>(std::size_t{1} << (a - b + 1));
            detail::controlled_phase(state, reg[b], reg[a], angle);
        }
        detail::hadamard_kernel(state, reg[a]);
    }
    state.check_norm("qft_inverse");
}

} // namespace spectral_qpe
