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
 * Time evolution under a local Hamiltonian: exact exponentials through
 * Hermitian eigendecomposition and the first-order Trotter product
 *
 *     e^{-iHt} ~ (e^{-iH_1 t/r} e^{-iH_2 t/r} ... e^{-iH_k t/r})^r.
 *
 * Terms are applied in list order. In operator notation the first term of
 * the list acts first on the state.
 */
#pragma once

#include "hamiltonian_terms.hpp"
#include "oracle.hpp"
#include "statevector.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace spectral_qpe {

/// e^{-i H t} for a dense Hermitian H, via H = V Lambda V^dagger.
inline GateMatrix hermitian_exponential(const CMatrix &h, double t) {
    const auto d = eigendecompose(h);
    CMatrix u = spectral_function(
        d, [t](double lambda) { return std::polar(1.0, -lambda * t); });
    return GateMatrix::from_matrix(std::move(u));
}

inline GateMatrix term_exponential(const LocalTerm &term, double dt) {
    return hermitian_exponential(term.matrix(), dt);
}

/**
 * @brief One Trotter slice with its term exponentials precomputed.
 *
 * System qubit q of the Hamiltonian is mapped to machine qubit
 * `offset + q`.
 */
class TrotterCircuit {
  public:
    TrotterCircuit(const HamiltonianSum &h, double dt) : num_qubits_(h.num_qubits()) {
        gates_.reserve(h.terms().size());
        for (const auto &term : h.terms()) {
            gates_.push_back({term_exponential(term, dt), term.support()});
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }

    void apply(StateVector &state, std::size_t offset,
               std::span<const std::size_t> controls = {}) const {
        std::vector<std::size_t> targets;
        for (const auto &[gate, support] : gates_) {
            targets.resize(support.size());
            std::transform(support.begin(), support.end(), targets.begin(),
                           [offset](std::size_t q) { return q + offset; });
            apply_controlled_gate(state, gate, controls, targets);
        }
    }

  private:
    struct Slice {
        GateMatrix gate;
        std::vector<std::size_t> support;
    };
    std::vector<Slice> gates_;
    std::size_t num_qubits_;
};

namespace detail {

inline void check_trotter_layout(const StateVector &state, const HamiltonianSum &h,
                                 const RegisterLayout &layout, const char *where) {
    require(h.num_qubits() == layout.system_qubits(), where,
            "Hamiltonian acts on " + std::to_string(h.num_qubits()) +
                " qubits but the system register has " +
                std::to_string(layout.system_qubits()));
    require(state.num_qubits() == layout.total(), where,
            "state size does not match register layout");
}

} // namespace detail

/// Applies prod_i e^{-i H_i dt} to the system register.
inline void trotter_step(StateVector &state, const HamiltonianSum &h, double dt,
                         const RegisterLayout &layout) {
    detail::check_trotter_layout(state, h, layout, "trotter_step");
    TrotterCircuit(h, dt).apply(state, layout.system_offset());
}

/// r Trotter slices with dt = t / r.
inline void trotter_evolve(StateVector &state, const HamiltonianSum &h,
                           const EvolutionParams &params,
                           const RegisterLayout &layout) {
    params.validate();
    detail::check_trotter_layout(state, h, layout, "trotter_evolve");
    const TrotterCircuit circuit(h, params.time / static_cast<double>(params.slices));
    for (std::size_t s = 0; s < params.slices; ++s) {
        circuit.apply(state, layout.system_offset());
    }
}

/// Dense e^{-iHt} over the whole system register (l <= 12).
inline GateMatrix exact_unitary(const HamiltonianSum &h, double t) {
    return hermitian_exponential(assemble_dense(h), t);
}

/**
 * @brief Dense matrix of the Trotterized propagator, built column by column
 * by running the circuit on each basis state.
 */
inline CMatrix trotter_unitary(const HamiltonianSum &h, const EvolutionParams &params) {
    params.validate();
    detail::require(h.num_qubits() <= max_dense_qubits, "trotter_unitary",
                    "system too large for a dense propagator");
    const std::size_t dim = std::size_t{1} << h.num_qubits();
    const TrotterCircuit circuit(h, params.time / static_cast<double>(params.slices));
    CMatrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        auto psi = StateVector::basis(h.num_qubits(), col);
        for (std::size_t s = 0; s < params.slices; ++s) {
            circuit.apply(psi, 0);
        }
        for (std::size_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = psi[row];
        }
    }
    return u;
}

/// ||[A, B]||_max of two terms, embedded on the union of their supports.
inline double commutator_norm(const LocalTerm &a, const LocalTerm &b) {
    std::vector<std::size_t> joint = a.support();
    for (auto q : b.support()) {
        if (std::find(joint.begin(), joint.end(), q) == joint.end()) {
            joint.push_back(q);
        }
    }
    auto relabel = [&joint](const std::vector<std::size_t> &support) {
        std::vector<std::size_t> out;
        for (auto q : support) {
            out.push_back(static_cast<std::size_t>(
                std::find(joint.begin(), joint.end(), q) - joint.begin()));
        }
        return out;
    };
    const CMatrix ea = embed_operator(a.matrix(), relabel(a.support()), joint.size());
    const CMatrix eb = embed_operator(b.matrix(), relabel(b.support()), joint.size());
    return (ea * eb - eb * ea).cwiseAbs().maxCoeff();
}

/**
 * @brief Upper-bound heuristic for the slice count reaching accuracy eps:
 * r >= (sum_{i>j} ||[H_i, H_j]||_max) t^2 / (2 eps).
 *
 * The evolution routines never call this; slice selection stays explicit.
 */
inline std::size_t slices_for_accuracy(const HamiltonianSum &h, double t, double eps) {
    detail::require(eps > 0.0, "slices_for_accuracy", "accuracy must be positive");
    double total = 0.0;
    const auto &terms = h.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            total += commutator_norm(terms[i], terms[j]);
        }
    }
    const double r = std::ceil(total * t * t / (2.0 * eps));
    return std::max<std::size_t>(1, static_cast<std::size_t>(r));
}

} // namespace spectral_qpe
