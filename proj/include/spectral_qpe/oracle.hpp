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
 * Dense reference engine: brute-force assembly and Hermitian
 * eigendecomposition used as ground truth for the simulator.
 */
#pragma once

#include "hamiltonian_terms.hpp"
#include "statevector.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace spectral_qpe {

inline constexpr std::size_t max_dense_qubits = 12;

/// Ascending eigenvalues; eigenvectors are the matching orthonormal columns.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    CMatrix eigenvectors;

    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(eigenvalues.size());
    }
    [[nodiscard]] CVector eigenvector(std::size_t k) const {
        return eigenvectors.col(static_cast<Eigen::Index>(k));
    }
};

/// Sum of every term embedded in the full 2^l system space.
inline CMatrix assemble_dense(const HamiltonianSum &h) {
    detail::require(h.num_qubits() <= max_dense_qubits, "assemble_dense",
                    "system of " + std::to_string(h.num_qubits()) +
                        " qubits too large for dense assembly");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits());
    CMatrix full = CMatrix::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        full += embed_operator(t.matrix(), t.support(), h.num_qubits());
    }
    return full;
}

inline SpectralDecomposition eigendecompose(const CMatrix &matrix) {
    detail::require(matrix.rows() == matrix.cols() && matrix.rows() > 0,
                    "eigendecompose", "matrix must be square and non-empty");
    const double defect = hermiticity_defect(matrix);
    detail::require(defect <= hermiticity_tolerance, "eigendecompose",
                    "matrix is not Hermitian (defect " +
                        std::to_string(defect) + ")");
    // Symmetrize so rounding in the input cannot bias the solver.
    const CMatrix sym = 0.5 * (matrix + matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw ContractViolation("eigendecompose: solver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Builds V f(Lambda) V^dagger from a decomposition.
template <class Fn>
CMatrix spectral_function(const SpectralDecomposition &d, Fn &&fn) {
    CVector diag(static_cast<Eigen::Index>(d.size()));
    for (Eigen::Index k = 0; k < diag.size(); ++k) {
        diag(k) = fn(d.eigenvalues(k));
    }
    return d.eigenvectors * diag.asDiagonal() * d.eigenvectors.adjoint();
}

/// Wraps an angle into [0, 2 pi).
inline double wrap_phase(double omega) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(omega, two_pi);
    if (w < 0.0) {
        w += two_pi;
    }
    if (w >= two_pi) {
        w -= two_pi;
    }
    return w;
}

struct SpectralComponent {
    /// |c_k|^2 = |<phi_k|V_a>|^2.
    double weight;
    /// omega_k = (-lambda_k t) mod 2 pi.
    double phase;
    double energy;
};

/**
 * @brief Expands `va` in the eigenbasis of `d` and attaches the eigenphase
 * each component acquires under e^{-iHt}.
 */
inline std::vector<SpectralComponent>
spectral_components(const StateVector &va, const SpectralDecomposition &d,
                    double t) {
    detail::require(va.dimension() == d.size(), "spectral_components",
                    "dimension mismatch between state and decomposition");
    detail::require(t != 0.0, "spectral_components", "time must be nonzero");
    const auto amps = va.amplitudes();
    const Eigen::Map<const CVector> psi(amps.data(),
                                        static_cast<Eigen::Index>(amps.size()));
    const CVector c = d.eigenvectors.adjoint() * psi;
    std::vector<SpectralComponent> out(d.size());
    double total = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double lambda = d.eigenvalues(static_cast<Eigen::Index>(k));
        out[k] = {std::norm(c(static_cast<Eigen::Index>(k))),
                  wrap_phase(-lambda * t), lambda};
        total += out[k].weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ContractViolation("spectral_components: weights sum to " +
                                std::to_string(total));
    }
    return out;
}

/// Indices of eigenvalues within `tol` of `energy`.
inline std::vector<std::size_t> eigenspace_indices(const SpectralDecomposition &d,
                                                   double energy, double tol) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (std::abs(d.eigenvalues(static_cast<Eigen::Index>(k)) - energy) <= tol) {
            out.push_back(k);
        }
    }
    return out;
}

/// <psi|P|psi> for P the projector onto eigenvectors `indices`.
inline double projected_weight(const StateVector &psi,
                               const SpectralDecomposition &d,
                               const std::vector<std::size_t> &indices) {
    detail::require(psi.dimension() == d.size(), "projected_weight",
                    "dimension mismatch");
    const auto amps = psi.amplitudes();
    const Eigen::Map<const CVector> v(amps.data(),
                                      static_cast<Eigen::Index>(amps.size()));
    double acc = 0.0;
    for (auto k : indices) {
        acc += std::norm(d.eigenvectors.col(static_cast<Eigen::Index>(k)).dot(v));
    }
    return acc;
}

/// Default grouping width for degenerate eigenvalues: 1e-8 * ||A||.
inline double degeneracy_tolerance(const SpectralDecomposition &d) {
    return 1e-8 * d.eigenvalues.cwiseAbs().maxCoeff();
}

} // namespace spectral_qpe
