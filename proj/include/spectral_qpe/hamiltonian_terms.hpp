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
 * Local Hamiltonian data types: H = sum_i H_i with each H_i acting on at
 * most six qubits.
 */
#pragma once

#include "linalg.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace spectral_qpe {

inline constexpr std::size_t max_term_arity = 6;
inline constexpr double hermiticity_tolerance = 1e-10;

/// One Hermitian term acting on an ordered list of system qubits.
class LocalTerm {
  public:
    LocalTerm(std::vector<std::size_t> support, CMatrix matrix)
        : support_(std::move(support)), matrix_(std::move(matrix)) {
        detail::require(!support_.empty() && support_.size() <= max_term_arity,
                        "LocalTerm",
                        "support must hold 1.." +
                            std::to_string(max_term_arity) + " qubits");
        check_qubit_list(support_, 64, "LocalTerm");
        const auto dim = static_cast<Eigen::Index>(std::size_t{1}
                                                   << support_.size());
        detail::require(matrix_.rows() == dim && matrix_.cols() == dim,
                        "LocalTerm", "matrix must be 2^k x 2^k for k = |support|");
        detail::require(matrix_.allFinite(), "LocalTerm",
                        "matrix has non-finite entries");
        const double defect = hermiticity_defect(matrix_);
        detail::require(defect <= hermiticity_tolerance, "LocalTerm",
                        "matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
    }

    [[nodiscard]] const std::vector<std::size_t> &support() const noexcept {
        return support_;
    }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t arity() const noexcept { return support_.size(); }

  private:
    std::vector<std::size_t> support_;
    CMatrix matrix_;
};

/**
 * @brief Ordered sum of local terms over `num_qubits` system qubits.
 *
 * The list order is the Trotter application order and never changes after
 * construction.
 */
class HamiltonianSum {
  public:
    HamiltonianSum(std::vector<LocalTerm> terms, std::size_t num_qubits)
        : terms_(std::move(terms)), num_qubits_(num_qubits) {
        detail::require(num_qubits_ >= 1, "HamiltonianSum",
                        "needs at least one system qubit");
        for (const auto &t : terms_) {
            for (auto q : t.support()) {
                detail::require(q < num_qubits_, "HamiltonianSum",
                                "term support qubit " + std::to_string(q) +
                                    " outside the " +
                                    std::to_string(num_qubits_) +
                                    "-qubit system");
            }
        }
    }

    [[nodiscard]] const std::vector<LocalTerm> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }

  private:
    std::vector<LocalTerm> terms_;
    std::size_t num_qubits_;
};

/// Evolution time t (hbar = 1), Trotter slice count r and target error.
struct EvolutionParams {
    double time = 1.0;
    std::size_t slices = 1;
    double accuracy = 1e-3;

    void validate() const {
        detail::require(std::isfinite(time), "EvolutionParams",
                        "time must be finite");
        detail::require(slices >= 1, "EvolutionParams", "slices must be >= 1");
        detail::require(accuracy > 0.0, "EvolutionParams",
                        "accuracy must be positive");
    }
};

} // namespace spectral_qpe
