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
 * Dense complex matrix helpers and qubit bit-manipulation utilities.
 *
 * Endianness used everywhere: qubit 0 is the least significant bit of a
 * basis-state index. For an operator acting on an ordered qubit list
 * `targets`, bit `b` of its local row/column index corresponds to
 * `targets[b]`.
 */
#pragma once

#include "error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spectral_qpe {

using complex_t = std::complex<double>;
using CMatrix = Eigen::Matrix<complex_t, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<complex_t, Eigen::Dynamic, 1>;

inline constexpr complex_t imag_unit{0.0, 1.0};

/// Largest absolute entry of `a - b`.
inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("max_abs_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const CMatrix &m) {
    return max_abs_diff(m, m.adjoint());
}

inline double unitarity_defect(const CMatrix &m) {
    return max_abs_diff(m.adjoint() * m,
                        CMatrix::Identity(m.rows(), m.cols()));
}

/// Returns k if `n == 2^k`, otherwise -1.
inline int exact_log2(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0) {
        return -1;
    }
    int k = 0;
    while ((std::size_t{1} << k) != n) {
        ++k;
    }
    return k;
}

namespace bits {

/// Scatters the low bits of `local` onto the positions listed in `targets`.
inline std::size_t scatter(std::size_t local,
                           std::span<const std::size_t> targets) {
    std::size_t out = 0;
    for (std::size_t b = 0; b < targets.size(); ++b) {
        out |= ((local >> b) & 1U) << targets[b];
    }
    return out;
}

/// Inverse of scatter: collects the bits at `targets` into a compact value.
inline std::size_t gather(std::size_t index,
                          std::span<const std::size_t> targets) {
    std::size_t out = 0;
    for (std::size_t b = 0; b < targets.size(); ++b) {
        out |= ((index >> targets[b]) & 1U) << b;
    }
    return out;
}

inline std::size_t mask_of(std::span<const std::size_t> qubits) {
    std::size_t mask = 0;
    for (auto q : qubits) {
        mask |= std::size_t{1} << q;
    }
    return mask;
}

/**
 * Inserts a zero bit at each position of `sorted_positions` (ascending),
 * spreading `compact` around them. Enumerating `compact` over
 * [0, 2^(n - k)) visits every index whose target bits are clear.
 */
inline std::size_t insert_zeros(std::size_t compact,
                                std::span<const std::size_t> sorted_positions) {
    for (auto pos : sorted_positions) {
        const std::size_t low = compact & ((std::size_t{1} << pos) - 1);
        compact = ((compact >> pos) << (pos + 1)) | low;
    }
    return compact;
}

} // namespace bits

/// Validates an ordered list of distinct qubits below `num_qubits`.
inline void check_qubit_list(std::span<const std::size_t> qubits,
                             std::size_t num_qubits, const std::string &where) {
    std::vector<std::size_t> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        detail::fail(where, "duplicate qubit index");
    }
    if (!sorted.empty() && sorted.back() >= num_qubits) {
        detail::fail(where, "qubit index " + std::to_string(sorted.back()) +
                                " out of range for " +
                                std::to_string(num_qubits) + " qubits");
    }
}

/**
 * @brief Embeds a 2^k x 2^k operator acting on `support` into the full
 * 2^n x 2^n space (identity on the remaining qubits).
 */
inline CMatrix embed_operator(const CMatrix &local,
                              std::span<const std::size_t> support,
                              std::size_t num_qubits) {
    check_qubit_list(support, num_qubits, "embed_operator");
    const std::size_t local_dim = std::size_t{1} << support.size();
    if (static_cast<std::size_t>(local.rows()) != local_dim ||
        static_cast<std::size_t>(local.cols()) != local_dim) {
        throw InvalidArgument("embed_operator: matrix size does not match support");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t mask = bits::mask_of(support);
    CMatrix full = CMatrix::Zero(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t local_col = bits::gather(col, support);
        const std::size_t rest = col & ~mask;
        for (std::size_t local_row = 0; local_row < local_dim; ++local_row) {
            const std::size_t row = rest | bits::scatter(local_row, support);
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                local(static_cast<Eigen::Index>(local_row),
                      static_cast<Eigen::Index>(local_col));
        }
    }
    return full;
}

} // namespace spectral_qpe
