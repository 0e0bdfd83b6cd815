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
 * Dense state-vector simulator: the substrate every other module runs on.
 *
 * Qubit 0 is the least significant bit of a basis index. Every mutating
 * operation checks the norm afterwards and throws ContractViolation if it
 * has drifted by more than `norm_tolerance`; states are never silently
 * renormalized.
 */
#pragma once

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spectral_qpe {

inline constexpr std::size_t max_qubits = 26;
inline constexpr double norm_tolerance = 1e-6;
inline constexpr double unitarity_tolerance = 1e-10;
inline constexpr std::size_t max_gate_arity = 12;

class StateVector {
  public:
    /// Computational basis state |index> on `num_qubits` qubits.
    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        check_size(num_qubits, "StateVector::basis");
        if (index >= (std::size_t{1} << num_qubits)) {
            detail::fail("StateVector::basis",
                         "basis index " + std::to_string(index) +
                             " out of range");
        }
        StateVector s(num_qubits);
        s.amps_[index] = 1.0;
        return s;
    }

    static StateVector from_amplitudes(std::size_t num_qubits,
                                       std::vector<complex_t> values) {
        check_size(num_qubits, "StateVector::from_amplitudes");
        if (values.size() != (std::size_t{1} << num_qubits)) {
            detail::fail("StateVector::from_amplitudes",
                         "expected " +
                             std::to_string(std::size_t{1} << num_qubits) +
                             " amplitudes, got " +
                             std::to_string(values.size()));
        }
        StateVector s(num_qubits, std::move(values));
        const double n = s.norm_squared();
        if (std::abs(n - 1.0) > norm_tolerance) {
            detail::fail("StateVector::from_amplitudes",
                         "amplitudes are not normalized (norm^2 = " +
                             std::to_string(n) + ")");
        }
        return s;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] complex_t operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double acc = 0.0;
        for (const auto &a : amps_) {
            acc += std::norm(a);
        }
        return acc;
    }

    /**
     * @brief Raw mutable access for kernels.
     *
     * Callers are responsible for calling check_norm() once the
     * transformation is complete.
     */
    [[nodiscard]] std::span<complex_t> mutable_amplitudes() noexcept {
        return amps_;
    }

    void check_norm(const std::string &where) const {
        const double n = norm_squared();
        if (!(std::abs(n - 1.0) <= norm_tolerance)) {
            throw ContractViolation(where + ": norm drifted to " +
                                    std::to_string(n));
        }
    }

  private:
    explicit StateVector(std::size_t num_qubits)
        : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {}
    StateVector(std::size_t num_qubits, std::vector<complex_t> values)
        : num_qubits_(num_qubits), amps_(std::move(values)) {}

    static void check_size(std::size_t num_qubits, const char *where) {
        if (num_qubits < 1 || num_qubits > max_qubits) {
            detail::fail(where, "qubit count " + std::to_string(num_qubits) +
                                    " outside [1, " +
                                    std::to_string(max_qubits) +
                                    "] (qubit cap)");
        }
    }

    std::size_t num_qubits_;
    std::vector<complex_t> amps_;
};

/**
 * @brief Partition of the machine into index, system and work registers.
 *
 * Index qubits occupy [0, m), system qubits [m, m + l) and work qubits the
 * remainder.
 */
class RegisterLayout {
  public:
    RegisterLayout(std::size_t index_qubits, std::size_t system_qubits,
                   std::size_t work_qubits)
        : index_(index_qubits), system_(system_qubits), work_(work_qubits) {
        detail::require(index_ >= 1, "RegisterLayout",
                        "index register needs at least one qubit");
        detail::require(system_ >= 1, "RegisterLayout",
                        "system register needs at least one qubit");
        detail::require(total() <= max_qubits, "RegisterLayout",
                        "total of " + std::to_string(total()) +
                            " qubits exceeds the qubit cap of " +
                            std::to_string(max_qubits));
    }

    [[nodiscard]] std::size_t index_qubits() const noexcept { return index_; }
    [[nodiscard]] std::size_t system_qubits() const noexcept { return system_; }
    [[nodiscard]] std::size_t work_qubits() const noexcept { return work_; }
    [[nodiscard]] std::size_t total() const noexcept {
        return index_ + system_ + work_;
    }
    /// Number of phase bins, 2^m.
    [[nodiscard]] std::size_t bins() const noexcept {
        return std::size_t{1} << index_;
    }
    [[nodiscard]] std::size_t system_offset() const noexcept { return index_; }
    [[nodiscard]] std::size_t work_offset() const noexcept {
        return index_ + system_;
    }

    [[nodiscard]] std::vector<std::size_t> index_register() const {
        return range(0, index_);
    }
    [[nodiscard]] std::vector<std::size_t> system_register() const {
        return range(index_, system_);
    }
    [[nodiscard]] std::vector<std::size_t> work_register() const {
        return range(index_ + system_, work_);
    }

    friend bool operator==(const RegisterLayout &,
                           const RegisterLayout &) = default;

  private:
    static std::vector<std::size_t> range(std::size_t first, std::size_t count) {
        std::vector<std::size_t> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = first + i;
        }
        return out;
    }

    std::size_t index_;
    std::size_t system_;
    std::size_t work_;
};

/// A validated unitary on 1..max_gate_arity qubits.
class GateMatrix {
  public:
    static GateMatrix from_matrix(CMatrix m) {
        const int k = exact_log2(static_cast<std::size_t>(m.rows()));
        if (m.rows() != m.cols() || k < 1 ||
            static_cast<std::size_t>(k) > max_gate_arity) {
            detail::fail("GateMatrix",
                         "matrix must be 2^k x 2^k with 1 <= k <= " +
                             std::to_string(max_gate_arity));
        }
        const double defect = unitarity_defect(m);
        if (!(defect <= unitarity_tolerance)) {
            detail::fail("GateMatrix", "matrix is not unitary (defect " +
                                           std::to_string(defect) + ")");
        }
        return GateMatrix(std::move(m), static_cast<std::size_t>(k));
    }

    static GateMatrix
    from_rows(std::initializer_list<std::initializer_list<complex_t>> rows) {
        const auto n = static_cast<Eigen::Index>(rows.size());
        CMatrix m(n, n);
        Eigen::Index r = 0;
        for (const auto &row : rows) {
            if (static_cast<Eigen::Index>(row.size()) != n) {
                detail::fail("GateMatrix::from_rows", "matrix is not square");
            }
            Eigen::Index c = 0;
            for (const auto &v : row) {
                m(r, c++) = v;
            }
            ++r;
        }
        return from_matrix(std::move(m));
    }

    static GateMatrix identity(std::size_t arity) {
        const auto d = static_cast<Eigen::Index>(std::size_t{1} << arity);
        return from_matrix(CMatrix::Identity(d, d));
    }

    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return std::size_t{1} << arity_;
    }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] complex_t operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    [[nodiscard]] GateMatrix adjoint() const {
        return GateMatrix(m_.adjoint(), arity_);
    }

    /// Matrix product `this * rhs`, re-validated for unitarity.
    [[nodiscard]] GateMatrix then_after(const GateMatrix &rhs) const {
        detail::require(arity_ == rhs.arity_, "GateMatrix::then_after",
                        "arity mismatch");
        return from_matrix(m_ * rhs.m_);
    }

  private:
    GateMatrix(CMatrix m, std::size_t arity) : m_(std::move(m)), arity_(arity) {}

    CMatrix m_;
    std::size_t arity_;
};

struct MeasurementOutcome {
    /// Register value; bit b is the outcome of qubits[b].
    std::uint64_t bits;
    /// Born probability of this outcome before collapse.
    double probability;
};

namespace detail {

/**
 * Core dense kernel: applies `m` (2^k x 2^k) on `targets` to every
 * amplitude group whose `control_mask` bits are all set.
 */
inline void apply_matrix_kernel(std::span<complex_t> amps, const CMatrix &m,
                                std::span<const std::size_t> targets,
                                std::size_t control_mask) {
    const std::size_t k = targets.size();
    const std::size_t local_dim = std::size_t{1} << k;
    std::vector<std::size_t> offsets(local_dim);
    for (std::size_t local = 0; local < local_dim; ++local) {
        offsets[local] = bits::scatter(local, targets);
    }
    std::vector<std::size_t> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());

    // Row-major copy for the inner loop.
    std::vector<complex_t> rows(local_dim * local_dim);
    for (std::size_t r = 0; r < local_dim; ++r) {
        for (std::size_t c = 0; c < local_dim; ++c) {
            rows[r * local_dim + c] =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }

    std::vector<complex_t> in(local_dim);
    const std::size_t outer = amps.size() >> k;
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base = bits::insert_zeros(o, sorted);
        if ((base & control_mask) != control_mask) {
            continue;
        }
        for (std::size_t i = 0; i < local_dim; ++i) {
            in[i] = amps[base | offsets[i]];
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            complex_t acc = 0.0;
            const complex_t *row = &rows[r * local_dim];
            for (std::size_t c = 0; c < local_dim; ++c) {
                acc += row[c] * in[c];
            }
            amps[base | offsets[r]] = acc;
        }
    }
}

inline void check_controls_targets(std::span<const std::size_t> controls,
                                   std::span<const std::size_t> targets,
                                   std::size_t num_qubits,
                                   const std::string &where) {
    check_qubit_list(targets, num_qubits, where);
    check_qubit_list(controls, num_qubits, where);
    if ((bits::mask_of(controls) & bits::mask_of(targets)) != 0) {
        fail(where, "control and target qubits overlap");
    }
}

} // namespace detail

/**
 * @brief Applies `gate` to the ordered qubit list `targets`.
 *
 * Bit b of the gate's local index corresponds to targets[b].
 */
inline void apply_gate(StateVector &state, const GateMatrix &gate,
                       std::span<const std::size_t> targets) {
    detail::require(targets.size() == gate.arity(), "apply_gate",
                    "target count does not match gate arity");
    check_qubit_list(targets, state.num_qubits(), "apply_gate");
    detail::apply_matrix_kernel(state.mutable_amplitudes(), gate.matrix(),
                                targets, 0);
    state.check_norm("apply_gate");
}

inline void apply_gate(StateVector &state, const GateMatrix &gate,
                       std::initializer_list<std::size_t> targets) {
    apply_gate(state, gate, std::span<const std::size_t>(targets.begin(),
                                                         targets.size()));
}

/// Applies `gate` on `targets` where every qubit in `controls` is |1>.
inline void apply_controlled_gate(StateVector &state, const GateMatrix &gate,
                                  std::span<const std::size_t> controls,
                                  std::span<const std::size_t> targets) {
    detail::require(targets.size() == gate.arity(), "apply_controlled_gate",
                    "target count does not match gate arity");
    detail::check_controls_targets(controls, targets, state.num_qubits(),
                                   "apply_controlled_gate");
    detail::apply_matrix_kernel(state.mutable_amplitudes(), gate.matrix(),
                                targets, bits::mask_of(controls));
    state.check_norm("apply_controlled_gate");
}

inline void apply_controlled_gate(StateVector &state, const GateMatrix &gate,
                                  std::initializer_list<std::size_t> controls,
                                  std::initializer_list<std::size_t> targets) {
    apply_controlled_gate(
        state, gate,
        std::span<const std::size_t>(controls.begin(), controls.size()),
        std::span<const std::size_t>(targets.begin(), targets.size()));
}

/**
 * @brief Multiplies each amplitude by `phases[gather(index, targets)]` when
 * all `controls` are set. Every phase must have unit modulus.
 */
inline void apply_controlled_diagonal(StateVector &state,
                                      std::span<const complex_t> phases,
                                      std::span<const std::size_t> controls,
                                      std::span<const std::size_t> targets) {
    detail::require(phases.size() == (std::size_t{1} << targets.size()),
                    "apply_controlled_diagonal",
                    "phase count does not match target count");
    for (const auto &p : phases) {
        detail::require(std::abs(std::abs(p) - 1.0) <= unitarity_tolerance,
                        "apply_controlled_diagonal",
                        "diagonal entry is not a unit phase");
    }
    detail::check_controls_targets(controls, targets, state.num_qubits(),
                                   "apply_controlled_diagonal");
    const std::size_t control_mask = bits::mask_of(controls);
    auto amps = state.mutable_amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & control_mask) == control_mask) {
            amps[i] *= phases[bits::gather(i, targets)];
        }
    }
    state.check_norm("apply_controlled_diagonal");
}

inline void swap_qubits(StateVector &state, std::size_t a, std::size_t b) {
    const std::size_t pair[2] = {a, b};
    check_qubit_list(pair, state.num_qubits(), "swap_qubits");
    auto amps = state.mutable_amplitudes();
    const std::size_t ma = std::size_t{1} << a;
    const std::size_t mb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ma) != 0 && (i & mb) == 0) {
            std::swap(amps[i], amps[(i & ~ma) | mb]);
        }
    }
}

/**
 * @brief Flips `flag` on every basis state whose index satisfies
 * `predicate`.
 *
 * This is a classically-specified reversible oracle |x>|f> -> |x>|f ^ p(x)>.
 * The predicate is evaluated with the flag bit cleared and must not depend
 * on it.
 */
template <class Predicate>
void flip_flag_if(StateVector &state, std::size_t flag, Predicate &&predicate) {
    const std::size_t one[1] = {flag};
    check_qubit_list(one, state.num_qubits(), "flip_flag_if");
    auto amps = state.mutable_amplitudes();
    const std::size_t fm = std::size_t{1} << flag;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & fm) == 0 && predicate(i)) {
            std::swap(amps[i], amps[i | fm]);
        }
    }
}

/// <a|b> = sum conj(a_i) b_i.
inline complex_t inner_product(const StateVector &a, const StateVector &b) {
    detail::require(a.num_qubits() == b.num_qubits(), "inner_product",
                    "dimension mismatch");
    complex_t acc = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// |<a|b>|^2, the global-phase-insensitive overlap.
inline double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

/// Born distribution of the register formed by `qubits` (no collapse).
inline std::vector<double>
register_distribution(const StateVector &state,
                      std::span<const std::size_t> qubits) {
    detail::require(!qubits.empty(), "register_distribution",
                    "empty qubit list");
    check_qubit_list(qubits, state.num_qubits(), "register_distribution");
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        probs[bits::gather(i, qubits)] += std::norm(amps[i]);
    }
    return probs;
}

/**
 * @brief Post-selects the register on `outcome` and renormalizes.
 *
 * Deterministic counterpart of measure_register, used for audits.
 */
inline MeasurementOutcome project_register(StateVector &state,
                                           std::span<const std::size_t> qubits,
                                           std::uint64_t outcome) {
    detail::require(!qubits.empty(), "project_register", "empty qubit list");
    check_qubit_list(qubits, state.num_qubits(), "project_register");
    detail::require(outcome < (std::uint64_t{1} << qubits.size()),
                    "project_register", "outcome out of range");
    auto amps = state.mutable_amplitudes();
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (bits::gather(i, qubits) == outcome) {
            p += std::norm(amps[i]);
        }
    }
    detail::require(p > 0.0, "project_register", "outcome has zero probability");
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (bits::gather(i, qubits) == outcome) {
            amps[i] *= scale;
        } else {
            amps[i] = 0.0;
        }
    }
    state.check_norm("project_register");
    return {outcome, p};
}

/**
 * @brief Projective measurement of `qubits` with Born-rule sampling.
 *
 * Consumes exactly one uniform draw from `rng`, so a fixed seed and call
 * sequence reproduce the same outcomes bit for bit.
 */
inline MeasurementOutcome measure_register(StateVector &state,
                                           std::span<const std::size_t> qubits,
                                           RandomStream &rng) {
    const auto probs = register_distribution(state, qubits);
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::uint64_t chosen = probs.size();
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t v = 0; v < probs.size(); ++v) {
        if (probs[v] > 0.0) {
            last_nonzero = v;
        }
        cumulative += probs[v];
        if (chosen == probs.size() && u < cumulative && probs[v] > 0.0) {
            chosen = v;
        }
    }
    if (chosen == probs.size()) {
        // u landed in the rounding gap above the accumulated total.
        chosen = last_nonzero;
    }
    return project_register(state, qubits, chosen);
}

inline MeasurementOutcome measure_register(StateVector &state,
                                           std::initializer_list<std::size_t> qubits,
                                           RandomStream &rng) {
    return measure_register(
        state, std::span<const std::size_t>(qubits.begin(), qubits.size()), rng);
}

} // namespace spectral_qpe
