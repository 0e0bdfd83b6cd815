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
 * Phase estimation: index superposition, conditional powers of U, Fourier
 * readout, sampling of eigenphases and collapse onto eigenvectors.
 *
 * The machine starts as |0>_index |V_a>_system |0>_work. After the
 * Hadamard layer and the conditional powers it holds
 * (1/sqrt(M)) sum_j |j> U^j |V_a>; an inverse QFT on the index register
 * then concentrates each eigencomponent c_k |phi_k> near bin
 * omega_k M / (2 pi), where U phi_k = e^{i omega_k} phi_k.
 */
#pragma once

#include "error.hpp"
#include "grid_particle.hpp"
#include "hamiltonian.hpp"
#include "oracle.hpp"
#include "qft.hpp"
#include "rng.hpp"
#include "statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

namespace spectral_qpe {

enum class PowerMethod {
    /// M iterations of "flag = [i <= j]; controlled-U on flag; unflag".
    flag_loop,
    /// Controlled-U^{2^s} from index qubit s.
    binary_power,
};

enum class Readout {
    inverse_qft,
    /// Wrong-sign readout; only used as a negative control by audits.
    forward_qft,
};

/// A dense unitary on the system register, labelled by the time t it
/// represents (energies are reported as if U = e^{-iHt}).
struct DenseUnitary {
    GateMatrix gate;
    double time = 1.0;
};

/// U = Trotterized e^{-iHt}.
struct TrotterEvolution {
    HamiltonianSum hamiltonian;
    EvolutionParams params;
};

using UnitaryImplementation = std::variant<DenseUnitary, TrotterEvolution, GridEvolution>;

inline double evolution_time(const UnitaryImplementation &u) {
    return std::visit(
        [](const auto &impl) {
            using T = std::decay_t<decltype(impl)>;
            if constexpr (std::is_same_v<T, DenseUnitary>) {
                return impl.time;
            } else {
                return impl.params.time;
            }
        },
        u);
}

inline std::size_t unitary_qubits(const UnitaryImplementation &u) {
    return std::visit(
        [](const auto &impl) -> std::size_t {
            using T = std::decay_t<decltype(impl)>;
            if constexpr (std::is_same_v<T, DenseUnitary>) {
                return impl.gate.arity();
            } else if constexpr (std::is_same_v<T, TrotterEvolution>) {
                return impl.hamiltonian.num_qubits();
            } else {
                return impl.particle.num_qubits();
            }
        },
        u);
}

struct PhaseEstimationConfig {
    RegisterLayout layout;
    UnitaryImplementation unitary;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    PowerMethod power_method = PowerMethod::binary_power;
    /// Peak detection threshold; default max(0.05, 4 / sqrt(trials)).
    std::optional<double> threshold;
    std::size_t threads = 1;
    Readout readout = Readout::inverse_qft;

    void validate() const {
        detail::require(unitary_qubits(unitary) == layout.system_qubits(),
                        "PhaseEstimationConfig",
                        "unitary acts on " + std::to_string(unitary_qubits(unitary)) +
                            " qubits but the system register has " +
                            std::to_string(layout.system_qubits()));
        detail::require(trials >= 1, "PhaseEstimationConfig", "trials must be >= 1");
        detail::require(threads >= 1, "PhaseEstimationConfig", "threads must be >= 1");
        detail::require(evolution_time(unitary) != 0.0, "PhaseEstimationConfig",
                        "evolution time must be nonzero");
        if (power_method == PowerMethod::flag_loop) {
            detail::require(layout.work_qubits() >= 1, "PhaseEstimationConfig",
                            "flag-loop method needs one work qubit for the flag");
        }
        if (const auto *t = std::get_if<TrotterEvolution>(&unitary)) {
            t->params.validate();
        } else if (const auto *g = std::get_if<GridEvolution>(&unitary)) {
            g->params.validate();
        }
    }

    [[nodiscard]] double effective_threshold() const {
        return threshold.value_or(
            std::max(0.05, 4.0 / std::sqrt(static_cast<double>(trials))));
    }
};

struct PhaseSample {
    std::size_t bin;
    /// 2 pi bin / M.
    double phase;
    double energy;
    StateVector collapsed_state;
};

struct Histogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t trials = 0;

    [[nodiscard]] std::vector<double> probabilities() const {
        std::vector<double> p(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            p[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
        }
        return p;
    }
};

struct Peak {
    std::size_t bin;
    double phase;
    double energy;
    double probability;
    std::uint64_t count;
    /// System state after collapsing on this bin.
    StateVector eigenvector;
};

struct EigenResult {
    /// Bin observed in each trial, in trial order.
    std::vector<std::size_t> sampled_bins;
    Histogram histogram;
    /// Sorted by descending probability, ties by ascending bin.
    std::vector<Peak> peaks;
    double threshold = 0.0;
};

/**
 * @brief Energy from an eigenphase of U = e^{-iHt}.
 *
 * omega = -E t mod 2 pi, so E = -omega / t wrapped into (-pi/|t|, pi/|t|].
 * Energies outside that window alias; choosing t is the caller's job.
 */
inline double phase_to_energy(double phase, double t) {
    detail::require(t != 0.0, "phase_to_energy", "time must be nonzero");
    const double period = 2.0 * std::numbers::pi / std::abs(t);
    const double raw = -phase / t;
    const double wrapped = raw - period * std::ceil((raw - period / 2.0) / period);
    return wrapped == 0.0 ? 0.0 : wrapped;
}

/// Energy resolution of one bin, 2 pi / (M |t|).
inline double bin_width_energy(std::size_t bins, double t) {
    return 2.0 * std::numbers::pi / (static_cast<double>(bins) * std::abs(t));
}

/**
 * @brief Fejer-type leakage kernel
 * F_M(d) = sin^2(M d / 2) / (M^2 sin^2(d / 2)), with F_M(0) = 1.
 */
inline double fejer_kernel(std::size_t bins, double delta) {
    const double d = std::remainder(delta, 2.0 * std::numbers::pi);
    const double half = 0.5 * d;
    const double den = std::sin(half);
    if (std::abs(den) < 1e-15) {
        return 1.0;
    }
    const double m = static_cast<double>(bins);
    const double ratio = std::sin(m * half) / (m * den);
    return ratio * ratio;
}

struct PhaseComponent {
    double weight;
    double phase;
};

/**
 * @brief Closed-form index distribution after the inverse QFT:
 * P(j) = sum_k |c_k|^2 F_M(omega_k - 2 pi j / M).
 */
inline std::vector<double>
analytic_bin_distribution(std::span<const PhaseComponent> components,
                          std::size_t index_qubits) {
    detail::require(index_qubits >= 1 && index_qubits <= max_qubits,
                    "analytic_bin_distribution", "index qubits out of range");
    double total = 0.0;
    for (const auto &c : components) {
        detail::require(c.weight >= 0.0, "analytic_bin_distribution",
                        "negative weight");
        total += c.weight;
    }
    detail::require(std::abs(total - 1.0) <= 1e-9, "analytic_bin_distribution",
                    "weights sum to " + std::to_string(total) + ", expected 1");
    const std::size_t bins = std::size_t{1} << index_qubits;
    std::vector<double> p(bins, 0.0);
    for (std::size_t j = 0; j < bins; ++j) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(bins);
        for (const auto &c : components) {
            if (c.weight > 0.0) {
                p[j] += c.weight * fejer_kernel(bins, c.phase - theta);
            }
        }
    }
    return p;
}

inline std::vector<double>
analytic_bin_distribution(std::span<const SpectralComponent> components,
                          std::size_t index_qubits) {
    std::vector<PhaseComponent> pc;
    pc.reserve(components.size());
    for (const auto &c : components) {
        pc.push_back({c.weight, c.phase});
    }
    return analytic_bin_distribution(std::span<const PhaseComponent>(pc), index_qubits);
}

/**
 * @brief Closed-form weight of the eigenspace `members` in the system state
 * left behind after observing `bin`:
 * sum_{k in S} |c_k|^2 F_M(omega_k - theta_j) / P(j).
 */
inline double analytic_collapse_weight(std::span<const SpectralComponent> components,
                                       std::span<const std::size_t> members,
                                       std::size_t index_qubits, std::size_t bin) {
    const std::size_t bins = std::size_t{1} << index_qubits;
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(bin) / static_cast<double>(bins);
    double total = 0.0;
    double inside = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        const double w =
            components[k].weight * fejer_kernel(bins, components[k].phase - theta);
        total += w;
        if (std::find(members.begin(), members.end(), k) != members.end()) {
            inside += w;
        }
    }
    detail::require(total > 0.0, "analytic_collapse_weight",
                    "bin has zero probability");
    return inside / total;
}

/**
 * @brief Weight of `collapsed` in the eigenspace of `d` whose eigenvalues
 * lie within `tol` of `energy`.
 *
 * Throws InvalidArgument when no eigenvalue is that close, which means the
 * peak was mis-identified.
 */
inline double eigenvector_fidelity(const StateVector &collapsed,
                                   const SpectralDecomposition &d, double energy,
                                   double tol) {
    const auto members = eigenspace_indices(d, energy, tol);
    detail::require(!members.empty(), "eigenvector_fidelity",
                    "no reference eigenvalue within " + std::to_string(tol) +
                        " of energy " + std::to_string(energy));
    return std::clamp(projected_weight(collapsed, d, members), 0.0, 1.0);
}

inline double eigenvector_fidelity(const StateVector &collapsed,
                                   const HamiltonianSum &h, double energy,
                                   double tol) {
    return eigenvector_fidelity(collapsed, eigendecompose(assemble_dense(h)), energy,
                                tol);
}

/**
 * @brief Controlled application of U^p for the configured implementation.
 *
 * Dense unitaries cache U^{2^s} by repeated squaring; circuit-based ones
 * (Trotter, grid recipe) are simply repeated p times under the controls.
 */
class ControlledEvolution {
  public:
    ControlledEvolution(const UnitaryImplementation &unitary,
                        const RegisterLayout &layout)
        : unitary_(unitary), system_(layout.system_register()),
          offset_(layout.system_offset()) {
        if (const auto *dense = std::get_if<DenseUnitary>(&unitary_)) {
            powers_.push_back(dense->gate);
            for (std::size_t s = 1; s < layout.index_qubits(); ++s) {
                powers_.push_back(powers_.back().then_after(powers_.back()));
            }
        } else if (const auto *trotter = std::get_if<TrotterEvolution>(&unitary_)) {
            const auto &p = trotter->params;
            circuit_.emplace(trotter->hamiltonian,
                             p.time / static_cast<double>(p.slices));
        }
    }

    void apply_power(StateVector &state, std::span<const std::size_t> controls,
                     std::size_t power) const {
        if (power == 0) {
            return;
        }
        if (std::holds_alternative<DenseUnitary>(unitary_)) {
            for (std::size_t s = 0; (power >> s) != 0; ++s) {
                if (((power >> s) & 1U) == 0) {
                    continue;
                }
                if (s < powers_.size()) {
                    apply_controlled_gate(state, powers_[s], controls, system_);
                } else {
                    for (std::size_t rep = 0; rep < (std::size_t{1} << s); ++rep) {
                        apply_controlled_gate(state, powers_.front(), controls, system_);
                    }
                }
            }
        } else if (const auto *trotter = std::get_if<TrotterEvolution>(&unitary_)) {
            const std::size_t reps = power * trotter->params.slices;
            for (std::size_t r = 0; r < reps; ++r) {
                circuit_->apply(state, offset_, controls);
            }
        } else {
            const auto &grid = std::get<GridEvolution>(unitary_);
            const double dt = grid.params.time / static_cast<double>(grid.params.slices);
            const std::size_t reps = power * grid.params.slices;
            for (std::size_t r = 0; r < reps; ++r) {
                grid.particle.step(state, dt, system_, controls);
            }
        }
    }

  private:
    UnitaryImplementation unitary_;
    std::vector<std::size_t> system_;
    std::size_t offset_;
    std::vector<GateMatrix> powers_;
    std::optional<TrotterCircuit> circuit_;
};

namespace detail {

/// Largest amplitude among basis states where `mask` has any bit set.
inline double max_amplitude_where(const StateVector &state, std::size_t mask) {
    double worst = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) {
            worst = std::max(worst, std::abs(amps[i]));
        }
    }
    return worst;
}

inline constexpr double register_zero_tolerance = 1e-9;

} // namespace detail

/// Hadamard on every index qubit; the index register must start in |0...0>.
inline void prepare_index_superposition(StateVector &state, const RegisterLayout &layout) {
    detail::require(state.num_qubits() == layout.total(), "prepare_index_superposition",
                    "state size does not match layout");
    const std::size_t index_mask = layout.bins() - 1;
    detail::require(detail::max_amplitude_where(state, index_mask) <=
                        detail::register_zero_tolerance,
                    "prepare_index_superposition", "index register is not in |0...0>");
    for (auto q : layout.index_register()) {
        detail::hadamard_kernel(state, q);
    }
    state.check_norm("prepare_index_superposition");
}

class PhaseEstimator {
  public:
    explicit PhaseEstimator(PhaseEstimationConfig config)
        : config_((config.validate(), std::move(config))),
          evolution_(config_.unitary, config_.layout) {}

    [[nodiscard]] const PhaseEstimationConfig &config() const noexcept { return config_; }
    [[nodiscard]] const RegisterLayout &layout() const noexcept { return config_.layout; }
    [[nodiscard]] double time() const { return evolution_time(config_.unitary); }

    /// |0>_index |va>_system |0>_work.
    [[nodiscard]] StateVector initial_state(const StateVector &va) const {
        detail::require(va.num_qubits() == layout().system_qubits(), "run_phase_estimation",
                        "guess state has the wrong number of qubits");
        va.check_norm("run_phase_estimation");
        std::vector<complex_t> amps(std::size_t{1} << layout().total());
        for (std::size_t s = 0; s < va.dimension(); ++s) {
            amps[s << layout().system_offset()] = va[s];
        }
        return StateVector::from_amplitudes(layout().total(), std::move(amps));
    }

    void prepare_index_superposition(StateVector &state) const {
        spectral_qpe::prepare_index_superposition(state, layout());
    }

    /**
     * The flag loop: for i = 1..M set flag = [i <= j] from the index
     * register, apply U controlled on the flag, then clear the flag again.
     * Index value j therefore receives exactly j applications of U.
     */
    void apply_conditional_powers_flag_loop(StateVector &state) const {
        detail::require(layout().work_qubits() >= 1, "apply_conditional_powers_flag_loop",
                        "no work qubit available for the flag");
        const std::size_t flag = layout().work_offset();
        const std::size_t bins = layout().bins();
        const std::size_t controls[1] = {flag};
        detail::require(detail::max_amplitude_where(state, std::size_t{1} << flag) <=
                            detail::register_zero_tolerance,
                        "apply_conditional_powers_flag_loop", "flag qubit is not |0>");
        for (std::size_t i = 1; i <= bins; ++i) {
            auto at_least_i = [bins, i](std::size_t idx) { return (idx & (bins - 1)) >= i; };
            flip_flag_if(state, flag, at_least_i);
            evolution_.apply_power(state, controls, 1);
            flip_flag_if(state, flag, at_least_i);
        }
        if (detail::max_amplitude_where(state, std::size_t{1} << flag) >
            detail::register_zero_tolerance) {
            throw ContractViolation("apply_conditional_powers_flag_loop: flag not restored");
        }
        state.check_norm("apply_conditional_powers_flag_loop");
    }

    void apply_conditional_powers_binary(StateVector &state) const {
        for (std::size_t s = 0; s < layout().index_qubits(); ++s) {
            const std::size_t controls[1] = {s};
            evolution_.apply_power(state, controls, std::size_t{1} << s);
        }
        state.check_norm("apply_conditional_powers_binary");
    }

    void apply_conditional_powers(StateVector &state) const {
        if (config_.power_method == PowerMethod::flag_loop) {
            apply_conditional_powers_flag_loop(state);
        } else {
            apply_conditional_powers_binary(state);
        }
    }

    void readout(StateVector &state) const {
        const auto reg = layout().index_register();
        if (config_.readout == Readout::inverse_qft) {
            qft_inverse(state, reg);
        } else {
            qft_forward(state, reg);
        }
    }

    /// Everything up to (not including) the index measurement.
    [[nodiscard]] StateVector pre_measurement_state(const StateVector &va) const {
        auto state = initial_state(va);
        prepare_index_superposition(state);
        apply_conditional_powers(state);
        readout(state);
        return state;
    }

    /// Exact Born distribution over bins, no sampling.
    [[nodiscard]] std::vector<double> exact_distribution(const StateVector &va) const {
        return register_distribution(pre_measurement_state(va), layout().index_register());
    }

    [[nodiscard]] double bin_phase(std::size_t bin) const {
        return 2.0 * std::numbers::pi * static_cast<double>(bin) /
               static_cast<double>(layout().bins());
    }

    [[nodiscard]] double bin_energy(std::size_t bin) const {
        return phase_to_energy(bin_phase(bin), time());
    }

    /// System-register state left after the index register reads `bin`.
    [[nodiscard]] StateVector extract_system_state(const StateVector &collapsed,
                                                   std::size_t bin) const {
        if (layout().work_qubits() > 0) {
            const std::size_t work_mask = ((std::size_t{1} << layout().work_qubits()) - 1)
                                          << layout().work_offset();
            if (detail::max_amplitude_where(collapsed, work_mask) >
                detail::register_zero_tolerance) {
                throw ContractViolation("extract_system_state: work register is not |0>");
            }
        }
        std::vector<complex_t> sys(std::size_t{1} << layout().system_qubits());
        for (std::size_t s = 0; s < sys.size(); ++s) {
            sys[s] = collapsed[bin | (s << layout().system_offset())];
        }
        return StateVector::from_amplitudes(layout().system_qubits(), std::move(sys));
    }

    /// Deterministic post-selection of `pre` on `bin`.
    [[nodiscard]] StateVector collapse_on_bin(const StateVector &pre, std::size_t bin) const {
        auto state = pre;
        project_register(state, layout().index_register(), bin);
        return extract_system_state(state, bin);
    }

    [[nodiscard]] PhaseSample measure(const StateVector &pre, RandomStream &rng) const {
        auto state = pre;
        const auto outcome = measure_register(state, layout().index_register(), rng);
        const auto bin = static_cast<std::size_t>(outcome.bits);
        return {bin, bin_phase(bin), bin_energy(bin), extract_system_state(state, bin)};
    }

    [[nodiscard]] PhaseSample run(const StateVector &va, RandomStream &rng) const {
        return measure(pre_measurement_state(va), rng);
    }

    /**
     * @brief `trials` phase estimations; trial i measures with stream i of
     * the configured seed.
     *
     * The unitary part of every trial is identical, so it is simulated once
     * and each trial measures its own copy. Results do not depend on the
     * thread count.
     */
    [[nodiscard]] EigenResult sample_spectrum(const StateVector &va) const {
        const auto pre = pre_measurement_state(va);
        const auto reg = layout().index_register();
        const std::size_t trials = config_.trials;
        std::vector<std::size_t> bins(trials);

        auto worker = [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                auto rng = RandomStream::derived(config_.seed, t);
                auto state = pre;
                bins[t] = static_cast<std::size_t>(measure_register(state, reg, rng).bits);
            }
        };
        const std::size_t threads = std::min(config_.threads, trials);
        if (threads <= 1) {
            worker(0, trials);
        } else {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (trials + threads - 1) / threads;
            for (std::size_t w = 0; w < threads; ++w) {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(trials, begin + chunk);
                if (begin < end) {
                    pool.emplace_back(worker, begin, end);
                }
            }
        }

        EigenResult result;
        result.sampled_bins = std::move(bins);
        result.histogram.counts.assign(layout().bins(), 0);
        result.histogram.trials = trials;
        for (auto b : result.sampled_bins) {
            ++result.histogram.counts[b];
        }
        result.threshold = config_.effective_threshold();
        const auto probs = result.histogram.probabilities();
        std::vector<std::size_t> order;
        for (std::size_t b = 0; b < probs.size(); ++b) {
            if (result.histogram.counts[b] > 0 && probs[b] >= result.threshold) {
                order.push_back(b);
            }
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return probs[a] > probs[b];
        });
        for (auto b : order) {
            result.peaks.push_back({b, bin_phase(b), bin_energy(b), probs[b],
                                    result.histogram.counts[b], collapse_on_bin(pre, b)});
        }
        return result;
    }

  private:
    PhaseEstimationConfig config_;
    ControlledEvolution evolution_;
};

inline void apply_conditional_powers_flag_loop(StateVector &state,
                                               const PhaseEstimationConfig &config) {
    PhaseEstimator(config).apply_conditional_powers_flag_loop(state);
}

inline void apply_conditional_powers_binary(StateVector &state,
                                            const PhaseEstimationConfig &config) {
    PhaseEstimator(config).apply_conditional_powers_binary(state);
}

inline PhaseSample run_phase_estimation(const StateVector &va,
                                        const PhaseEstimationConfig &config) {
    auto rng = RandomStream::derived(config.seed, 0);
    return PhaseEstimator(config).run(va, rng);
}

inline EigenResult sample_spectrum(const StateVector &va, const PhaseEstimationConfig &config) {
    return PhaseEstimator(config).sample_spectrum(va);
}

} // namespace spectral_qpe
