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
 * Turns a validated RunConfig into the objects the pipeline consumes.
 */
#pragma once

#include "config.hpp"

#include <optional>

namespace spectral_qpe::cli {

struct BuiltProblem {
    std::size_t system_qubits = 0;
    std::optional<HamiltonianSum> hamiltonian;
    std::optional<GridParticle> grid;
    std::optional<GateMatrix> unitary;
    std::optional<StateVector> guess;

    [[nodiscard]] bool has_hamiltonian() const { return hamiltonian || grid; }

    /// Dense system Hamiltonian, when one exists and fits the oracle.
    [[nodiscard]] std::optional<CMatrix> dense_hamiltonian() const {
        if (system_qubits > max_dense_qubits) {
            return std::nullopt;
        }
        if (hamiltonian) {
            return assemble_dense(*hamiltonian);
        }
        if (grid) {
            return grid->dense_hamiltonian();
        }
        return std::nullopt;
    }
};

namespace detail {

inline CMatrix matrix_from_pairs(const std::vector<double> &flat, std::size_t dim,
                                 const std::string &key) {
    if (flat.size() != 2 * dim * dim) {
        throw ConfigError(key, "expected " + std::to_string(2 * dim * dim) +
                                   " numbers (row-major re, im pairs), got " +
                                   std::to_string(flat.size()));
    }
    CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const std::size_t at = 2 * (r * dim + c);
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {flat[at],
                                                                             flat[at + 1]};
        }
    }
    return m;
}

template <class Fn>
auto as_config_error(const std::string &key, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const InvalidArgument &e) {
        throw ConfigError(key, e.what());
    }
}

inline StateVector build_guess(const RunConfig &cfg, std::size_t l) {
    const auto &g = cfg.guess;
    return as_config_error("guess", [&]() -> StateVector {
        if (g.type == "uniform") {
            return uniform_guess(l);
        }
        if (g.type == "basis") {
            return StateVector::basis(l, g.index);
        }
        if (g.type == "product") {
            std::vector<std::array<complex_t, 2>> factors;
            for (const auto &f : g.factors) {
                factors.push_back({complex_t{f[0], f[1]}, complex_t{f[2], f[3]}});
            }
            return product_state_guess(l, factors);
        }
        if (g.type == "amplitudes") {
            if (g.values.size() % 2 != 0) {
                throw ConfigError("guess.values", "expected (re, im) pairs");
            }
            std::vector<complex_t> amps;
            for (std::size_t i = 0; i < g.values.size(); i += 2) {
                amps.emplace_back(g.values[i], g.values[i + 1]);
            }
            return StateVector::from_amplitudes(l, std::move(amps));
        }
        if (g.type == "gaussian") {
            return gaussian_guess(l, g.center, g.width);
        }
        throw ConfigError("guess.type", "unknown guess type '" + g.type + "'");
    });
}

} // namespace detail

inline BuiltProblem build_problem(const RunConfig &cfg) {
    BuiltProblem p;
    p.system_qubits = cfg.system_qubits();
    switch (cfg.problem) {
    case ProblemKind::tfim:
        p.hamiltonian = detail::as_config_error("tfim", [&] {
            return build_transverse_ising(cfg.tfim.sites, cfg.tfim.coupling, cfg.tfim.field);
        });
        break;
    case ProblemKind::grid:
        p.grid = detail::as_config_error("grid", [&] {
            std::vector<double> v;
            if (const auto *name = std::get_if<std::string>(&cfg.grid.potential)) {
                v = sample_potential(*name, cfg.grid.qubits);
            } else {
                v = std::get<std::vector<double>>(cfg.grid.potential);
            }
            return build_grid_particle(cfg.grid.qubits, std::move(v), cfg.grid.mass);
        });
        break;
    case ProblemKind::explicit_terms: {
        std::vector<LocalTerm> terms;
        const auto &spec = cfg.explicit_terms;
        for (std::size_t i = 0; i < spec.terms.size(); ++i) {
            const std::string key = "explicit_terms.terms[" + std::to_string(i) + "]";
            const auto &t = spec.terms[i];
            if (t.support.empty() || t.support.size() > max_term_arity) {
                throw ConfigError(key + ".support", "must list 1..6 qubits");
            }
            auto m = detail::matrix_from_pairs(t.matrix, std::size_t{1} << t.support.size(),
                                               key + ".matrix");
            terms.push_back(detail::as_config_error(
                key, [&] { return LocalTerm(t.support, std::move(m)); }));
        }
        if (terms.empty()) {
            throw ConfigError("explicit_terms.terms", "needs at least one term");
        }
        p.hamiltonian = detail::as_config_error("explicit_terms", [&] {
            return HamiltonianSum(std::move(terms), spec.system_qubits);
        });
        break;
    }
    case ProblemKind::explicit_unitary: {
        const auto &spec = cfg.explicit_unitary;
        if (spec.system_qubits < 1 || spec.system_qubits > max_gate_arity) {
            throw ConfigError("explicit_unitary.system_qubits",
                              "must lie in [1, " + std::to_string(max_gate_arity) + "]");
        }
        auto m = detail::matrix_from_pairs(spec.matrix, std::size_t{1} << spec.system_qubits,
                                           "explicit_unitary.matrix");
        p.unitary = detail::as_config_error("explicit_unitary.matrix",
                                            [&] { return GateMatrix::from_matrix(std::move(m)); });
        break;
    }
    }
    p.guess = detail::build_guess(cfg, p.system_qubits);
    return p;
}

/// The implementation of U the pipeline will run.
inline UnitaryImplementation make_unitary(const BuiltProblem &p, const RunConfig &cfg,
                                          bool force_exact = false) {
    const bool exact = force_exact || !cfg.slices;
    if (p.unitary) {
        return DenseUnitary{*p.unitary, cfg.time};
    }
    if (exact) {
        const auto h = p.dense_hamiltonian();
        if (!h) {
            throw ConfigError("slices", "exact evolution needs a dense-feasible system");
        }
        return DenseUnitary{hermitian_exponential(*h, cfg.time), cfg.time};
    }
    const EvolutionParams params{cfg.time, *cfg.slices, 1e-3};
    if (p.grid) {
        return GridEvolution{*p.grid, params};
    }
    return TrotterEvolution{*p.hamiltonian, params};
}

inline PhaseEstimationConfig make_estimation_config(const BuiltProblem &p, const RunConfig &cfg,
                                                    bool force_exact = false) {
    return {RegisterLayout(cfg.index_qubits, p.system_qubits, cfg.work_qubits()),
            make_unitary(p, cfg, force_exact),
            cfg.trials,
            cfg.seed,
            cfg.power_method,
            cfg.threshold,
            cfg.threads,
            Readout::inverse_qft};
}

} // namespace spectral_qpe::cli
