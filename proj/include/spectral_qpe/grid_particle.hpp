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
 * Single particle on a periodic 1-D grid of 2^l points, evolved by the
 * split-operator recipe: potential phases in the position basis, a forward
 * QFT into momentum space, kinetic phases there, and an inverse QFT back.
 *
 * Momentum index p maps to the centered value p~ = p for p < 2^{l-1} and
 * p - 2^l otherwise; the kinetic energy is T(p~) = (2 pi p~ / 2^l)^2 / (2 m)
 * in grid units (spacing 1).
 */
#pragma once

#include "hamiltonian_terms.hpp"
#include "qft.hpp"
#include "statevector.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace spectral_qpe {

class GridParticle {
  public:
    GridParticle(std::size_t grid_qubits, std::vector<double> potential, double mass)
        : qubits_(grid_qubits), potential_(std::move(potential)), mass_(mass) {
        detail::require(qubits_ >= 2 && qubits_ <= 10, "build_grid_particle",
                        "grid qubits must lie in [2, 10]");
        detail::require(potential_.size() == (std::size_t{1} << qubits_),
                        "build_grid_particle",
                        "potential must have 2^l samples");
        for (double v : potential_) {
            detail::require(std::isfinite(v), "build_grid_particle",
                            "potential values must be finite");
        }
        detail::require(std::isfinite(mass_) && mass_ > 0.0,
                        "build_grid_particle", "mass must be positive");
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t points() const noexcept { return potential_.size(); }
    [[nodiscard]] double mass() const noexcept { return mass_; }
    [[nodiscard]] const std::vector<double> &potential() const noexcept {
        return potential_;
    }

    [[nodiscard]] static long centered_momentum(std::size_t p, std::size_t points) {
        const auto sp = static_cast<long>(p);
        return p < points / 2 ? sp : sp - static_cast<long>(points);
    }

    [[nodiscard]] std::vector<double> kinetic() const {
        const std::size_t n = points();
        std::vector<double> t(n);
        for (std::size_t p = 0; p < n; ++p) {
            const double k = 2.0 * std::numbers::pi *
                             static_cast<double>(centered_momentum(p, n)) /
                             static_cast<double>(n);
            t[p] = k * k / (2.0 * mass_);
        }
        return t;
    }

    /**
     * @brief One slice e^{-iK dt} e^{-iV dt} on `system` (position basis in,
     * position basis out), conditioned on `controls`.
     *
     * Only the diagonal phase layers carry the controls: with them
     * switched off the two transforms cancel exactly.
     */
    void step(StateVector &state, double dt, std::span<const std::size_t> system,
              std::span<const std::size_t> controls = {}) const {
        detail::require(system.size() == qubits_, "GridParticle::step",
                        "system register size mismatch");
        std::vector<complex_t> phases(points());
        for (std::size_t x = 0; x < points(); ++x) {
            phases[x] = std::polar(1.0, -potential_[x] * dt);
        }
        apply_controlled_diagonal(state, phases, controls, system);
        qft_forward(state, system);
        const auto t = kinetic();
        for (std::size_t p = 0; p < points(); ++p) {
            phases[p] = std::polar(1.0, -t[p] * dt);
        }
        apply_controlled_diagonal(state, phases, controls, system);
        qft_inverse(state, system);
    }

    /**
     * @brief Dense H = diag(V) + F^dagger diag(T) F, with F the forward DFT
     * matrix F_{kj} = e^{+2 pi i jk/N} / sqrt(N). Reference for the oracle.
     */
    [[nodiscard]] CMatrix dense_hamiltonian() const {
        const auto n = static_cast<Eigen::Index>(points());
        CMatrix f(n, n);
        const double norm = 1.0 / std::sqrt(static_cast<double>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto jk = static_cast<double>((j * k) % n);
                f(k, j) = std::polar(norm, 2.0 * std::numbers::pi * jk /
                                               static_cast<double>(n));
            }
        }
        const auto t = kinetic();
        CVector td(n);
        for (Eigen::Index p = 0; p < n; ++p) {
            td(p) = t[static_cast<std::size_t>(p)];
        }
        CMatrix h = f.adjoint() * td.asDiagonal() * f;
        for (Eigen::Index x = 0; x < n; ++x) {
            h(x, x) += potential_[static_cast<std::size_t>(x)];
        }
        return 0.5 * (h + h.adjoint());
    }

  private:
    std::size_t qubits_;
    std::vector<double> potential_;
    double mass_;
};

inline GridParticle build_grid_particle(std::size_t grid_qubits,
                                        std::vector<double> potential, double mass) {
    return GridParticle(grid_qubits, std::move(potential), mass);
}

/// Split-operator evolution for time `params.time` in `params.slices` steps.
struct GridEvolution {
    GridParticle particle;
    EvolutionParams params;
};

/**
 * @brief Dense matrix of the split-operator propagator, built column by
 * column by running the recipe on each position basis state.
 */
inline CMatrix grid_trotter_unitary(const GridParticle &particle,
                                    const EvolutionParams &params) {
    params.validate();
    const std::size_t l = particle.num_qubits();
    std::vector<std::size_t> system(l);
    for (std::size_t q = 0; q < l; ++q) {
        system[q] = q;
    }
    const double dt = params.time / static_cast<double>(params.slices);
    const auto n = static_cast<Eigen::Index>(particle.points());
    CMatrix u(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        auto psi = StateVector::basis(l, static_cast<std::size_t>(col));
        for (std::size_t s = 0; s < params.slices; ++s) {
            particle.step(psi, dt, system);
        }
        for (Eigen::Index row = 0; row < n; ++row) {
            u(row, col) = psi[static_cast<std::size_t>(row)];
        }
    }
    return u;
}

/**
 * @brief Samples a named potential on 2^l grid points.
 *
 * Accepted forms: "zero", "constant:c", "harmonic:omega,x0" (the latter is
 * V(x) = omega^2 (x - x0)^2 / 2 for unit mass).
 */
inline std::vector<double> sample_potential(const std::string &spec,
                                            std::size_t grid_qubits) {
    detail::require(grid_qubits >= 1 && grid_qubits <= 20, "sample_potential",
                    "grid qubits out of range");
    const std::size_t n = std::size_t{1} << grid_qubits;
    std::vector<double> v(n, 0.0);
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse = [&spec](const std::string &text) {
        std::size_t used = 0;
        double out = 0.0;
        try {
            out = std::stod(text, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        detail::require(used == text.size() && !text.empty() && std::isfinite(out),
                        "sample_potential", "bad number in '" + spec + "'");
        return out;
    };
    if (name == "zero" && colon == std::string::npos) {
        return v;
    }
    if (name == "constant") {
        const double c = parse(args);
        std::fill(v.begin(), v.end(), c);
        return v;
    }
    if (name == "harmonic") {
        const auto comma = args.find(',');
        detail::require(comma != std::string::npos, "sample_potential",
                        "harmonic needs 'omega,x0'");
        const double omega = parse(args.substr(0, comma));
        const double x0 = parse(args.substr(comma + 1));
        for (std::size_t x = 0; x < n; ++x) {
            const double d = static_cast<double>(x) - x0;
            v[x] = 0.5 * omega * omega * d * d;
        }
        return v;
    }
    detail::fail("sample_potential", "unknown potential '" + spec + "'");
}

} // namespace spectral_qpe
