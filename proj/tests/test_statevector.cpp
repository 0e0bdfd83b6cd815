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
#include "catch_amalgamated.hpp"

#include "support/reference.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

using namespace spectral_qpe;
using Catch::Matchers::WithinAbs;

namespace {
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

StateVector plus_state() {
    return StateVector::from_amplitudes(1, {inv_sqrt2, inv_sqrt2});
}
} // namespace

TEST_CASE("Basis states", "[statevector]") {
    auto s = StateVector::basis(2, 0);
    REQUIRE(s.dimension() == 4);
    CHECK(s[0] == complex_t{1.0});
    CHECK(s[1] == complex_t{0.0});
    CHECK(s[2] == complex_t{0.0});
    CHECK(s[3] == complex_t{0.0});

    auto t = StateVector::basis(1, 1);
    CHECK(t[0] == complex_t{0.0});
    CHECK(t[1] == complex_t{1.0});

    auto u = StateVector::basis(3, 5);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(u[i] == complex_t{i == 5 ? 1.0 : 0.0});
    }

    CHECK_THROWS_AS(StateVector::basis(2, 4), InvalidArgument);
    CHECK_THROWS_AS(StateVector::basis(0, 0), InvalidArgument);
    CHECK_THROWS_AS(StateVector::basis(max_qubits + 1, 0), InvalidArgument);
}

TEST_CASE("Loading amplitudes", "[statevector]") {
    auto plus = plus_state();
    CHECK_THAT(plus.norm_squared(), WithinAbs(1.0, 1e-15));

    auto s = StateVector::from_amplitudes(1, {0.6, 0.8});
    CHECK_THAT(s.norm_squared(), WithinAbs(1.0, 1e-15));
    CHECK(s[1] == complex_t{0.8});

    CHECK_THROWS_AS(StateVector::from_amplitudes(1, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(StateVector::from_amplitudes(2, {1.0, 0.0}), InvalidArgument);
}

TEST_CASE("Register layout", "[statevector]") {
    RegisterLayout layout(3, 2, 1);
    CHECK(layout.total() == 6);
    CHECK(layout.bins() == 8);
    CHECK(layout.index_register() == std::vector<std::size_t>{0, 1, 2});
    CHECK(layout.system_register() == std::vector<std::size_t>{3, 4});
    CHECK(layout.work_register() == std::vector<std::size_t>{5});
    CHECK_THROWS_AS(RegisterLayout(0, 2, 0), InvalidArgument);
    CHECK_THROWS_AS(RegisterLayout(2, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(RegisterLayout(20, 6, 1), InvalidArgument);
}

TEST_CASE("Gate matrices must be unitary", "[statevector]") {
    CHECK_THROWS_AS(GateMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(GateMatrix::from_rows({{1.0, 0.0, 0.0},
                                           {0.0, 1.0, 0.0},
                                           {0.0, 0.0, 1.0}}),
                    InvalidArgument);
    auto h = gates::hadamard();
    CHECK(h.arity() == 1);
    CHECK(max_abs_diff(h.then_after(h).matrix(), CMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("Single-qubit gate actions", "[statevector]") {
    auto s = StateVector::basis(1, 0);
    apply_gate(s, gates::hadamard(), {0});
    CHECK_THAT(s[0].real(), WithinAbs(inv_sqrt2, 1e-15));
    CHECK_THAT(s[1].real(), WithinAbs(inv_sqrt2, 1e-15));

    auto t = StateVector::basis(2, 0);
    apply_gate(t, gates::pauli_x(), {1});
    CHECK(t[2] == complex_t{1.0});
    CHECK(t[0] == complex_t{0.0});
}

TEST_CASE("Gate argument validation", "[statevector]") {
    auto s = StateVector::basis(3, 0);
    const auto cnot = GateMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    CHECK_THROWS_AS(apply_gate(s, cnot, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(s, cnot, {0, 3}), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(s, cnot, {0}), InvalidArgument);
    CHECK_THROWS_AS(apply_controlled_gate(s, gates::pauli_x(), {1}, {1}), InvalidArgument);
}

TEST_CASE("Random two-qubit gate matches the dense embedding", "[statevector]") {
    reference::Generator gen(11);
    auto s = gen.state(3);
    const CMatrix u = gen.unitary(4);
    const CVector expected = reference::kron_embedding(u, {0, 2}, 3) * reference::to_vector(s);
    apply_gate(s, GateMatrix::from_matrix(u), {0, 2});
    CHECK(reference::max_abs_diff(s, expected) <= 1e-10);
}

TEST_CASE("Oracle equivalence for random gates up to six qubits", "[statevector][property]") {
    reference::Generator gen(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t q = 1 + gen.index(6);
        const std::size_t k = 1 + gen.index(std::min<std::size_t>(q, 3));
        std::vector<std::size_t> pool(q);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<std::size_t> targets;
        for (std::size_t i = 0; i < k; ++i) {
            const auto pick = gen.index(pool.size());
            targets.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        auto s = gen.state(q);
        const CMatrix u = gen.unitary(std::size_t{1} << k);
        const CVector expected = reference::kron_embedding(u, targets, q) * reference::to_vector(s);
        apply_gate(s, GateMatrix::from_matrix(u), targets);
        CHECK(reference::max_abs_diff(s, expected) <= 1e-10);
    }
}

TEST_CASE("Gate application is linear", "[statevector][property]") {
    reference::Generator gen(5);
    const std::size_t q = 4;
    const CMatrix u = gen.unitary(4);
    const auto gate = GateMatrix::from_matrix(u);
    auto psi = gen.state(q);
    CVector combined = CVector::Zero(16);
    for (std::size_t b = 0; b < 16; ++b) {
        auto e = StateVector::basis(q, b);
        apply_gate(e, gate, {3, 1});
        combined += psi[b] * reference::to_vector(e);
    }
    apply_gate(psi, gate, {3, 1});
    CHECK(reference::max_abs_diff(psi, combined) <= 1e-10);
}

TEST_CASE("Norm is preserved on a 20-qubit state", "[statevector][property]") {
    reference::Generator gen(99);
    auto s = StateVector::basis(20, 12345);
    for (std::size_t q = 0; q < 20; ++q) {
        apply_gate(s, gates::hadamard(), {q});
    }
    apply_gate(s, GateMatrix::from_matrix(gen.unitary(8)), {19, 0, 7});
    apply_controlled_gate(s, GateMatrix::from_matrix(gen.unitary(4)), {4, 5}, {18, 2});
    CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-9);
}

TEST_CASE("Controlled gates", "[statevector]") {
    auto s = StateVector::basis(2, 1);
    apply_controlled_gate(s, gates::pauli_x(), {0}, {1});
    CHECK(s[3] == complex_t{1.0});

    auto t = StateVector::basis(2, 0);
    apply_controlled_gate(t, gates::pauli_x(), {0}, {1});
    CHECK(t[0] == complex_t{1.0});

    reference::Generator gen(3);
    const CMatrix u = gen.unitary(4);
    auto psi = gen.state(2);
    std::vector<complex_t> amps(8);
    for (std::size_t i = 0; i < 4; ++i) {
        amps[i << 1] = psi[i] * inv_sqrt2;
        amps[(i << 1) | 1] = psi[i] * inv_sqrt2;
    }
    auto joint = StateVector::from_amplitudes(3, amps);
    const CVector expected =
        reference::controlled_embedding(u, {0}, {1, 2}, 3) * reference::to_vector(joint);
    apply_controlled_gate(joint, GateMatrix::from_matrix(u), {0}, {1, 2});
    CHECK(reference::max_abs_diff(joint, expected) <= 1e-10);

    const CVector upsi = u * reference::to_vector(psi);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(joint[i << 1] - psi[i] * inv_sqrt2) <= 1e-12);
        CHECK(std::abs(joint[(i << 1) | 1] - upsi(static_cast<Eigen::Index>(i)) * inv_sqrt2) <= 1e-12);
    }
}

TEST_CASE("Controlled diagonal matches the dense reference", "[statevector]") {
    reference::Generator gen(8);
    auto s = gen.state(4);
    std::vector<complex_t> phases(4);
    CMatrix d = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        phases[i] = std::polar(1.0, gen.uniform(-3.0, 3.0));
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = phases[i];
    }
    const std::vector<std::size_t> controls{3};
    const std::vector<std::size_t> targets{2, 0};
    const CVector expected = reference::controlled_embedding(d, controls, targets, 4) * reference::to_vector(s);
    apply_controlled_diagonal(s, phases, controls, targets);
    CHECK(reference::max_abs_diff(s, expected) <= 1e-12);

    std::vector<complex_t> bad{1.0, 2.0};
    const std::vector<std::size_t> one{1};
    CHECK_THROWS_AS(apply_controlled_diagonal(s, bad, {}, one), InvalidArgument);
}

TEST_CASE("Inner products", "[statevector]") {
    reference::Generator gen(1);
    auto psi = gen.state(3);
    CHECK(std::abs(inner_product(psi, psi) - 1.0) <= 1e-12);
    CHECK(std::abs(inner_product(StateVector::basis(1, 0), plus_state()) - inv_sqrt2) <= 1e-15);
    CHECK(inner_product(StateVector::basis(1, 0), StateVector::basis(1, 1)) == complex_t{0.0});
    CHECK_THROWS_AS(inner_product(StateVector::basis(1, 0), StateVector::basis(2, 0)), InvalidArgument);
}

TEST_CASE("Measuring |+> follows the Born rule", "[statevector][measurement]") {
    const int n = 10000;
    int ones = 0;
    RandomStream rng(42);
    for (int i = 0; i < n; ++i) {
        auto s = plus_state();
        const auto outcome = measure_register(s, {0}, rng);
        CHECK_THAT(outcome.probability, WithinAbs(0.5, 1e-12));
        ones += static_cast<int>(outcome.bits);
    }
    const double freq = static_cast<double>(ones) / n;
    CHECK(freq >= 0.48);
    CHECK(freq <= 0.52);
}

TEST_CASE("Measurement frequencies stay within three sigma", "[statevector][measurement][property]") {
    reference::Generator gen(17);
    auto psi = gen.state(3);
    const std::vector<std::size_t> reg{0, 2};
    const auto probs = register_distribution(psi, reg);
    const int n = 20000;
    std::vector<int> counts(4, 0);
    RandomStream rng(7);
    for (int i = 0; i < n; ++i) {
        auto copy = psi;
        counts[measure_register(copy, reg, rng).bits]++;
    }
    for (std::size_t v = 0; v < 4; ++v) {
        const double p = probs[v];
        const double sigma = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::abs(static_cast<double>(counts[v]) / n - p) <= 3.0 * sigma + 1e-12);
    }
}

TEST_CASE("Deterministic measurements and collapse", "[statevector][measurement]") {
    RandomStream rng(0);
    auto zero = StateVector::basis(1, 0);
    const auto outcome = measure_register(zero, {0}, rng);
    CHECK(outcome.bits == 0);
    CHECK(outcome.probability == 1.0);
    CHECK(zero[0] == complex_t{1.0});

    auto bell = StateVector::from_amplitudes(2, {inv_sqrt2, 0.0, 0.0, inv_sqrt2});
    const std::vector<std::size_t> both{0, 1};
    const auto proj = project_register(bell, both, 0);
    CHECK_THAT(proj.probability, WithinAbs(0.5, 1e-15));
    CHECK(bell[0] == complex_t{1.0});
    CHECK(bell[3] == complex_t{0.0});

    auto partial = StateVector::from_amplitudes(2, {inv_sqrt2, 0.0, 0.0, inv_sqrt2});
    RandomStream r2(3);
    const auto first = measure_register(partial, {0}, r2);
    CHECK(std::abs(partial[first.bits == 0 ? 0 : 3]) == 1.0);

    const std::vector<std::size_t> none;
    CHECK_THROWS_AS(measure_register(partial, none, r2), InvalidArgument);
}

TEST_CASE("Measurement sequences are seed deterministic", "[statevector][measurement]") {
    reference::Generator gen(23);
    const auto psi = gen.state(4);
    const std::vector<std::size_t> reg{0, 1, 2};
    auto sequence = [&](std::uint64_t seed) {
        RandomStream rng(seed);
        std::vector<std::uint64_t> out;
        for (int i = 0; i < 200; ++i) {
            auto copy = psi;
            out.push_back(measure_register(copy, reg, rng).bits);
        }
        return out;
    };
    CHECK(sequence(5) == sequence(5));
    CHECK(sequence(5) != sequence(6));
}

TEST_CASE("Derived streams are independent of each other", "[statevector][rng]") {
    auto a = RandomStream::derived(9, 0);
    auto b = RandomStream::derived(9, 1);
    auto a2 = RandomStream::derived(9, 0);
    const auto x = a.next();
    CHECK(x == a2.next());
    CHECK(x != b.next());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
