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

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace spectral_qpe;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;

PhaseEstimationConfig dense_config(const CMatrix &u, std::size_t m, std::size_t w = 0,
                                   double t = 1.0) {
    const auto l = static_cast<std::size_t>(exact_log2(static_cast<std::size_t>(u.rows())));
    return PhaseEstimationConfig{
        .layout = RegisterLayout(m, l, w),
        .unitary = DenseUnitary{GateMatrix::from_matrix(u), t},
    };
}

/// U = Q diag(e^{i omega_k}) Q^dagger.
CMatrix unitary_with_phases(const CMatrix &q, const std::vector<double> &phases) {
    CVector d(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t k = 0; k < phases.size(); ++k) {
        d(static_cast<Eigen::Index>(k)) = std::polar(1.0, phases[k]);
    }
    return q * d.asDiagonal() * q.adjoint();
}

/// Direct sum over components of the leakage kernel, independent of the library.
std::vector<double> reference_distribution(const CMatrix &q, const std::vector<double> &phases,
                                           const StateVector &va, std::size_t m) {
    const std::size_t bins = std::size_t{1} << m;
    const CVector c = q.adjoint() * reference::to_vector(va);
    std::vector<double> p(bins, 0.0);
    for (std::size_t j = 0; j < bins; ++j) {
        for (std::size_t k = 0; k < phases.size(); ++k) {
            p[j] += std::norm(c(static_cast<Eigen::Index>(k))) *
                    reference::direct_kernel(bins, phases[k] - 2.0 * pi * static_cast<double>(j) /
                                                                   static_cast<double>(bins));
        }
    }
    return p;
}

/// (1/sqrt M) sum_j |j> U^j |va> built from dense matrix powers.
CVector reference_powers(const CMatrix &u, const StateVector &va, std::size_t m, std::size_t w) {
    const std::size_t bins = std::size_t{1} << m;
    const auto dim = static_cast<std::size_t>(u.rows());
    CVector out = CVector::Zero(static_cast<Eigen::Index>(bins * dim << w));
    const CVector v = reference::to_vector(va);
    for (std::size_t j = 0; j < bins; ++j) {
        const CVector uj = reference::matrix_power(u, j) * v;
        for (std::size_t s = 0; s < dim; ++s) {
            out(static_cast<Eigen::Index>(j | (s << m))) =
                uj(static_cast<Eigen::Index>(s)) / std::sqrt(static_cast<double>(bins));
        }
    }
    return out;
}

StateVector prepared(const PhaseEstimator &est, const StateVector &va) {
    auto s = est.initial_state(va);
    est.prepare_index_superposition(s);
    return s;
}

CMatrix diag_phase(double theta) {
    CMatrix u = CMatrix::Identity(2, 2);
    u(1, 1) = std::polar(1.0, theta);
    return u;
}

std::vector<double> random_phases(reference::Generator &gen, std::size_t n) {
    std::vector<double> out(n);
    for (auto &p : out) {
        p = gen.uniform(0.0, 2.0 * pi);
    }
    return out;
}
} // namespace

TEST_CASE("Index superposition", "[phase_estimation]") {
    reference::Generator gen(1);
    const auto psi = gen.state(1);
    PhaseEstimator one(dense_config(CMatrix::Identity(2, 2), 1));
    const auto s = prepared(one, psi);
    for (std::size_t sys = 0; sys < 2; ++sys) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(std::abs(s[j | (sys << 1)] - psi[sys] / std::numbers::sqrt2) <= 1e-12);
        }
    }

    PhaseEstimator three(dense_config(CMatrix::Identity(2, 2), 3));
    const auto t = prepared(three, StateVector::basis(1, 0));
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK_THAT(t[j].real(), WithinAbs(1.0 / std::sqrt(8.0), 1e-12));
        CHECK_THAT(t[j].imag(), WithinAbs(0.0, 1e-12));
    }

    auto twice = t;
    CHECK_THROWS_AS(three.prepare_index_superposition(twice), InvalidArgument);
}

TEST_CASE("Flag loop examples", "[phase_estimation]") {
    reference::Generator gen(2);
    const auto va = gen.state(2);
    const auto id_cfg = dense_config(CMatrix::Identity(4, 4), 2, 1);
    PhaseEstimator identity(id_cfg);
    auto s = prepared(identity, va);
    const auto before = s;
    identity.apply_conditional_powers_flag_loop(s);
    CHECK(reference::max_abs_diff(s, reference::to_vector(before)) <= 1e-12);

    CMatrix px(2, 2);
    px << 0.0, 1.0, 1.0, 0.0;
    PhaseEstimator flip(dense_config(px, 1, 1));
    auto f = prepared(flip, StateVector::basis(1, 0));
    flip.apply_conditional_powers_flag_loop(f);
    CHECK_THAT(std::abs(f[0b000]), WithinAbs(1.0 / std::numbers::sqrt2, 1e-12));
    CHECK_THAT(std::abs(f[0b011]), WithinAbs(1.0 / std::numbers::sqrt2, 1e-12));

    const CMatrix u = gen.unitary(2);
    const auto v1 = gen.state(1);
    PhaseEstimator rnd(dense_config(u, 2, 1));
    auto r = prepared(rnd, v1);
    rnd.apply_conditional_powers_flag_loop(r);
    CHECK(reference::max_abs_diff(r, reference_powers(u, v1, 2, 1)) <= 1e-10);

    PhaseEstimator no_flag(dense_config(u, 2, 0));
    auto nf = prepared(no_flag, v1);
    CHECK_THROWS_AS(no_flag.apply_conditional_powers_flag_loop(nf), InvalidArgument);
    auto bad = dense_config(u, 2, 0);
    bad.power_method = PowerMethod::flag_loop;
    CHECK_THROWS_AS(PhaseEstimator(bad), InvalidArgument);
}

TEST_CASE("Binary powers", "[phase_estimation]") {
    reference::Generator gen(3);
    const auto va = gen.state(2);
    PhaseEstimator identity(dense_config(CMatrix::Identity(4, 4), 3));
    auto s = prepared(identity, va);
    const auto before = s;
    identity.apply_conditional_powers_binary(s);
    CHECK(reference::max_abs_diff(s, reference::to_vector(before)) <= 1e-12);

    const double theta = 0.7;
    PhaseEstimator diag(dense_config(diag_phase(theta), 3));
    auto d = prepared(diag, StateVector::basis(1, 1));
    diag.apply_conditional_powers_binary(d);
    for (std::size_t j = 0; j < 8; ++j) {
        const complex_t expected = std::polar(1.0 / std::sqrt(8.0), theta * static_cast<double>(j));
        CHECK(std::abs(d[j | 0b1000] - expected) <= 1e-12);
    }

    for (std::size_t m = 1; m <= 4; ++m) {
        const CMatrix u = gen.unitary(4);
        const auto v = gen.state(2);
        PhaseEstimator est(dense_config(u, m, 1));
        auto a = prepared(est, v);
        auto b = a;
        est.apply_conditional_powers_flag_loop(a);
        est.apply_conditional_powers_binary(b);
        CHECK(reference::max_abs_diff(a, reference::to_vector(b)) <= 1e-10);
        CHECK(reference::max_abs_diff(b, reference_powers(u, v, m, 1)) <= 1e-10);
    }
}

TEST_CASE("Single phase estimation runs", "[phase_estimation]") {
    auto cfg = dense_config(diag_phase(pi / 2.0), 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        const auto sample = run_phase_estimation(StateVector::basis(1, 1), cfg);
        CHECK(sample.bin == 1);
        CHECK(sample.phase == 2.0 * pi / 4.0);
        CHECK_THAT(fidelity(sample.collapsed_state, StateVector::basis(1, 1)), WithinAbs(1.0, 1e-12));
    }

    const auto plus = StateVector::from_amplitudes(1, {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2});
    PhaseEstimator est(cfg);
    const auto dist = est.exact_distribution(plus);
    CHECK_THAT(dist[0], WithinAbs(0.5, 1e-12));
    CHECK_THAT(dist[1], WithinAbs(0.5, 1e-12));
    bool seen[2] = {false, false};
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        cfg.seed = seed;
        const auto sample = run_phase_estimation(plus, cfg);
        REQUIRE(sample.bin < 2);
        seen[sample.bin] = true;
        CHECK_THAT(fidelity(sample.collapsed_state, StateVector::basis(1, sample.bin)), WithinAbs(1.0, 1e-12));
    }
    CHECK(seen[0]);
    CHECK(seen[1]);

    const HamiltonianSum z({LocalTerm({0}, [] {
                               CMatrix m(2, 2);
                               m << 1.0, 0.0, 0.0, -1.0;
                               return m;
                           }())},
                           1);
    PhaseEstimationConfig zcfg{
        .layout = RegisterLayout(3, 1, 0),
        .unitary = DenseUnitary{exact_unitary(z, pi / 4.0), pi / 4.0},
    };
    const auto zs = run_phase_estimation(StateVector::basis(1, 0), zcfg);
    CHECK(zs.bin == 7);
    CHECK_THAT(zs.energy, WithinAbs(1.0, 1e-12));
    CHECK_THAT(PhaseEstimator(zcfg).exact_distribution(StateVector::basis(1, 0))[7], WithinAbs(1.0, 1e-12));
}

TEST_CASE("Trotterized and dense unitaries agree when the terms commute", "[phase_estimation]") {
    CMatrix zz = CMatrix::Zero(4, 4);
    zz.diagonal() << 1.0, -1.0, -1.0, 1.0;
    CMatrix z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    const HamiltonianSum h({LocalTerm({0, 1}, zz), LocalTerm({0}, 0.5 * z)}, 2);
    reference::Generator gen(4);
    const auto va = gen.state(2);
    PhaseEstimationConfig trotter{
        .layout = RegisterLayout(4, 2, 1),
        .unitary = TrotterEvolution{h, {0.9, 3, 1e-3}},
        .power_method = PowerMethod::flag_loop,
    };
    auto dense = trotter;
    dense.unitary = DenseUnitary{exact_unitary(h, 0.9), 0.9};
    dense.power_method = PowerMethod::binary_power;
    const auto a = PhaseEstimator(trotter).exact_distribution(va);
    const auto b = PhaseEstimator(dense).exact_distribution(va);
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(std::abs(a[j] - b[j]) <= 1e-10);
    }
}

TEST_CASE("Sampling an exact on-grid eigenvector", "[phase_estimation][sampling]") {
    auto cfg = dense_config(diag_phase(2.0 * pi * 3.0 / 8.0), 3);
    cfg.trials = 500;
    cfg.seed = 99;
    const auto result = sample_spectrum(StateVector::basis(1, 1), cfg);
    CHECK(result.histogram.counts[3] == 500);
    REQUIRE(result.peaks.size() == 1);
    CHECK(result.peaks[0].bin == 3);
    CHECK(result.peaks[0].probability == 1.0);
    CHECK(result.sampled_bins.size() == 500);
}

TEST_CASE("Sampled frequencies follow the Born weights", "[phase_estimation][sampling]") {
    reference::Generator gen(8);
    const CMatrix q = gen.unitary(2);
    const std::vector<double> phases{0.0, pi / 2.0};
    CVector va_vec = std::sqrt(0.25) * q.col(0) + std::sqrt(0.75) * q.col(1);
    const auto va = StateVector::from_amplitudes(
        1, std::vector<complex_t>(va_vec.data(), va_vec.data() + va_vec.size()));
    auto cfg = dense_config(unitary_with_phases(q, phases), 2);
    cfg.trials = 4000;
    cfg.seed = 2;
    const auto result = sample_spectrum(va, cfg);
    const double n = 4000.0;
    for (auto [bin, p] : {std::pair{0, 0.25}, std::pair{1, 0.75}}) {
        const double freq = static_cast<double>(result.histogram.counts[static_cast<std::size_t>(bin)]) / n;
        CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1.0 - p) / n));
    }
    REQUIRE(result.peaks.size() == 2);
    CHECK(result.peaks[0].bin == 1);
    CHECK(result.peaks[1].bin == 0);
    CHECK(result.peaks[0].probability >= result.peaks[1].probability);
    CHECK_THAT(std::norm(result.peaks[0].eigenvector[0] * std::conj(q(0, 1)) +
                         result.peaks[0].eigenvector[1] * std::conj(q(1, 1))),
               WithinAbs(1.0, 1e-9));
}

TEST_CASE("Off-grid sampling passes a chi-square test", "[phase_estimation][sampling]") {
    const std::size_t m = 3;
    const double omega = 2.0 * pi * 1.37 / 8.0;
    auto cfg = dense_config(diag_phase(omega), m);
    cfg.trials = 10000;
    cfg.seed = 123;
    const auto result = sample_spectrum(StateVector::basis(1, 1), cfg);
    const std::vector<PhaseComponent> comps{{1.0, omega}};
    const auto p = analytic_bin_distribution(comps, m);
    double chi2 = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double expected = p[j] * 10000.0;
        const double diff = static_cast<double>(result.histogram.counts[j]) - expected;
        chi2 += diff * diff / expected;
    }
    const boost::math::chi_squared dist(static_cast<double>(p.size() - 1));
    CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.001);
}

TEST_CASE("Sampling is deterministic for a seed and independent of threads", "[phase_estimation][sampling]") {
    reference::Generator gen(10);
    auto cfg = dense_config(gen.unitary(4), 4);
    const auto va = gen.state(2);
    cfg.trials = 777;
    cfg.seed = 31337;
    const auto a = sample_spectrum(va, cfg);
    cfg.threads = 4;
    const auto b = sample_spectrum(va, cfg);
    cfg.threads = 1;
    cfg.seed = 31338;
    const auto c = sample_spectrum(va, cfg);
    CHECK(a.sampled_bins == b.sampled_bins);
    CHECK(a.histogram.counts == b.histogram.counts);
    CHECK(a.sampled_bins != c.sampled_bins);
    std::uint64_t total = 0;
    for (auto n : a.histogram.counts) {
        total += n;
    }
    CHECK(total == 777);
}

TEST_CASE("Peak threshold", "[phase_estimation]") {
    PhaseEstimationConfig cfg = dense_config(CMatrix::Identity(2, 2), 2);
    cfg.trials = 100;
    CHECK_THAT(cfg.effective_threshold(), WithinAbs(0.4, 1e-15));
    cfg.trials = 10000;
    CHECK_THAT(cfg.effective_threshold(), WithinAbs(0.05, 1e-15));
    cfg.threshold = 0.2;
    CHECK(cfg.effective_threshold() == 0.2);
    cfg.threshold = 1.1;
    const auto result = sample_spectrum(StateVector::basis(1, 0), cfg);
    CHECK(result.peaks.empty());
    cfg.trials = 0;
    CHECK_THROWS_AS(PhaseEstimator(cfg), InvalidArgument);
}

TEST_CASE("Analytic bin distribution", "[phase_estimation]") {
    const std::vector<PhaseComponent> on_grid{{1.0, 2.0 * pi * 5.0 / 8.0}};
    const auto p = analytic_bin_distribution(on_grid, 3);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK_THAT(p[j], WithinAbs(j == 5 ? 1.0 : 0.0, 1e-14));
    }

    const std::vector<PhaseComponent> half{{1.0, 2.0 * pi * 1.5 / 8.0}};
    const auto h = analytic_bin_distribution(half, 3);
    const double expected = 1.0 / (64.0 * std::pow(std::sin(pi / 16.0), 2));
    CHECK_THAT(expected, WithinAbs(0.4105, 1e-4));
    CHECK_THAT(h[1], WithinAbs(expected, 1e-12));
    CHECK_THAT(h[2], WithinAbs(expected, 1e-12));
    CHECK_THAT(h[1], WithinAbs(reference::direct_kernel(8, pi / 8.0), 1e-12));

    reference::Generator gen(14);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PhaseComponent> comps(1 + gen.index(5));
        double total = 0.0;
        for (auto &c : comps) {
            c = {gen.uniform(0.0, 1.0), gen.uniform(-10.0, 10.0)};
            total += c.weight;
        }
        for (auto &c : comps) {
            c.weight /= total;
        }
        const std::size_t m = 1 + gen.index(8);
        const auto dist = analytic_bin_distribution(comps, m);
        double sum = 0.0;
        for (std::size_t j = 0; j < dist.size(); ++j) {
            sum += dist[j];
            double direct = 0.0;
            for (const auto &c : comps) {
                direct += c.weight * reference::direct_kernel(dist.size(),
                                                              c.phase - 2.0 * pi * static_cast<double>(j) /
                                                                            static_cast<double>(dist.size()));
            }
            CHECK(std::abs(dist[j] - direct) <= 1e-12);
        }
        CHECK(std::abs(sum - 1.0) <= 1e-10);
    }

    const std::vector<PhaseComponent> bad{{0.5, 0.0}};
    CHECK_THROWS_AS(analytic_bin_distribution(bad, 3), InvalidArgument);
}

TEST_CASE("Phase to energy", "[phase_estimation]") {
    CHECK_THAT(phase_to_energy(7.0 * pi / 4.0, pi / 4.0), WithinAbs(1.0, 1e-12));
    CHECK(phase_to_energy(0.0, 0.37) == 0.0);
    CHECK_THAT(phase_to_energy(pi / 4.0, pi / 4.0), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(phase_to_energy(pi, 1.0), WithinAbs(pi, 1e-12));
    CHECK_THAT(phase_to_energy(pi / 2.0, -1.0), WithinAbs(pi / 2.0, 1e-12));
    CHECK_THROWS_AS(phase_to_energy(1.0, 0.0), InvalidArgument);
    reference::Generator gen(15);
    for (int i = 0; i < 100; ++i) {
        const double t = gen.uniform(0.1, 3.0);
        const double e = gen.uniform(-0.99 * pi / t, 0.99 * pi / t);
        CHECK_THAT(phase_to_energy(wrap_phase(-e * t), t), WithinAbs(e, 1e-9));
    }
}

TEST_CASE("Eigenvector fidelity", "[phase_estimation]") {
    const auto h = build_transverse_ising(2, 1.0, 0.5);
    const auto d = eigendecompose(assemble_dense(h));
    auto vec = [](const CVector &v) {
        return StateVector::from_amplitudes(2, std::vector<complex_t>(v.data(), v.data() + v.size()));
    };
    CHECK_THAT(eigenvector_fidelity(vec(d.eigenvector(0)), h, d.eigenvalues(0), 1e-8), WithinAbs(1.0, 1e-10));
    CHECK_THAT(eigenvector_fidelity(vec(d.eigenvector(1)), h, d.eigenvalues(0), 1e-8), WithinAbs(0.0, 1e-10));
    CHECK_THROWS_AS(eigenvector_fidelity(vec(d.eigenvector(0)), h, 100.0, 1e-3), InvalidArgument);
}

TEST_CASE("Exact distribution matches the closed form", "[phase_estimation][property]") {
    reference::Generator gen(16);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t l = 1 + gen.index(4);
        const std::size_t m = 1 + gen.index(8);
        const std::size_t dim = std::size_t{1} << l;
        const CMatrix q = gen.unitary(dim);
        const auto phases = random_phases(gen, dim);
        const auto va = gen.state(l);
        const auto cfg = dense_config(unitary_with_phases(q, phases), m);
        const auto simulated = PhaseEstimator(cfg).exact_distribution(va);
        const auto expected = reference_distribution(q, phases, va, m);
        for (std::size_t j = 0; j < simulated.size(); ++j) {
            CHECK(std::abs(simulated[j] - expected[j]) <= 1e-10);
        }
    }
}

TEST_CASE("On-grid weights and collapse", "[phase_estimation][property]") {
    reference::Generator gen(17);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t l = 1 + gen.index(3);
        const std::size_t m = l + 2;
        const std::size_t dim = std::size_t{1} << l;
        const std::size_t bins = std::size_t{1} << m;
        std::vector<std::size_t> chosen;
        while (chosen.size() < dim) {
            const auto b = gen.index(bins);
            if (std::find(chosen.begin(), chosen.end(), b) == chosen.end()) {
                chosen.push_back(b);
            }
        }
        std::vector<double> phases(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            phases[k] = 2.0 * pi * static_cast<double>(chosen[k]) / static_cast<double>(bins);
        }
        const CMatrix q = gen.unitary(dim);
        const auto va = gen.state(l);
        const CVector c = q.adjoint() * reference::to_vector(va);
        PhaseEstimator est(dense_config(unitary_with_phases(q, phases), m));
        const auto pre = est.pre_measurement_state(va);
        const auto dist = register_distribution(pre, est.layout().index_register());
        for (std::size_t k = 0; k < dim; ++k) {
            const double weight = std::norm(c(static_cast<Eigen::Index>(k)));
            CHECK(std::abs(dist[chosen[k]] - weight) <= 1e-10);
            const auto collapsed = est.collapse_on_bin(pre, chosen[k]);
            const CVector phi = q.col(static_cast<Eigen::Index>(k));
            const CVector got = reference::to_vector(collapsed);
            CHECK(std::abs(std::norm(phi.dot(got)) - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("Flag loop and binary powers produce identical states", "[phase_estimation][property]") {
    reference::Generator gen(18);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t l = 1 + gen.index(3);
        const std::size_t m = 1 + gen.index(5);
        const CMatrix u = gen.unitary(std::size_t{1} << l);
        const auto va = gen.state(l);
        auto cfg = dense_config(u, m, 1);
        cfg.power_method = PowerMethod::flag_loop;
        const auto a = PhaseEstimator(cfg).pre_measurement_state(va);
        cfg.power_method = PowerMethod::binary_power;
        const auto b = PhaseEstimator(cfg).pre_measurement_state(va);
        CHECK(reference::max_abs_diff(a, reference::to_vector(b)) <= 1e-10);
    }
}

TEST_CASE("Resolution improves with more index qubits", "[phase_estimation][property]") {
    const double omega = 2.0 * pi * 0.3183;
    for (std::size_t m = 4; m <= 8; ++m) {
        const auto dist = PhaseEstimator(dense_config(diag_phase(omega), m))
                              .exact_distribution(StateVector::basis(1, 1));
        const auto peak = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        const double bins = static_cast<double>(std::size_t{1} << m);
        const double width = 2.0 * pi / bins;
        CHECK(std::abs(2.0 * pi * static_cast<double>(peak) / bins - omega) <= width);
        CHECK(std::abs(2.0 * pi * static_cast<double>(peak) / bins - omega) <= width / 2.0 + 1e-12);
    }
}

TEST_CASE("Forward readout is detected as wrong", "[phase_estimation]") {
    auto cfg = dense_config(diag_phase(2.0 * pi * 3.0 / 8.0), 3);
    cfg.readout = Readout::forward_qft;
    const auto dist = PhaseEstimator(cfg).exact_distribution(StateVector::basis(1, 1));
    CHECK_THAT(dist[5], WithinAbs(1.0, 1e-12));
}
