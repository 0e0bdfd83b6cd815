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
 * Batch command-line front end.
 *
 * Exit codes: 0 success, 2 configuration or flag error, 3 runtime contract
 * violation, 4 oracle-check failure. Output files are written to a
 * temporary name and renamed into place only after the run succeeded.
 */
#pragma once

#include "config.hpp"
#include "problem.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace spectral_qpe::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_runtime = 3,
    exit_oracle = 4,
};

inline constexpr const char *histogram_header = "bin,phase_radians,energy,probability,counts";
inline constexpr const char *bench_header = "slices,operator_error,wall_seconds";
inline constexpr double distribution_tolerance = 1e-10;
inline constexpr double collapse_tolerance = 1e-9;

/// Locale-independent, 17 significant digits.
inline std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

inline std::shared_ptr<spdlog::logger> make_logger(std::ostream &err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    sink->set_pattern("%l: %v");
    auto logger = std::make_shared<spdlog::logger>("spectral-qpe", std::move(sink));
    auto level = spdlog::level::warn;
    if (const char *env = std::getenv("SPECTRAL_QPE_LOG")) {
        const std::string v = env;
        if (v == "error") level = spdlog::level::err;
        else if (v == "warn") level = spdlog::level::warn;
        else if (v == "info") level = spdlog::level::info;
        else if (v == "debug") level = spdlog::level::debug;
    }
    logger->set_level(level);
    return logger;
}

struct Context {
    std::ostream &out;
    std::ostream &err;
    std::shared_ptr<spdlog::logger> log;
};

/// Writes every (path, content) pair to a temporary file, then renames all.
inline void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>> &files) {
    std::vector<std::filesystem::path> temps;
    for (const auto &[path, content] : files) {
        if (path.has_parent_path()) {
            std::filesystem::create_directories(path.parent_path());
        }
        auto tmp = path;
        tmp += ".tmp";
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        f.close();
        if (!f) {
            throw Error("cannot write '" + tmp.string() + "'");
        }
        temps.push_back(tmp);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::filesystem::rename(temps[i], files[i].first);
    }
}

inline std::string histogram_csv(const EigenResult &r, const PhaseEstimator &est) {
    std::ostringstream csv;
    csv << histogram_header << '\n';
    const auto probs = r.histogram.probabilities();
    for (std::size_t b = 0; b < probs.size(); ++b) {
        csv << b << ',' << format_real(est.bin_phase(b)) << ',' << format_real(est.bin_energy(b))
            << ',' << format_real(probs[b]) << ',' << r.histogram.counts[b] << '\n';
    }
    return csv.str();
}

namespace detail {

/// Oracle decomposition when the problem has a dense-feasible Hamiltonian.
inline std::optional<SpectralDecomposition> oracle_for(const BuiltProblem &p) {
    if (const auto h = p.dense_hamiltonian()) {
        return eigendecompose(*h);
    }
    return std::nullopt;
}

inline void warn_aliasing(const SpectralDecomposition &d, double t, const Context &ctx) {
    const double half = std::numbers::pi / std::abs(t);
    std::size_t outside = 0;
    for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
        const double e = d.eigenvalues(k);
        if (!(e > -half && e <= half)) {
            ++outside;
        }
    }
    if (outside > 0) {
        ctx.log->warn("{} reference eigenvalue(s) lie outside the energy window ({}, {}]; "
                      "their phases alias",
                      outside, -half, half);
    }
}

inline json peak_json(const Peak &peak, const std::optional<SpectralDecomposition> &oracle,
                      double bin_width) {
    json j = {{"bin", peak.bin},
              {"phase_radians", peak.phase},
              {"energy", peak.energy},
              {"probability", peak.probability},
              {"counts", peak.count}};
    j["fidelity"] = nullptr;
    if (oracle) {
        try {
            j["fidelity"] = eigenvector_fidelity(peak.eigenvector, *oracle, peak.energy, bin_width);
        } catch (const InvalidArgument &) {
            // No reference eigenvalue within one bin: aliased or spurious peak.
        }
    }
    return j;
}

} // namespace detail

enum class SamplingMode { solve, spectrum };

inline int cmd_sample(const RunConfig &cfg, SamplingMode mode, Context &ctx) {
    BuiltProblem problem;
    std::optional<PhaseEstimationConfig> pec;
    try {
        problem = build_problem(cfg);
        pec = make_estimation_config(problem, cfg);
        pec->validate();
    } catch (const ConfigError &e) {
        ctx.err << e.what() << '\n';
        return exit_config;
    } catch (const InvalidArgument &e) {
        ctx.err << "config error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        const PhaseEstimator est(*pec);
        ctx.log->info("running {} trials on {} qubits", cfg.trials, pec->layout.total());
        const auto result = est.sample_spectrum(*problem.guess);
        const auto oracle = detail::oracle_for(problem);
        if (oracle) {
            detail::warn_aliasing(*oracle, cfg.time, ctx);
        }
        if (result.peaks.empty()) {
            ctx.log->warn("no bin reached the detection threshold {}", result.threshold);
        }
        const double width = bin_width_energy(pec->layout.bins(), cfg.time);

        json record;
        record["command"] = mode == SamplingMode::solve ? "solve" : "spectrum";
        record["config"] = to_json(cfg);
        record["bins"] = pec->layout.bins();
        record["bin_width_energy"] = width;
        record["energy_window"] = {-std::numbers::pi / std::abs(cfg.time),
                                   std::numbers::pi / std::abs(cfg.time)};
        record["trials"] = cfg.trials;
        record["seed"] = cfg.seed;
        record["threshold"] = result.threshold;
        json peaks = json::array();
        for (const auto &peak : result.peaks) {
            peaks.push_back(detail::peak_json(peak, oracle, width));
        }
        record["peaks"] = peaks;
        record["dominant_peak"] = peaks.empty() ? json(nullptr) : peaks.front();
        if (oracle) {
            json ref;
            ref["eigenvalues"] = std::vector<double>(oracle->eigenvalues.begin(),
                                                     oracle->eigenvalues.end());
            ref["ground_energy"] = oracle->eigenvalues(0);
            if (mode == SamplingMode::spectrum) {
                json comps = json::array();
                for (const auto &c : spectral_components(*problem.guess, *oracle, cfg.time)) {
                    if (c.weight > 1e-12) {
                        comps.push_back({{"energy", c.energy}, {"weight", c.weight}});
                    }
                }
                ref["guess_components"] = comps;
            }
            record["oracle"] = ref;
        } else {
            record["oracle"] = nullptr;
        }

        const std::filesystem::path dir(cfg.output);
        write_files_atomically({{dir / "histogram.csv", histogram_csv(result, est)},
                                {dir / "result.json", record.dump(2) + "\n"}});

        if (mode == SamplingMode::solve) {
            if (result.peaks.empty()) {
                ctx.out << "no peak above threshold " << format_real(result.threshold) << '\n';
            } else {
                const auto &p = result.peaks.front();
                ctx.out << "dominant peak: bin " << p.bin << " energy " << format_real(p.energy)
                        << " probability " << format_real(p.probability) << " (bin width "
                        << format_real(width) << ")\n";
            }
        } else {
            ctx.out << "peaks above threshold " << format_real(result.threshold) << ": "
                    << result.peaks.size() << '\n';
            for (const auto &p : result.peaks) {
                ctx.out << "  bin " << p.bin << " energy " << format_real(p.energy)
                        << " weight " << format_real(p.probability) << '\n';
            }
        }
        ctx.out << "wrote " << (dir / "histogram.csv").string() << " and "
                << (dir / "result.json").string() << '\n';
    } catch (const Error &e) {
        ctx.err << "runtime error: " << e.what() << '\n';
        return exit_runtime;
    } catch (const std::filesystem::filesystem_error &e) {
        ctx.err << "runtime error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

inline int cmd_trotter_bench(const RunConfig &cfg, Context &ctx) {
    BuiltProblem problem;
    try {
        problem = build_problem(cfg);
        if (!problem.has_hamiltonian()) {
            throw ConfigError("problem", "trotter-bench needs a Hamiltonian problem");
        }
        if (problem.system_qubits > max_dense_qubits) {
            throw ConfigError("problem", "system too large for the exact reference");
        }
    } catch (const ConfigError &e) {
        ctx.err << e.what() << '\n';
        return exit_config;
    }

    try {
        const auto exact = make_unitary(problem, cfg, true);
        const CMatrix &reference = std::get<DenseUnitary>(exact).gate.matrix();
        auto slices = cfg.bench_slices;
        std::sort(slices.begin(), slices.end());
        slices.erase(std::unique(slices.begin(), slices.end()), slices.end());

        std::ostringstream csv;
        csv << bench_header << '\n';
        ctx.out << bench_header << '\n';
        for (auto r : slices) {
            const EvolutionParams params{cfg.time, r, 1e-3};
            const auto start = std::chrono::steady_clock::now();
            const CMatrix u = problem.grid ? grid_trotter_unitary(*problem.grid, params)
                                           : trotter_unitary(*problem.hamiltonian, params);
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const double error = max_abs_diff(u, reference);
            const std::string row =
                std::to_string(r) + "," + format_real(error) + "," + format_real(seconds);
            csv << row << '\n';
            ctx.out << row << '\n';
        }
        const std::filesystem::path path = std::filesystem::path(cfg.output) / "trotter_bench.csv";
        write_files_atomically({{path, csv.str()}});
        ctx.out << "wrote " << path.string() << '\n';
    } catch (const Error &e) {
        ctx.err << "runtime error: " << e.what() << '\n';
        return exit_runtime;
    } catch (const std::filesystem::filesystem_error &e) {
        ctx.err << "runtime error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

inline int cmd_resources(const ResourceInputs &in, Context &ctx) {
    ResourceEstimate est;
    try {
        est = resource_estimate(in);
    } catch (const InvalidArgument &e) {
        ctx.err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    ctx.out << "particles: " << in.particles << '\n';
    if (in.interacting_pair_in_position_space) {
        ctx.out << "interacting pair in position space: 2 x "
                << in.position_space_qubits_per_particle << " = "
                << 2 * in.position_space_qubits_per_particle << '\n';
        ctx.out << "remaining particles: " << in.particles - 2 << " x "
                << in.qubits_per_particle << " = "
                << (in.particles - 2) * in.qubits_per_particle << '\n';
    } else {
        ctx.out << "particle register: " << in.particles << " x " << in.qubits_per_particle
                << " = " << est.particle_qubits << '\n';
    }
    ctx.out << "index qubits: " << in.index_qubits << '\n';
    ctx.out << "scratch qubits: " << in.scratch_qubits << '\n';
    ctx.out << "total: " << est.total << '\n';
    return exit_ok;
}

/**
 * @brief Audits the pipeline against the dense reference.
 *
 * Two checks, always with the exact propagator: the simulated index
 * distribution must equal the closed-form kernel prediction, and the system
 * state left after each likely bin must have the predicted weight in the
 * nearest eigenspace.
 */
inline int cmd_oracle_check(const RunConfig &cfg, bool corrupt_qft_sign, Context &ctx) {
    BuiltProblem problem;
    std::optional<PhaseEstimationConfig> pec;
    try {
        problem = build_problem(cfg);
        if (!problem.has_hamiltonian()) {
            throw ConfigError("problem", "oracle-check needs a Hamiltonian problem");
        }
        if (problem.system_qubits > max_dense_qubits) {
            throw ConfigError("problem", "system too large for the dense oracle");
        }
        pec = make_estimation_config(problem, cfg, true);
        if (corrupt_qft_sign) {
            pec->readout = Readout::forward_qft;
        }
        pec->validate();
    } catch (const ConfigError &e) {
        ctx.err << e.what() << '\n';
        return exit_config;
    } catch (const InvalidArgument &e) {
        ctx.err << "config error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        const PhaseEstimator est(*pec);
        const auto oracle = *detail::oracle_for(problem);
        const auto components = spectral_components(*problem.guess, oracle, cfg.time);
        const auto predicted = analytic_bin_distribution(
            std::span<const SpectralComponent>(components), cfg.index_qubits);
        const auto pre = est.pre_measurement_state(*problem.guess);
        const auto simulated = register_distribution(pre, pec->layout.index_register());

        double worst = 0.0;
        for (std::size_t b = 0; b < simulated.size(); ++b) {
            worst = std::max(worst, std::abs(simulated[b] - predicted[b]));
        }
        if (!(worst <= distribution_tolerance)) {
            ctx.err << "oracle-check failed: distribution (max deviation " << format_real(worst)
                    << " > " << format_real(distribution_tolerance) << ")\n";
            return exit_oracle;
        }
        ctx.out << "distribution: ok (max deviation " << format_real(worst) << ")\n";

        const double degeneracy = degeneracy_tolerance(oracle);
        double worst_collapse = 0.0;
        std::size_t audited = 0;
        const double threshold = pec->effective_threshold();
        for (std::size_t b = 0; b < simulated.size(); ++b) {
            if (simulated[b] < threshold) {
                continue;
            }
            // Eigenspace whose phase lies closest to this bin.
            const double theta = est.bin_phase(b);
            std::size_t nearest = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < components.size(); ++k) {
                const double d =
                    std::abs(std::remainder(components[k].phase - theta, 2.0 * std::numbers::pi));
                if (d < best) {
                    best = d;
                    nearest = k;
                }
            }
            const auto members =
                eigenspace_indices(oracle, components[nearest].energy, degeneracy);
            const double measured = projected_weight(est.collapse_on_bin(pre, b), oracle, members);
            const double expected = analytic_collapse_weight(
                std::span<const SpectralComponent>(components), members, cfg.index_qubits, b);
            worst_collapse = std::max(worst_collapse, std::abs(measured - expected));
            ++audited;
        }
        if (!(worst_collapse <= collapse_tolerance)) {
            ctx.err << "oracle-check failed: eigenvector fidelity (max deviation "
                    << format_real(worst_collapse) << " > " << format_real(collapse_tolerance)
                    << ")\n";
            return exit_oracle;
        }
        ctx.out << "eigenvector fidelity: ok (" << audited << " bins, max deviation "
                << format_real(worst_collapse) << ")\n";
    } catch (const Error &e) {
        ctx.err << "runtime error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

/// Entry point shared by the executable and the in-process tests.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Phase-estimation eigenvalue solver on a state-vector simulator",
                 "spectral-qpe"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    auto add_run_options = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--seed", overrides.seed, "Master RNG seed");
        sub->add_option("--index-qubits", overrides.index_qubits, "Index register size m");
        sub->add_option("--time", overrides.time, "Evolution time t");
        sub->add_option("--slices", overrides.slices, "Trotter slices r, or 'exact'");
        sub->add_option("--trials", overrides.trials, "Number of trials");
        sub->add_option("--threshold", overrides.threshold, "Peak detection threshold");
        sub->add_option("--threads", overrides.threads, "Worker threads for trials");
        sub->add_option("--out", overrides.output, "Output directory");
    };

    auto *solve = app.add_subcommand("solve", "Estimate the dominant eigenvalue");
    add_run_options(solve);
    auto *spectrum = app.add_subcommand("spectrum", "Report every eigenvalue peak");
    add_run_options(spectrum);
    auto *bench = app.add_subcommand("trotter-bench", "Trotter error versus slice count");
    add_run_options(bench);
    auto *check = app.add_subcommand("oracle-check", "Audit against the dense reference");
    add_run_options(check);
    bool corrupt_qft_sign = false;
    check->add_flag("--corrupt-qft-sign", corrupt_qft_sign)->group("");

    ResourceInputs res;
    auto *resources = app.add_subcommand("resources", "Qubit-count estimate");
    resources->add_option("--particles", res.particles)->required();
    resources->add_option("--qubits-per-particle", res.qubits_per_particle)->required();
    resources->add_option("--index-qubits", res.index_qubits)->required();
    resources->add_option("--scratch-qubits", res.scratch_qubits)->default_val(0);
    resources->add_option("--position-qubits-per-particle",
                          res.position_space_qubits_per_particle)
        ->default_val(0);
    resources->add_flag("--interacting-pair-in-position-space",
                        res.interacting_pair_in_position_space);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    Context ctx{out, err, make_logger(err)};
    if (resources->parsed()) {
        return cmd_resources(res, ctx);
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path, overrides);
    } catch (const ConfigError &e) {
        err << e.what() << '\n';
        return exit_config;
    }
    if (solve->parsed()) {
        return cmd_sample(cfg, SamplingMode::solve, ctx);
    }
    if (spectrum->parsed()) {
        return cmd_sample(cfg, SamplingMode::spectrum, ctx);
    }
    if (bench->parsed()) {
        return cmd_trotter_bench(cfg, ctx);
    }
    return cmd_oracle_check(cfg, corrupt_qft_sign, ctx);
}

inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    args.insert(args.begin(), "spectral-qpe");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace spectral_qpe::cli
