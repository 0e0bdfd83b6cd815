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
 * Run configuration: JSON ingestion, flag overrides and validation.
 *
 * Unknown keys are rejected. Every error names the offending key with a
 * dotted path such as `tfim.sites`.
 */
#pragma once

#include "spectral_qpe/spectral_qpe.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace spectral_qpe::cli {

using json = nlohmann::json;

class ConfigError : public Error {
  public:
    ConfigError(std::string key, const std::string &message)
        : Error("config error at '" + key + "': " + message), key_(std::move(key)) {}

    [[nodiscard]] const std::string &key() const noexcept { return key_; }

  private:
    std::string key_;
};

enum class ProblemKind { tfim, grid, explicit_terms, explicit_unitary };

struct TfimSpec {
    std::size_t sites = 3;
    double coupling = 1.0;
    double field = 1.0;
};

struct GridSpec {
    std::size_t qubits = 6;
    double mass = 1.0;
    /// Either a named potential or explicit samples.
    std::variant<std::string, std::vector<double>> potential = std::string("zero");
};

struct TermSpec {
    std::vector<std::size_t> support;
    std::vector<double> matrix; // row-major (re, im) pairs
};

struct ExplicitTermsSpec {
    std::size_t system_qubits = 1;
    std::vector<TermSpec> terms;
};

struct ExplicitUnitarySpec {
    std::size_t system_qubits = 1;
    std::vector<double> matrix;
};

struct GuessSpec {
    std::string type = "uniform";
    std::size_t index = 0;
    std::vector<std::array<double, 4>> factors;
    std::vector<double> values;
    double center = 0.0;
    double width = 1.0;
};

struct RunConfig {
    ProblemKind problem = ProblemKind::tfim;
    TfimSpec tfim;
    GridSpec grid;
    ExplicitTermsSpec explicit_terms;
    ExplicitUnitarySpec explicit_unitary;
    GuessSpec guess;
    std::size_t index_qubits = 6;
    double time = 1.0;
    /// nullopt means "exact": dense e^{-iHt} built by the oracle.
    std::optional<std::size_t> slices;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    PowerMethod power_method = PowerMethod::binary_power;
    std::optional<double> threshold;
    std::size_t threads = 1;
    std::vector<std::size_t> bench_slices{16, 32, 64, 128};
    std::string output = "spectral_qpe_out";

    [[nodiscard]] std::size_t system_qubits() const {
        switch (problem) {
        case ProblemKind::tfim:
            return tfim.sites;
        case ProblemKind::grid:
            return grid.qubits;
        case ProblemKind::explicit_terms:
            return explicit_terms.system_qubits;
        case ProblemKind::explicit_unitary:
            return explicit_unitary.system_qubits;
        }
        return 0;
    }

    [[nodiscard]] std::size_t work_qubits() const {
        return power_method == PowerMethod::flag_loop ? 1 : 0;
    }
};

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> index_qubits;
    std::optional<double> time;
    std::optional<std::string> slices;
    std::optional<std::size_t> trials;
    std::optional<double> threshold;
    std::optional<std::size_t> threads;
    std::optional<std::string> output;
};

inline const char *to_string(ProblemKind k) {
    switch (k) {
    case ProblemKind::tfim:
        return "tfim";
    case ProblemKind::grid:
        return "grid";
    case ProblemKind::explicit_terms:
        return "explicit_terms";
    case ProblemKind::explicit_unitary:
        return "explicit_unitary";
    }
    return "?";
}

inline const char *to_string(PowerMethod m) {
    return m == PowerMethod::flag_loop ? "flag_loop" : "binary_power";
}

namespace detail {

inline void check_keys(const json &obj, const std::string &path,
                       std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(path.empty() ? "<root>" : path, "expected a JSON object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : obj.items()) {
        if (ok.count(key) == 0) {
            throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

inline std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

inline double get_real(const json &v, const std::string &key) {
    if (!v.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ConfigError(key, "must be finite");
    }
    return d;
}

inline std::uint64_t get_uint(const json &v, const std::string &key) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
        throw ConfigError(key, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

inline std::vector<double> get_reals(const json &v, const std::string &key) {
    if (!v.is_array()) {
        throw ConfigError(key, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get_real(v[i], key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

inline std::optional<std::size_t> parse_slices(const std::string &text, const std::string &key) {
    if (text == "exact") {
        return std::nullopt;
    }
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || text.empty() || text[0] == '-' || value == 0) {
        throw ConfigError(key, "expected a positive integer or \"exact\"");
    }
    return static_cast<std::size_t>(value);
}

} // namespace detail

inline RunConfig parse_config(const json &root) {
    using namespace detail;
    check_keys(root, "",
               {"problem", "tfim", "grid", "explicit_terms", "explicit_unitary", "guess",
                "index_qubits", "time", "slices", "trials", "seed", "power_method",
                "threshold", "threads", "bench_slices", "output"});
    RunConfig cfg;
    if (!root.contains("problem") || !root["problem"].is_string()) {
        throw ConfigError("problem", "required string: tfim, grid, explicit_terms or "
                                     "explicit_unitary");
    }
    const auto problem = root["problem"].get<std::string>();
    if (problem == "tfim") {
        cfg.problem = ProblemKind::tfim;
    } else if (problem == "grid") {
        cfg.problem = ProblemKind::grid;
    } else if (problem == "explicit_terms") {
        cfg.problem = ProblemKind::explicit_terms;
    } else if (problem == "explicit_unitary") {
        cfg.problem = ProblemKind::explicit_unitary;
    } else {
        throw ConfigError("problem", "unknown problem '" + problem + "'");
    }
    if (root.contains("tfim")) {
        const auto &t = root["tfim"];
        check_keys(t, "tfim", {"sites", "coupling", "field"});
        if (t.contains("sites")) cfg.tfim.sites = get_uint(t["sites"], "tfim.sites");
        if (t.contains("coupling")) cfg.tfim.coupling = get_real(t["coupling"], "tfim.coupling");
        if (t.contains("field")) cfg.tfim.field = get_real(t["field"], "tfim.field");
    }
    if (root.contains("grid")) {
        const auto &g = root["grid"];
        check_keys(g, "grid", {"qubits", "mass", "potential"});
        if (g.contains("qubits")) cfg.grid.qubits = get_uint(g["qubits"], "grid.qubits");
        if (g.contains("mass")) cfg.grid.mass = get_real(g["mass"], "grid.mass");
        if (g.contains("potential")) {
            const auto &p = g["potential"];
            if (p.is_string()) {
                cfg.grid.potential = p.get<std::string>();
            } else {
                cfg.grid.potential = get_reals(p, "grid.potential");
            }
        }
    }
    if (root.contains("explicit_terms")) {
        const auto &e = root["explicit_terms"];
        check_keys(e, "explicit_terms", {"system_qubits", "terms"});
        if (e.contains("system_qubits")) {
            cfg.explicit_terms.system_qubits =
                get_uint(e["system_qubits"], "explicit_terms.system_qubits");
        }
        if (e.contains("terms")) {
            if (!e["terms"].is_array()) {
                throw ConfigError("explicit_terms.terms", "expected an array");
            }
            for (std::size_t i = 0; i < e["terms"].size(); ++i) {
                const std::string path = "explicit_terms.terms[" + std::to_string(i) + "]";
                const auto &term = e["terms"][i];
                check_keys(term, path, {"support", "matrix"});
                if (!term.contains("support") || !term["support"].is_array() ||
                    !term.contains("matrix")) {
                    throw ConfigError(path, "needs 'support' and 'matrix'");
                }
                TermSpec spec;
                for (std::size_t q = 0; q < term["support"].size(); ++q) {
                    spec.support.push_back(
                        get_uint(term["support"][q], path + ".support"));
                }
                spec.matrix = get_reals(term["matrix"], path + ".matrix");
                cfg.explicit_terms.terms.push_back(std::move(spec));
            }
        }
    }
    if (root.contains("explicit_unitary")) {
        const auto &u = root["explicit_unitary"];
        check_keys(u, "explicit_unitary", {"system_qubits", "matrix"});
        if (u.contains("system_qubits")) {
            cfg.explicit_unitary.system_qubits =
                get_uint(u["system_qubits"], "explicit_unitary.system_qubits");
        }
        if (u.contains("matrix")) {
            cfg.explicit_unitary.matrix = get_reals(u["matrix"], "explicit_unitary.matrix");
        }
    }
    if (root.contains("guess")) {
        const auto &g = root["guess"];
        check_keys(g, "guess", {"type", "index", "factors", "values", "center", "width"});
        if (g.contains("type")) {
            if (!g["type"].is_string()) {
                throw ConfigError("guess.type", "expected a string");
            }
            cfg.guess.type = g["type"].get<std::string>();
        }
        if (g.contains("index")) cfg.guess.index = get_uint(g["index"], "guess.index");
        if (g.contains("factors")) {
            if (!g["factors"].is_array()) {
                throw ConfigError("guess.factors", "expected an array");
            }
            for (std::size_t i = 0; i < g["factors"].size(); ++i) {
                const std::string path = "guess.factors[" + std::to_string(i) + "]";
                const auto vals = get_reals(g["factors"][i], path);
                if (vals.size() != 4) {
                    throw ConfigError(path, "expected [re0, im0, re1, im1]");
                }
                cfg.guess.factors.push_back({vals[0], vals[1], vals[2], vals[3]});
            }
        }
        if (g.contains("values")) cfg.guess.values = get_reals(g["values"], "guess.values");
        if (g.contains("center")) cfg.guess.center = get_real(g["center"], "guess.center");
        if (g.contains("width")) cfg.guess.width = get_real(g["width"], "guess.width");
    }
    if (root.contains("index_qubits")) {
        cfg.index_qubits = get_uint(root["index_qubits"], "index_qubits");
    }
    if (root.contains("time")) cfg.time = get_real(root["time"], "time");
    if (root.contains("slices")) {
        const auto &s = root["slices"];
        if (s.is_string()) {
            cfg.slices = parse_slices(s.get<std::string>(), "slices");
        } else {
            const auto v = get_uint(s, "slices");
            if (v == 0) {
                throw ConfigError("slices", "must be >= 1");
            }
            cfg.slices = v;
        }
    }
    if (root.contains("trials")) cfg.trials = get_uint(root["trials"], "trials");
    if (root.contains("seed")) cfg.seed = get_uint(root["seed"], "seed");
    if (root.contains("power_method")) {
        const auto &m = root["power_method"];
        const std::string v = m.is_string() ? m.get<std::string>() : "";
        if (v == "flag_loop") {
            cfg.power_method = PowerMethod::flag_loop;
        } else if (v == "binary_power") {
            cfg.power_method = PowerMethod::binary_power;
        } else {
            throw ConfigError("power_method", "expected \"flag_loop\" or \"binary_power\"");
        }
    }
    if (root.contains("threshold")) {
        if (!root["threshold"].is_null()) {
            cfg.threshold = get_real(root["threshold"], "threshold");
        }
    }
    if (root.contains("threads")) cfg.threads = get_uint(root["threads"], "threads");
    if (root.contains("bench_slices")) {
        const auto &b = root["bench_slices"];
        if (!b.is_array()) {
            throw ConfigError("bench_slices", "expected an array of integers");
        }
        cfg.bench_slices.clear();
        for (std::size_t i = 0; i < b.size(); ++i) {
            cfg.bench_slices.push_back(get_uint(b[i], "bench_slices"));
        }
    }
    if (root.contains("output")) {
        if (!root["output"].is_string()) {
            throw ConfigError("output", "expected a path string");
        }
        cfg.output = root["output"].get<std::string>();
    }
    return cfg;
}

inline void apply_overrides(RunConfig &cfg, const Overrides &o) {
    if (o.seed) cfg.seed = *o.seed;
    if (o.index_qubits) cfg.index_qubits = *o.index_qubits;
    if (o.time) cfg.time = *o.time;
    if (o.slices) cfg.slices = detail::parse_slices(*o.slices, "slices");
    if (o.trials) cfg.trials = *o.trials;
    if (o.threshold) cfg.threshold = *o.threshold;
    if (o.threads) cfg.threads = *o.threads;
    if (o.output) cfg.output = *o.output;
}

/// Structural checks that do not need the problem to be built.
inline void validate(const RunConfig &cfg) {
    if (cfg.index_qubits < 1) {
        throw ConfigError("index_qubits", "must be >= 1");
    }
    const std::size_t l = cfg.system_qubits();
    if (l < 1) {
        throw ConfigError("system_qubits", "must be >= 1");
    }
    const std::size_t total = cfg.index_qubits + l + cfg.work_qubits();
    if (total > max_qubits) {
        throw ConfigError("index_qubits",
                          "index (" + std::to_string(cfg.index_qubits) + ") + system (" +
                              std::to_string(l) + ") + work (" +
                              std::to_string(cfg.work_qubits()) + ") = " +
                              std::to_string(total) + " qubits exceeds the qubit cap of " +
                              std::to_string(max_qubits));
    }
    if (!std::isfinite(cfg.time) || cfg.time == 0.0) {
        throw ConfigError("time", "evolution time must be finite and nonzero");
    }
    if (cfg.trials < 1) {
        throw ConfigError("trials", "must be >= 1");
    }
    if (cfg.threads < 1) {
        throw ConfigError("threads", "must be >= 1");
    }
    if (cfg.threshold && !(std::isfinite(*cfg.threshold) && *cfg.threshold > 0.0)) {
        throw ConfigError("threshold", "must be positive");
    }
    if (!cfg.slices && cfg.problem != ProblemKind::explicit_unitary &&
        l > max_dense_qubits) {
        throw ConfigError("slices", "\"exact\" needs a system of at most " +
                                        std::to_string(max_dense_qubits) + " qubits");
    }
    for (auto r : cfg.bench_slices) {
        if (r == 0) {
            throw ConfigError("bench_slices", "slice counts must be >= 1");
        }
    }
    if (cfg.output.empty()) {
        throw ConfigError("output", "must not be empty");
    }
}

/**
 * @brief Canonical JSON form of the resolved configuration.
 *
 * Execution-only settings (threads, output path) are left out so that the
 * record depends only on what was computed.
 */
inline json to_json(const RunConfig &cfg) {
    json j;
    j["problem"] = to_string(cfg.problem);
    switch (cfg.problem) {
    case ProblemKind::tfim:
        j["tfim"] = {{"sites", cfg.tfim.sites},
                     {"coupling", cfg.tfim.coupling},
                     {"field", cfg.tfim.field}};
        break;
    case ProblemKind::grid: {
        json g = {{"qubits", cfg.grid.qubits}, {"mass", cfg.grid.mass}};
        std::visit([&g](const auto &p) { g["potential"] = p; }, cfg.grid.potential);
        j["grid"] = g;
        break;
    }
    case ProblemKind::explicit_terms: {
        json terms = json::array();
        for (const auto &t : cfg.explicit_terms.terms) {
            terms.push_back({{"support", t.support}, {"matrix", t.matrix}});
        }
        j["explicit_terms"] = {{"system_qubits", cfg.explicit_terms.system_qubits},
                               {"terms", terms}};
        break;
    }
    case ProblemKind::explicit_unitary:
        j["explicit_unitary"] = {{"system_qubits", cfg.explicit_unitary.system_qubits},
                                 {"matrix", cfg.explicit_unitary.matrix}};
        break;
    }
    json g = {{"type", cfg.guess.type}};
    if (cfg.guess.type == "basis") {
        g["index"] = cfg.guess.index;
    } else if (cfg.guess.type == "product") {
        g["factors"] = cfg.guess.factors;
    } else if (cfg.guess.type == "amplitudes") {
        g["values"] = cfg.guess.values;
    } else if (cfg.guess.type == "gaussian") {
        g["center"] = cfg.guess.center;
        g["width"] = cfg.guess.width;
    }
    j["guess"] = g;
    j["index_qubits"] = cfg.index_qubits;
    j["time"] = cfg.time;
    j["slices"] = cfg.slices ? json(*cfg.slices) : json("exact");
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["power_method"] = to_string(cfg.power_method);
    j["threshold"] = cfg.threshold ? json(*cfg.threshold) : json(nullptr);
    j["bench_slices"] = cfg.bench_slices;
    return j;
}

inline RunConfig load_config(const std::string &path, const Overrides &overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open '" + path + "'");
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    auto cfg = parse_config(root);
    apply_overrides(cfg, overrides);
    validate(cfg);
    return cfg;
}

} // namespace spectral_qpe::cli
