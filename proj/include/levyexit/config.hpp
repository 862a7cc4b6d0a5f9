#pragma once

// Run configuration shared by the CLI subcommands. A JSON file with the
// sections below; every key is optional and unknown keys are rejected.
//
//   {
//     "model":  {"drift": "tumor" | "zero", "theta": 0.1, "beta": 3.0},
//     "noise":  {"a": 0.0, "epsilon": 0.1, "alpha": 1.0},
//     "domain": {"c": 0.0, "d": 5.0, "h": 0.01},
//     "solver": {"scheme": "corrected" | "uncorrected"},
//     "mc":     {"dt": 1e-3, "n_paths": 10000, "max_time": 1e4, "base_seed": 1, "x0": 2.5},
//     "output": {"path": "-", "format": "csv" | "svg"}
//   }

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levyexit/errors.hpp"
#include "levyexit/grid.hpp"
#include "levyexit/levy.hpp"
#include "levyexit/mc_oracle.hpp"
#include "levyexit/model.hpp"
#include "levyexit/nonlocal_solver.hpp"

namespace levyexit {

enum class DriftKind { Tumor, Zero };

inline const char* to_string(DriftKind k) { return k == DriftKind::Tumor ? "tumor" : "zero"; }
inline const char* to_string(Scheme s) { return s == Scheme::Corrected ? "corrected" : "uncorrected"; }
inline const char* to_string(EscapeTarget t) { return t == EscapeTarget::LeftExtinction ? "left" : "right"; }

/// Drift selected at run time; dispatches to TumorDrift or ZeroDrift.
struct ConfiguredDrift {
    DriftKind kind = DriftKind::Tumor;
    ModelParams params;

    double operator()(double x) const { return kind == DriftKind::Tumor ? drift(x, params) : 0.0; }
};

struct RunConfig {
    DriftKind drift_kind = DriftKind::Tumor;
    ModelParams model;
    NoiseParams noise;
    std::optional<double> c;
    std::optional<double> d;
    std::optional<double> h;
    Scheme scheme = Scheme::Corrected;

    double dt = 1e-3;
    std::uint64_t n_paths = 10000;
    std::optional<double> max_time;
    std::uint64_t base_seed = 1;
    std::optional<double> x0;

    std::string output_path = "-";
    std::string output_format = "csv";

    ConfiguredDrift drift_field() const { return {drift_kind, model}; }

    /// Exit interval: explicit c/d, else (x1, x3) for the tumor drift and (-1, 1) for zero drift.
    std::pair<double, double> interval() const {
        double lo = -1.0;
        double hi = 1.0;
        if (drift_kind == DriftKind::Tumor && (!c || !d)) {
            const auto s = steady_states(model);
            lo = s.x1;
            hi = s.x3;
        }
        return {c.value_or(lo), d.value_or(hi)};
    }

    /// Default step (d - c) / 500; no snapping when the step fails divisibility.
    Grid grid() const {
        const auto [lo, hi] = interval();
        return Grid(lo, hi, h.value_or((hi - lo) / 500.0));
    }

    SimConfig sim_config(std::optional<double> solver_u = std::nullopt) const {
        return {dt, max_time.value_or(default_max_time(solver_u)), n_paths, base_seed};
    }

    /// Re-validates every referenced type; returns non-fatal warnings.
    std::vector<std::string> validate() const {
        model.validate();
        auto warnings = noise.validate();
        if (drift_kind == DriftKind::Tumor && !is_bistable(model)) {
            if (!c || !d) {
                steady_states(model);  // throws RegimeError with the reason
            }
            warnings.push_back("model parameters are outside the bistable regime");
        }
        (void)grid();
        if (!(dt > 0.0)) throw ConfigError("mc.dt must be positive");
        if (n_paths < 1) throw ConfigError("mc.n_paths must be >= 1");
        if (max_time && !(*max_time >= 100.0 * dt)) throw ConfigError("mc.max_time must be at least 100*dt");
        if (output_format != "csv" && output_format != "svg") {
            throw ConfigError("output.format must be csv or svg");
        }
        return warnings;
    }

    /// One-line parameter echo, sufficient to reproduce a run.
    std::string describe() const {
        const auto [lo, hi] = interval();
        const Grid g = grid();
        std::ostringstream os;
        os.precision(17);
        os << "drift=" << to_string(drift_kind) << " theta=" << model.theta << " beta=" << model.beta
           << " a=" << noise.a << " epsilon=" << noise.epsilon << " alpha=" << noise.alpha << " c=" << lo
           << " d=" << hi << " h=" << g.h() << " scheme=" << to_string(scheme);
        return os.str();
    }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::string& section,
                           std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw ConfigError("config: section '" + section + "' must be an object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!ok.count(key)) {
            throw ConfigError("config: unknown key '" + (section.empty() ? key : section + "." + key) + "'");
        }
    }
}

template <typename T>
void read(const nlohmann::json& obj, const char* key, T& out, const std::string& section) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: bad value for '" + section + "." + key + "': " + e.what());
    }
}

template <typename T>
void read(const nlohmann::json& obj, const char* key, std::optional<T>& out, const std::string& section) {
    if (!obj.contains(key)) return;
    T v{};
    read(obj, key, v, section);
    out = v;
}

}  // namespace detail

inline DriftKind parse_drift(const std::string& s) {
    if (s == "tumor") return DriftKind::Tumor;
    if (s == "zero") return DriftKind::Zero;
    throw ConfigError("unknown drift '" + s + "' (expected tumor or zero)");
}

inline Scheme parse_scheme(const std::string& s) {
    if (s == "corrected") return Scheme::Corrected;
    if (s == "uncorrected") return Scheme::Uncorrected;
    throw ConfigError("unknown scheme '" + s + "' (expected corrected or uncorrected)");
}

inline EscapeTarget parse_target(const std::string& s) {
    if (s == "left") return EscapeTarget::LeftExtinction;
    if (s == "right") return EscapeTarget::RightMalignant;
    throw ConfigError("unknown target '" + s + "' (expected left or right)");
}

/// Applies a parsed JSON document on top of `base`.
inline RunConfig apply_json(RunConfig cfg, const nlohmann::json& doc) {
    using detail::read;
    detail::reject_unknown(doc, "", {"model", "noise", "domain", "solver", "mc", "output"});
    if (doc.contains("model")) {
        const auto& m = doc["model"];
        detail::reject_unknown(m, "model", {"drift", "theta", "beta"});
        std::string drift_name = to_string(cfg.drift_kind);
        read(m, "drift", drift_name, "model");
        cfg.drift_kind = parse_drift(drift_name);
        read(m, "theta", cfg.model.theta, "model");
        read(m, "beta", cfg.model.beta, "model");
    }
    if (doc.contains("noise")) {
        const auto& n = doc["noise"];
        detail::reject_unknown(n, "noise", {"a", "epsilon", "alpha"});
        read(n, "a", cfg.noise.a, "noise");
        read(n, "epsilon", cfg.noise.epsilon, "noise");
        read(n, "alpha", cfg.noise.alpha, "noise");
    }
    if (doc.contains("domain")) {
        const auto& d = doc["domain"];
        detail::reject_unknown(d, "domain", {"c", "d", "h"});
        read(d, "c", cfg.c, "domain");
        read(d, "d", cfg.d, "domain");
        read(d, "h", cfg.h, "domain");
    }
    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        detail::reject_unknown(s, "solver", {"scheme"});
        std::string scheme = to_string(cfg.scheme);
        read(s, "scheme", scheme, "solver");
        cfg.scheme = parse_scheme(scheme);
    }
    if (doc.contains("mc")) {
        const auto& m = doc["mc"];
        detail::reject_unknown(m, "mc", {"dt", "n_paths", "max_time", "base_seed", "x0"});
        read(m, "dt", cfg.dt, "mc");
        read(m, "n_paths", cfg.n_paths, "mc");
        read(m, "max_time", cfg.max_time, "mc");
        read(m, "base_seed", cfg.base_seed, "mc");
        read(m, "x0", cfg.x0, "mc");
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        detail::reject_unknown(o, "output", {"path", "format"});
        read(o, "path", cfg.output_path, "output");
        read(o, "format", cfg.output_format, "output");
    }
    return cfg;
}

inline RunConfig parse_config_text(const std::string& text, RunConfig base = {}) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return apply_json(std::move(base), doc);
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

}  // namespace levyexit
