#pragma once

// Subcommand implementations behind the levyexit CLI. Each returns its output
// as a string so the same code paths are exercised by the tests.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "levyexit/config.hpp"
#include "levyexit/csv.hpp"
#include "levyexit/mc_oracle.hpp"
#include "levyexit/nonlocal_solver.hpp"
#include "levyexit/parallel.hpp"
#include "levyexit/svg.hpp"

namespace levyexit {

enum class Quantity { MeanExitTime, EscapeLeft, EscapeRight };

inline const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::MeanExitTime: return "met";
        case Quantity::EscapeLeft: return "escape-left";
        case Quantity::EscapeRight: return "escape-right";
    }
    return "?";
}

inline Quantity quantity_for(bool escape, EscapeTarget target) {
    if (!escape) return Quantity::MeanExitTime;
    return target == EscapeTarget::LeftExtinction ? Quantity::EscapeLeft : Quantity::EscapeRight;
}

/// Raised when a solve fails for reasons other than configuration; the CLI maps it to exit 3.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, std::string partial = {})
        : std::runtime_error(what), partial_output(std::move(partial)) {}

    std::string partial_output;
};

struct CommandOutput {
    std::string text;
    std::vector<std::string> warnings;
};

inline SolutionField solve_quantity(const RunConfig& cfg, Quantity q) {
    const Grid g = cfg.grid();
    try {
        const auto op = assemble_operator(g, cfg.drift_field(), cfg.noise, cfg.scheme);
        switch (q) {
            case Quantity::MeanExitTime: return mean_exit_time(op);
            case Quantity::EscapeLeft: return escape_probability(op, EscapeTarget::LeftExtinction);
            case Quantity::EscapeRight: return escape_probability(op, EscapeTarget::RightMalignant);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw NumericalFailure(e.what());
    }
    throw std::logic_error("unreachable");
}

namespace detail {

inline std::vector<std::string> merge(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::string field_csv(const RunConfig& cfg, const SolutionField& field, const char* command,
                             const char* column) {
    CsvWriter csv({"x", column});
    csv.comment(std::string("command=") + command);
    csv.comment("field=" + std::string(to_string(field.kind)));
    csv.comment(cfg.describe());
    const Grid& g = field.grid;
    for (std::int64_t j = g.left_index(); j <= g.right_index(); ++j) {
        csv.row({g.x(j), field.at_node(j)});
    }
    return csv.str();
}

inline std::string field_svg(const RunConfig& cfg, const SolutionField& field, const char* column) {
    Curve curve{column, {}, {}};
    for (std::int64_t j = field.grid.left_index(); j <= field.grid.right_index(); ++j) {
        curve.x.push_back(field.grid.x(j));
        curve.y.push_back(field.at_node(j));
    }
    return render_svg(std::string(to_string(field.kind)) + ": " + cfg.describe(), {curve});
}

}  // namespace detail

/// x,u on every node of [c, d]; endpoint rows carry the exterior value 0.
inline CommandOutput cmd_met(const RunConfig& cfg) {
    auto warnings = cfg.validate();
    const auto field = solve_quantity(cfg, Quantity::MeanExitTime);
    std::string text = cfg.output_format == "svg" ? detail::field_svg(cfg, field, "u")
                                                  : detail::field_csv(cfg, field, "met", "u");
    return {std::move(text), detail::merge(std::move(warnings), field.warnings)};
}

/// x,p on every node of [c, d]; endpoint rows carry the Dirichlet data of the target.
inline CommandOutput cmd_escape(const RunConfig& cfg, EscapeTarget target) {
    auto warnings = cfg.validate();
    const auto field = solve_quantity(cfg, quantity_for(true, target));
    const std::string command = std::string("escape --target ") + to_string(target);
    std::string text = cfg.output_format == "svg" ? detail::field_svg(cfg, field, "p")
                                                  : detail::field_csv(cfg, field, command.c_str(), "p");
    return {std::move(text), detail::merge(std::move(warnings), field.warnings)};
}

/// Monte Carlo estimate at x0 next to the solver value at the nearest node.
inline CommandOutput cmd_mc(const RunConfig& cfg, Quantity quantity, std::optional<unsigned> workers = {}) {
    auto warnings = cfg.validate();
    if (!cfg.x0) {
        throw ConfigError("mc: x0 is required (--x0 or mc.x0)");
    }
    const auto [lo, hi] = cfg.interval();
    const double x0 = *cfg.x0;
    if (!(x0 > lo && x0 < hi)) {
        throw ConfigError("mc: x0 must lie inside (c, d)");
    }

    const auto met = solve_quantity(cfg, Quantity::MeanExitTime);
    const auto field = quantity == Quantity::MeanExitTime ? met : solve_quantity(cfg, quantity);
    const std::int64_t node = field.grid.nearest_node(x0);
    const double solver_value = field.at_node(node);

    const SimConfig sim = cfg.sim_config(met.at_node(node));
    const auto outcomes = simulate_paths(x0, cfg.drift_field(), cfg.noise, ExitBounds{lo, hi}, sim, workers);
    const McEstimate est = quantity == Quantity::MeanExitTime
                               ? summarize_exit_time(outcomes)
                               : summarize_escape(outcomes, quantity == Quantity::EscapeLeft
                                                                ? EscapeTarget::LeftExtinction
                                                                : EscapeTarget::RightMalignant);

    std::ostringstream os;
    os.precision(12);
    os << std::scientific;
    os << "quantity=" << to_string(quantity) << " x0=" << x0 << " estimate=" << est.mean
       << " stderr=" << est.std_error << " paths=" << est.n_paths << " censored=" << est.n_censored
       << " left=" << est.n_left << " right=" << est.n_right << " dt=" << sim.dt << " max_time=" << sim.max_time
       << " seed=" << sim.base_seed << " solver_x=" << field.grid.x(node)
       << " solver=" << solver_value << " z=";
    if (est.std_error > 0.0) {
        os << (est.mean - solver_value) / est.std_error;
    } else {
        os << "undefined";
    }
    os << " reliable=" << (est.unreliable || est.variance_undefined ? "no" : "yes") << "\n";

    if (est.unreliable) {
        warnings.push_back("mc: censored fraction above 1%; estimate unreliable");
    }
    if (est.variance_undefined) {
        warnings.push_back("mc: fewer than two exits; standard error undefined");
    }
    return {os.str(), detail::merge(std::move(warnings), field.warnings)};
}

struct SweepSpec {
    std::string parameter;  ///< a | epsilon | alpha | x0
    std::vector<double> values;
};

namespace detail {

inline RunConfig with_value(RunConfig cfg, const std::string& parameter, double v) {
    if (parameter == "a") {
        cfg.noise.a = v;
    } else if (parameter == "epsilon") {
        cfg.noise.epsilon = v;
    } else if (parameter == "alpha") {
        cfg.noise.alpha = v;
    } else if (parameter == "x0") {
        cfg.x0 = v;
    } else {
        throw ConfigError("sweep: unknown parameter '" + parameter + "' (expected a, epsilon, alpha or x0)");
    }
    return cfg;
}

inline void validate_sweep(const RunConfig& base, const SweepSpec& spec) {
    if (spec.values.empty()) {
        throw ConfigError("sweep: value list is empty");
    }
    for (double v : spec.values) {
        const RunConfig cfg = with_value(base, spec.parameter, v);
        cfg.validate();
        if (spec.parameter == "x0") {
            const auto [lo, hi] = cfg.interval();
            if (!(v > lo && v < hi)) throw ConfigError("sweep: x0 value outside (c, d)");
        }
    }
}

}  // namespace detail

/// Long-format curves (swept_value, x, value), ordered by swept value then x.
/// Sweep points are solved concurrently; the output order does not depend on it.
inline CommandOutput cmd_sweep(const RunConfig& base, const SweepSpec& spec, Quantity quantity,
                               std::optional<unsigned> workers = {}, const std::vector<std::string>& extra_meta = {}) {
    detail::validate_sweep(base, spec);
    auto warnings = base.validate();

    CsvWriter csv({"swept_value", "x", "value"});
    csv.comment("command=sweep");
    csv.comment(std::string("quantity=") + to_string(quantity));
    csv.comment("swept=" + spec.parameter);
    csv.comment(base.describe());
    for (const auto& m : extra_meta) csv.comment(m);

    if (spec.parameter == "x0") {
        const auto field = solve_quantity(base, quantity);
        for (double x0 : spec.values) {
            const auto node = field.grid.nearest_node(x0);
            csv.row({x0, field.grid.x(node), field.at_node(node)});
        }
        return {csv.str(), detail::merge(std::move(warnings), field.warnings)};
    }

    std::vector<std::optional<SolutionField>> fields(spec.values.size());
    std::vector<std::string> errors(spec.values.size());
    parallel_for(spec.values.size(), resolve_workers(workers), [&](std::size_t i) {
        try {
            fields[i] = solve_quantity(detail::with_value(base, spec.parameter, spec.values[i]), quantity);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (!fields[i]) {
            std::ostringstream os;
            os << "sweep: point " << spec.parameter << "=" << spec.values[i] << " failed: " << errors[i];
            throw NumericalFailure(os.str(), csv.str() + "# PARTIAL OUTPUT: " + os.str() + "\n");
        }
        const auto& field = *fields[i];
        for (std::int64_t j = field.grid.left_index(); j <= field.grid.right_index(); ++j) {
            csv.row({spec.values[i], field.grid.x(j), field.at_node(j)});
        }
        warnings = detail::merge(std::move(warnings), field.warnings);
    }
    return {csv.str(), std::move(warnings)};
}

/// Parameter layout of one figure preset.
struct FigurePreset {
    std::string name;
    Quantity quantity = Quantity::MeanExitTime;
    std::string curve_parameter;  ///< swept within each panel
    std::vector<double> curve_values;
    /// Fixed values per panel, e.g. {{"a", 0}, {"epsilon", 0.1}}.
    std::vector<std::vector<std::pair<std::string, double>>> panels;
};

inline const std::vector<double>& default_alpha_curves() {
    static const std::vector<double> v{0.1, 0.5, 1.0, 1.5};
    return v;
}
inline const std::vector<double>& default_epsilon_curves() {
    static const std::vector<double> v{0.1, 0.3, 0.5, 0.7};
    return v;
}
inline const std::vector<double>& default_a_curves() {
    static const std::vector<double> v{0.0, 0.25, 0.5, 0.75};
    return v;
}

/// Figure presets fig2..fig11. The curve-parameter lists are artifact defaults.
inline FigurePreset figure_preset(const std::string& name) {
    auto over_epsilon_panels = [](double a) {
        std::vector<std::vector<std::pair<std::string, double>>> p;
        for (double e : default_epsilon_curves()) p.push_back({{"a", a}, {"epsilon", e}});
        return p;
    };
    auto over_alpha_panels = [](double a) {
        std::vector<std::vector<std::pair<std::string, double>>> p;
        for (double al : default_alpha_curves()) p.push_back({{"a", a}, {"alpha", al}});
        return p;
    };
    const std::vector<std::vector<std::pair<std::string, double>>> noise_pairs{
        {{"epsilon", 0.1}, {"alpha", 0.5}},
        {{"epsilon", 0.1}, {"alpha", 1.5}},
        {{"epsilon", 0.5}, {"alpha", 0.5}},
        {{"epsilon", 0.5}, {"alpha", 1.5}},
    };

    FigurePreset f;
    f.name = name;
    int number = 0;
    if (name.size() > 3 && name.rfind("fig", 0) == 0) {
        try {
            std::size_t used = 0;
            number = std::stoi(name.substr(3), &used);
            if (used != name.size() - 3) number = 0;
        } catch (const std::exception&) {
            number = 0;
        }
    }
    if (number < 2 || number > 11) {
        throw ConfigError("unknown figure preset '" + name + "' (expected fig2 .. fig11)");
    }
    f.quantity = number <= 6 ? Quantity::MeanExitTime : Quantity::EscapeLeft;
    switch (number <= 6 ? number : number - 5) {
        case 2:  // fig2 / fig7
            f.curve_parameter = "alpha";
            f.curve_values = default_alpha_curves();
            f.panels = over_epsilon_panels(0.0);
            break;
        case 3:  // fig3 / fig8
            f.curve_parameter = "epsilon";
            f.curve_values = default_epsilon_curves();
            f.panels = over_alpha_panels(0.0);
            break;
        case 4:  // fig4 / fig9
            f.curve_parameter = "alpha";
            f.curve_values = default_alpha_curves();
            f.panels = over_epsilon_panels(0.5);
            break;
        case 5:  // fig5 / fig10
            f.curve_parameter = "epsilon";
            f.curve_values = default_epsilon_curves();
            f.panels = over_alpha_panels(0.5);
            break;
        case 6:  // fig6 / fig11
            f.curve_parameter = "a";
            f.curve_values = default_a_curves();
            f.panels = noise_pairs;
            break;
    }
    return f;
}

struct FigureOutput {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

/// Writes one long-format CSV per panel (<preset>_<letter>.csv) into out_dir,
/// plus an SVG per panel when svg is set.
inline FigureOutput cmd_figure(const std::string& preset_name, const RunConfig& base,
                               const std::filesystem::path& out_dir, bool svg = false,
                               std::optional<unsigned> workers = {}) {
    const FigurePreset preset = figure_preset(preset_name);
    std::filesystem::create_directories(out_dir);
    FigureOutput out;
    for (std::size_t p = 0; p < preset.panels.size(); ++p) {
        RunConfig cfg = base;
        std::ostringstream panel_desc;
        panel_desc << "panel=(" << static_cast<char>('a' + p) << ")";
        for (const auto& [key, value] : preset.panels[p]) {
            cfg = detail::with_value(cfg, key, value);
            panel_desc << " " << key << "=" << value;
        }
        const std::vector<std::string> meta{
            "figure=" + preset.name, panel_desc.str(),
            "curve_values=artifact-default"};
        const SweepSpec spec{preset.curve_parameter, preset.curve_values};
        auto result = cmd_sweep(cfg, spec, preset.quantity, workers, meta);

        const std::string stem = preset.name + "_" + static_cast<char>('a' + p);
        const auto csv_path = out_dir / (stem + ".csv");
        std::ofstream(csv_path, std::ios::binary) << result.text;
        out.files.push_back(csv_path);

        if (svg) {
            std::vector<Curve> curves;
            std::istringstream in(result.text);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#' || line[0] == 's') continue;
                double sv = 0, x = 0, v = 0;
                if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &sv, &x, &v) != 3) continue;
                std::ostringstream label;
                label << preset.curve_parameter << "=" << sv;
                if (curves.empty() || curves.back().label != label.str()) curves.push_back({label.str(), {}, {}});
                curves.back().x.push_back(x);
                curves.back().y.push_back(v);
            }
            const auto svg_path = out_dir / (stem + ".svg");
            std::ofstream(svg_path, std::ios::binary) << render_svg(preset.name + " " + panel_desc.str(), curves);
            out.files.push_back(svg_path);
        }
        out.warnings = detail::merge(std::move(out.warnings), result.warnings);
    }
    return out;
}

}  // namespace levyexit
