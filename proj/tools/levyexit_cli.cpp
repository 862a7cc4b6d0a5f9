// levyexit: mean exit times and escape probabilities under Brownian plus
// alpha-stable Levy noise.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
// 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "levyexit/commands.hpp"
#include "levyexit/config.hpp"
#include "levyexit/validation.hpp"

namespace {

using namespace levyexit;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// Command-line values; only the ones given override the config file.
struct Overrides {
    std::optional<double> theta, beta, a, eps, alpha, c, d, h, dt, max_time, x0;
    std::optional<std::uint64_t> seed, paths;
    std::optional<std::string> drift, scheme, format;
    std::string out = "-";
    std::string config;
    std::string target = "left";
    std::optional<unsigned> workers;

    void attach(CLI::App& app) {
        app.add_option("--config", config, "JSON configuration file");
        app.add_option("--drift", drift, "drift field: tumor or zero");
        app.add_option("--theta", theta, "model parameter theta");
        app.add_option("--beta", beta, "model parameter beta");
        app.add_option("--a", a, "Gaussian diffusion coefficient");
        app.add_option("--eps", eps, "jump-noise intensity epsilon");
        app.add_option("--alpha", alpha, "stability index in (0, 2)");
        app.add_option("--c", c, "left end of the exit interval (default x1)");
        app.add_option("--d", d, "right end of the exit interval (default x3)");
        app.add_option("--h", h, "grid step (default (d-c)/500)");
        app.add_option("--scheme", scheme, "corrected or uncorrected");
        app.add_option("--target", target, "escape target: left or right")->check(CLI::IsMember({"left", "right"}));
        app.add_option("--out", out, "output path, '-' for stdout");
        app.add_option("--format", format, "csv or svg");
        app.add_option("--seed", seed, "Monte Carlo base seed");
        app.add_option("--dt", dt, "Monte Carlo time step");
        app.add_option("--paths", paths, "Monte Carlo path count");
        app.add_option("--max-time", max_time, "Monte Carlo censoring horizon");
        app.add_option("--x0", x0, "Monte Carlo starting point");
        app.add_option("--workers", workers, "worker threads (default: LEVYEXIT_WORKERS or all cores)");
    }

    RunConfig resolve() const {
        RunConfig cfg = config.empty() ? RunConfig{} : load_config_file(config);
        if (drift) cfg.drift_kind = parse_drift(*drift);
        if (theta) cfg.model.theta = *theta;
        if (beta) cfg.model.beta = *beta;
        if (a) cfg.noise.a = *a;
        if (eps) cfg.noise.epsilon = *eps;
        if (alpha) cfg.noise.alpha = *alpha;
        if (c) cfg.c = *c;
        if (d) cfg.d = *d;
        if (h) cfg.h = *h;
        if (scheme) cfg.scheme = parse_scheme(*scheme);
        if (format) cfg.output_format = *format;
        if (seed) cfg.base_seed = *seed;
        if (dt) cfg.dt = *dt;
        if (paths) cfg.n_paths = *paths;
        if (max_time) cfg.max_time = *max_time;
        if (x0) cfg.x0 = *x0;
        if (out != "-") cfg.output_path = out;
        return cfg;
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<double> parse_values(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse sweep value '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"levyexit: exit problems for a bistable tumor model under Levy noise"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    Overrides opts;
    auto* met = app.add_subcommand("met", "mean exit time u(x) on the grid (CSV x,u)");
    auto* escape = app.add_subcommand("escape", "escape probability p(x) into the target set (CSV x,p)");
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate at x0 next to the solver value");
    auto* sweep = app.add_subcommand("sweep", "long-format curves over a swept parameter");
    auto* figure = app.add_subcommand("figure", "panel CSVs for a figure preset (fig2 .. fig11)");
    auto* validate = app.add_subcommand("validate", "run invariant and acceptance checks");
    for (auto* sub : {met, escape, mc, sweep, figure, validate}) opts.attach(*sub);

    std::string quantity = "met";
    mc->add_option("--quantity", quantity, "met or escape")->check(CLI::IsMember({"met", "escape"}));
    std::string sweep_param;
    std::string sweep_values;
    sweep->add_option("--param", sweep_param, "swept parameter: a, epsilon, alpha or x0")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep->add_option("--quantity", quantity, "met or escape")->check(CLI::IsMember({"met", "escape"}));
    std::string preset;
    std::string out_dir = "figures";
    figure->add_option("preset", preset, "fig2 .. fig11")->required();
    figure->add_option("--dir", out_dir, "output directory");
    bool quick = false;
    std::string fault;
    validate->add_flag("--quick", quick, "reduced Monte Carlo sizes (smoke run)");
    validate->add_option("--inject-fault", fault, "test hook: corrupt a checked value (zeta)")
        ->check(CLI::IsMember({"zeta"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const RunConfig cfg = opts.resolve();
        const EscapeTarget target = parse_target(opts.target);

        if (met->parsed()) {
            const auto r = cmd_met(cfg);
            print_warnings(r.warnings);
            emit(cfg.output_path, r.text);
        } else if (escape->parsed()) {
            const auto r = cmd_escape(cfg, target);
            print_warnings(r.warnings);
            emit(cfg.output_path, r.text);
        } else if (mc->parsed()) {
            const auto r = cmd_mc(cfg, quantity_for(quantity == "escape", target), opts.workers);
            print_warnings(r.warnings);
            emit(cfg.output_path, r.text);
        } else if (sweep->parsed()) {
            const SweepSpec spec{sweep_param, parse_values(sweep_values)};
            try {
                const auto r = cmd_sweep(cfg, spec, quantity_for(quantity == "escape", target), opts.workers);
                print_warnings(r.warnings);
                emit(cfg.output_path, r.text);
            } catch (const NumericalFailure& e) {
                emit(cfg.output_path, e.partial_output);
                throw;
            }
        } else if (figure->parsed()) {
            const auto r = cmd_figure(preset, cfg, out_dir, cfg.output_format == "svg", opts.workers);
            print_warnings(r.warnings);
            for (const auto& f : r.files) std::cout << f.string() << "\n";
        } else if (validate->parsed()) {
            validation::Options vopt;
            vopt.quick = quick;
            vopt.workers = opts.workers;
            if (fault == "zeta") vopt.zeta_fault = 1e-3;
            int failures = 0;
            for (const auto& r : validation::full_suite(vopt)) {
                std::cout << validation::format_result(r) << "\n";
                if (!r.pass) ++failures;
            }
            std::cout << (failures ? "validation FAILED: " + std::to_string(failures) + " check(s)"
                                   : std::string("validation passed"))
                      << std::endl;
            return failures ? kExitValidation : 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DivisibilityError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const RegimeError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
