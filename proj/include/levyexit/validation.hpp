#pragma once

// Self-check suite: module invariants plus the end-to-end acceptance criteria.
// Shared by `levyexit validate` and the acceptance test binary.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "levyexit/commands.hpp"
#include "levyexit/config.hpp"
#include "levyexit/levy.hpp"
#include "levyexit/mc_oracle.hpp"
#include "levyexit/model.hpp"
#include "levyexit/nonlocal_solver.hpp"
#include "levyexit/special_functions.hpp"

namespace levyexit::validation {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string measured;
    std::string expected;
};

struct Options {
    /// Smaller Monte Carlo sizes; a smoke run, not the acceptance gate.
    bool quick = false;
    std::optional<unsigned> workers;
    /// Fault-injection hook: added to every zeta value seen by the known-value check.
    double zeta_fault = 0.0;
};

namespace detail {

inline std::string num(double v, int precision = 10) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

template <typename Range>
std::string list(const Range& values, int precision = 8) {
    std::string out = "[";
    bool first = true;
    for (double v : values) {
        out += (first ? "" : ", ") + num(v, precision);
        first = false;
    }
    return out + "]";
}

template <typename Range>
bool strictly_decreasing(const Range& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

/// Closed-form mean exit time of the symmetric alpha-stable process (jump
/// measure nu_alpha) from (-1, 1), evaluated at x.
inline double stable_interval_exit_time(double alpha, double x) {
    return std::sqrt(std::numbers::pi) * std::pow(1.0 - x * x, alpha / 2.0) /
           (std::exp2(alpha) * std::tgamma(1.0 + alpha / 2.0) * std::tgamma((1.0 + alpha) / 2.0));
}

inline const ModelParams kTumor{0.1, 3.0};

inline Grid tumor_grid(double h) { return Grid(0.0, 5.0, h); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Acceptance criteria

inline CheckResult steady_state_values() {
    const auto s = steady_states(detail::kTumor);
    const double err = std::max({std::abs(s.x1), std::abs(s.x2 - 4.0), std::abs(s.x3 - 5.0)});
    return {"AC01", "steady states (theta=0.1, beta=3)", err <= 1e-12,
            "(" + detail::num(s.x1, 17) + ", " + detail::num(s.x2, 17) + ", " + detail::num(s.x3, 17) + ")",
            "(0, 4, 5) within 1e-12"};
}

/// Solver u(0) on (-1, 1) against a Monte Carlo estimate; tolerance
/// max(2%, 3 stderr + dt allowance), where the allowance is the shift of the
/// MC mean between dt and 10 dt.
inline CheckResult pure_stable_benchmark(double alpha, const Options& opt) {
    const double h = 1.0 / 200.0;
    const NoiseParams noise{0.0, 1.0, alpha};
    const auto field = mean_exit_time(Grid(-1.0, 1.0, h), ZeroDrift{}, noise);
    const double solver = field.at(0.0);

    const std::uint64_t paths = opt.quick ? 2000 : 100000;
    const double dt = opt.quick ? 1e-3 : 1e-4;
    const ExitBounds bounds{-1.0, 1.0};
    const double horizon = default_max_time(solver);
    const auto fine = mc_mean_exit_time(0.0, ZeroDrift{}, noise, bounds, {dt, horizon, paths, 2012}, opt.workers);
    const auto coarse =
        mc_mean_exit_time(0.0, ZeroDrift{}, noise, bounds, {10.0 * dt, horizon, paths, 2012}, opt.workers);
    const double allowance = std::abs(fine.mean - coarse.mean);
    const double tol = std::max(0.02 * std::abs(solver), 3.0 * fine.std_error + allowance);
    bool pass = std::abs(solver - fine.mean) <= tol && fine.n_censored == 0;

    std::string expected = "|solver - mc| <= " + detail::num(tol, 4);
    if (alpha == 1.0) {
        pass = pass && std::abs(solver - 1.0) <= 0.02;
        expected += " and |solver - 1| <= 0.02";
    }
    return {"AC02", "pure-stable u(0), alpha=" + detail::num(alpha), pass,
            "solver=" + detail::num(solver, 8) + " mc=" + detail::num(fine.mean, 6) + "+-" +
                detail::num(fine.std_error, 3) + " (dt=" + detail::num(dt) + "; mc@10dt=" +
                detail::num(coarse.mean, 6) + ", censored=" + std::to_string(fine.n_censored) + ")",
            expected};
}

inline CheckResult pure_gaussian_exactness() {
    const Grid g(-1.0, 1.0, 1.0 / 200.0);
    const NoiseParams noise{1.0, 0.0, 1.0};
    const auto u = mean_exit_time(g, ZeroDrift{}, noise);
    const auto p = escape_probability(g, ZeroDrift{}, noise, EscapeTarget::LeftExtinction);
    double eu = 0.0, ep = 0.0;
    for (std::int64_t j = g.left_index(); j <= g.right_index(); ++j) {
        const double x = g.x(j);
        eu = std::max(eu, std::abs(u.at_node(j) - (1.0 - x * x)));
        ep = std::max(ep, std::abs(p.at_node(j) - (1.0 - x) / 2.0));
    }
    return {"AC03", "pure-Gaussian exactness", eu <= 1e-3 && ep <= 1e-3,
            "max|u-(1-x^2)|=" + detail::num(eu, 3) + " max|p-(1-x)/2|=" + detail::num(ep, 3), "both <= 1e-3"};
}

inline CheckResult discrete_duality() {
    const Grid g = detail::tumor_grid(0.01);
    double worst = 0.0;
    int cases = 0;
    for (double a : {0.0, 0.5}) {
        for (double eps : {0.1, 0.5}) {
            for (double alpha : {0.5, 1.0, 1.5}) {
                const auto op = assemble_operator(g, TumorDrift{detail::kTumor}, NoiseParams{a, eps, alpha});
                const auto left = escape_probability(op, EscapeTarget::LeftExtinction);
                const auto right = escape_probability(op, EscapeTarget::RightMalignant);
                for (std::int64_t j = g.left_index(); j <= g.right_index(); ++j) {
                    worst = std::max(worst, std::abs(left.at_node(j) + right.at_node(j) - 1.0));
                }
                ++cases;
            }
        }
    }
    return {"AC04", "duality p_left + p_right = 1", worst <= 1e-8,
            "max deviation " + detail::num(worst, 3) + " over " + std::to_string(cases) + " cases", "<= 1e-8"};
}

inline CheckResult convergence_order() {
    const NoiseParams noise{0.5, 0.5, 1.5};
    const TumorDrift f{detail::kTumor};
    const auto u1 = mean_exit_time(detail::tumor_grid(0.05), f, noise);
    const auto u2 = mean_exit_time(detail::tumor_grid(0.025), f, noise);
    const auto u4 = mean_exit_time(detail::tumor_grid(0.0125), f, noise);
    const auto est = observed_order(u1, u2, u4, 2.5);
    const bool pass = est.order && *est.order >= 1.7 && *est.order <= 2.3;
    return {"AC05", "Richardson order at x=2.5", pass,
            est.order ? "order=" + detail::num(*est.order, 6) : est.note, "in [1.7, 2.3]"};
}

inline CheckResult met_decreases_with_epsilon() {
    std::vector<double> u;
    for (double eps : {0.1, 0.3, 0.5, 0.7}) {
        u.push_back(mean_exit_time(detail::tumor_grid(0.01), TumorDrift{detail::kTumor}, NoiseParams{0.0, eps, 1.0})
                        .at(2.5));
    }
    return {"AC06", "u(2.5) vs epsilon (a=0, alpha=1)", detail::strictly_decreasing(u),
            "u=" + detail::list(u), "strictly decreasing over eps={0.1,0.3,0.5,0.7}"};
}

inline CheckResult met_decreases_with_a() {
    std::vector<double> u;
    for (double a : {0.0, 0.25, 0.5}) {
        u.push_back(mean_exit_time(detail::tumor_grid(0.01), TumorDrift{detail::kTumor}, NoiseParams{a, 0.1, 1.5})
                        .at(2.5));
    }
    return {"AC07", "u(2.5) vs a (eps=0.1, alpha=1.5)", detail::strictly_decreasing(u), "u=" + detail::list(u),
            "strictly decreasing over a={0,0.25,0.5}"};
}

inline CheckResult escape_curves_cross() {
    const Grid g = detail::tumor_grid(0.01);
    const TumorDrift f{detail::kTumor};
    const auto heavy = escape_probability(g, f, NoiseParams{0.0, 0.1, 0.5}, EscapeTarget::LeftExtinction);
    const auto light = escape_probability(g, f, NoiseParams{0.0, 0.1, 1.5}, EscapeTarget::LeftExtinction);
    const std::int64_t first = g.left_index() + 1;
    const std::int64_t last = g.right_index() - 1;
    auto diff = [&](std::int64_t j) { return light.at_node(j) - heavy.at_node(j); };
    std::optional<double> crossing;
    for (std::int64_t j = first; j < last; ++j) {
        if (diff(j) > 0.0 && diff(j + 1) <= 0.0) {
            crossing = g.x(j);
            break;
        }
    }
    const bool pass = diff(first) > 0.0 && diff(last) < 0.0 && crossing.has_value();
    return {"AC08", "left-escape curves alpha=0.5 vs 1.5 cross (a=0, eps=0.1)", pass,
            "diff(x=" + detail::num(g.x(first)) + ")=" + detail::num(diff(first), 4) + " diff(x=" +
                detail::num(g.x(last)) + ")=" + detail::num(diff(last), 4) +
                (crossing ? " crossing near x=" + detail::num(*crossing, 4) : " no crossing"),
            "sign change of p_{1.5} - p_{0.5}, positive at small x"};
}

inline CheckResult escape_decreases_with_epsilon() {
    const std::array<double, 3> probes{1.0, 2.5, 4.0};
    const std::array<double, 4> eps_values{0.1, 0.3, 0.5, 0.7};
    std::array<std::vector<double>, 3> by_probe;
    for (double eps : eps_values) {
        const auto p = escape_probability(detail::tumor_grid(0.01), TumorDrift{detail::kTumor},
                                          NoiseParams{0.0, eps, 1.0}, EscapeTarget::LeftExtinction);
        for (std::size_t k = 0; k < probes.size(); ++k) by_probe[k].push_back(p.at(probes[k]));
    }
    int decreasing = 0;
    std::string measured;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (detail::strictly_decreasing(by_probe[k])) ++decreasing;
        measured += "x=" + detail::num(probes[k]) + ":" + detail::list(by_probe[k], 6) + " ";
    }
    return {"AC09", "p_left vs epsilon at probes {1, 2.5, 4}", decreasing >= 2,
            measured + "(" + std::to_string(decreasing) + "/3 decreasing)", "decreasing at a majority of probes"};
}

inline std::vector<CheckResult> sampler_fidelity() {
    const std::array<double, 3> lambdas{0.5, 1.0, 2.0};
    std::vector<CheckResult> out;
    for (double alpha : {0.5, 1.0, 1.5}) {
        const double dev = empirical_cf_check(alpha, 1000000, lambdas, 77);
        out.push_back({"AC10", "empirical CF, alpha=" + detail::num(alpha), dev < 0.005,
                       "max deviation " + detail::num(dev, 4), "< 0.005 (n=1e6, lambda in {0.5,1,2})"});
    }
    return out;
}

inline std::vector<CheckResult> special_function_values(const Options& opt = {}) {
    std::vector<CheckResult> out;
    const double z0 = riemann_zeta(0.0) + opt.zeta_fault;
    const double zm1 = riemann_zeta(-1.0) + opt.zeta_fault;
    out.push_back({"AC11", "zeta known values", std::abs(z0 + 0.5) <= 1e-10 && std::abs(zm1 + 1.0 / 12.0) <= 1e-10,
                   "zeta(0)=" + detail::num(z0, 15) + " zeta(-1)=" + detail::num(zm1, 15),
                   "-0.5 and -1/12 within 1e-10"});
    const double g = gamma_fn(0.5);
    out.push_back({"AC11", "gamma(1/2)", std::abs(g - std::sqrt(std::numbers::pi)) <= 1e-12,
                   "gamma(0.5)=" + detail::num(g, 17), "sqrt(pi) within 1e-12"});
    double worst = 0.0;
    for (double x : {0.3, 1.7, 6.2}) {
        worst = std::max(worst, std::abs(gamma_fn(x + 1.0) / (x * gamma_fn(x)) - 1.0));
    }
    out.push_back({"AC11", "gamma recurrence", worst <= 1e-12, "max relative deviation " + detail::num(worst, 3),
                   "<= 1e-12 at x in {0.3, 1.7, 6.2}"});
    return out;
}

/// Configuration of the determinism check: tumor drift, a=0.5, eps=0.5, alpha=1.5, x0=2.5.
inline RunConfig determinism_config(bool quick) {
    RunConfig cfg;
    cfg.noise = {0.5, 0.5, 1.5};
    cfg.x0 = 2.5;
    cfg.dt = 1e-3;
    cfg.n_paths = quick ? 500 : 4000;
    cfg.base_seed = 424242;
    return cfg;
}

inline CheckResult mc_report_determinism(const Options& opt) {
    const RunConfig cfg = determinism_config(opt.quick);
    const auto r1 = cmd_mc(cfg, Quantity::MeanExitTime, 1u).text;
    const auto r8 = cmd_mc(cfg, Quantity::MeanExitTime, 8u).text;
    const auto r8b = cmd_mc(cfg, Quantity::MeanExitTime, 8u).text;
    const bool pass = r1 == r8 && r8 == r8b;
    std::string line = r1;
    if (!line.empty() && line.back() == '\n') line.pop_back();
    return {"AC12", "mc report byte-identical for 1 and 8 workers", pass, pass ? line : "reports differ",
            "identical bytes"};
}

inline std::vector<CheckResult> acceptance_suite(const Options& opt = {}) {
    std::vector<CheckResult> out;
    out.push_back(steady_state_values());
    for (double alpha : {0.5, 1.0, 1.5}) out.push_back(pure_stable_benchmark(alpha, opt));
    out.push_back(pure_gaussian_exactness());
    out.push_back(discrete_duality());
    out.push_back(convergence_order());
    out.push_back(met_decreases_with_epsilon());
    out.push_back(met_decreases_with_a());
    out.push_back(escape_curves_cross());
    out.push_back(escape_decreases_with_epsilon());
    for (auto& r : sampler_fidelity()) out.push_back(std::move(r));
    for (auto& r : special_function_values(opt)) out.push_back(std::move(r));
    out.push_back(mc_report_determinism(opt));
    return out;
}

// ---------------------------------------------------------------------------
// Module invariants

inline std::vector<CheckResult> model_invariants() {
    std::vector<CheckResult> out;
    double worst_root = 0.0;
    for (const ModelParams p : {ModelParams{0.1, 3.0}, ModelParams{0.2, 1.0}, ModelParams{0.5, 1.1}}) {
        const auto s = steady_states(p);
        worst_root = std::max({worst_root, std::abs(drift(s.x1, p)), std::abs(drift(s.x2, p)),
                               std::abs(drift(s.x3, p))});
    }
    out.push_back({"model", "drift vanishes at steady states", worst_root <= 1e-12,
                   "max |f| " + detail::num(worst_root, 3), "<= 1e-12"});

    double worst_fd = 0.0;
    for (double x = -0.85; x < 10.0; x += 0.25) {
        const double step = 1e-6;
        const double du = (potential(x + step, detail::kTumor) - potential(x - step, detail::kTumor)) / (2 * step);
        worst_fd = std::max(worst_fd, std::abs(du + drift(x, detail::kTumor)));
    }
    out.push_back({"model", "dU/dx = -f (central differences)", worst_fd <= 1e-6,
                   "max deviation " + detail::num(worst_fd, 3), "<= 1e-6"});

    bool monotone = true;
    for (double theta : {0.1, 0.4, 0.8}) {
        bool seen_false = false;
        for (double beta = 0.05; beta < 4.0; beta += 0.05) {
            const bool b = is_bistable({theta, beta});
            if (b && seen_false) monotone = false;
            if (!b) seen_false = true;
        }
    }
    out.push_back({"model", "bistability monotone in beta", monotone, monotone ? "monotone" : "violated",
                   "monotone"});
    return out;
}

inline std::vector<CheckResult> levy_invariants() {
    std::vector<CheckResult> out;
    const double c1 = stable_constant(1.0);
    out.push_back({"levy", "C_1 = 1/pi", std::abs(c1 - 1.0 / std::numbers::pi) <= 1e-14, detail::num(c1, 15),
                   "1/pi"});
    const double chalf = stable_constant(0.5);
    const double chalf_exact = 1.0 / (2.0 * std::sqrt(2.0 * std::numbers::pi));
    out.push_back({"levy", "C_0.5 = 1/(2 sqrt(2 pi))", std::abs(chalf - chalf_exact) <= 1e-14,
                   detail::num(chalf, 15), detail::num(chalf_exact, 15)});
    const double z_half = riemann_zeta(0.5);
    out.push_back({"levy", "zeta(0.5)", std::abs(z_half + 1.4603545088095868) <= 1e-10, detail::num(z_half, 15),
                   "-1.4603545088095868 within 1e-10"});
    return out;
}

/// Corrected and uncorrected schemes against the closed-form exit time at x=0 on (-1, 1), h=1/200.
inline CheckResult zeta_correction_effectiveness(double alpha) {
    const Grid g(-1.0, 1.0, 1.0 / 200.0);
    const NoiseParams noise{0.0, 1.0, alpha};
    const double exact = detail::stable_interval_exit_time(alpha, 0.0);
    const double corrected = std::abs(mean_exit_time(g, ZeroDrift{}, noise, Scheme::Corrected).at(0.0) - exact);
    const double plain = std::abs(mean_exit_time(g, ZeroDrift{}, noise, Scheme::Uncorrected).at(0.0) - exact);
    return {"solver", "zeta correction no worse than uncorrected, alpha=" + detail::num(alpha), corrected <= plain,
            "error corrected=" + detail::num(corrected, 4) + " uncorrected=" + detail::num(plain, 4),
            "corrected <= uncorrected"};
}

inline std::vector<CheckResult> solver_invariants() {
    std::vector<CheckResult> out;

    // Constant-function identity on the tumor problem.
    {
        const NoiseParams noise{0.3, 0.5, 1.2};
        const auto op = assemble_operator(detail::tumor_grid(0.05), TumorDrift{detail::kTumor}, noise);
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.matrix.rows());
        const Eigen::VectorXd action = op.matrix * ones + op.left_weights + op.right_weights;
        const double dev = (action + op.sink_left + op.sink_right).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, (op.sink_left + op.sink_right).cwiseAbs().maxCoeff());
        out.push_back({"solver", "operator on constants equals the exterior sink", dev <= 1e-10 * scale,
                       "max deviation " + detail::num(dev, 3), "<= 1e-10 (relative)"});
    }

    // Reflection symmetry for f = 0 on (-1, 1).
    {
        const Grid g(-1.0, 1.0, 0.01);
        const NoiseParams noise{0.2, 0.7, 0.8};
        const auto op = assemble_operator(g, ZeroDrift{}, noise);
        const auto u = mean_exit_time(op);
        const auto pl = escape_probability(op, EscapeTarget::LeftExtinction);
        const auto pr = escape_probability(op, EscapeTarget::RightMalignant);
        double worst = 0.0;
        for (std::int64_t j = g.left_index(); j <= g.right_index(); ++j) {
            worst = std::max({worst, std::abs(u.at_node(j) - u.at_node(-j)),
                              std::abs(pl.at_node(j) - pr.at_node(-j))});
        }
        out.push_back({"solver", "reflection symmetry (f=0, c=-d)", worst <= 1e-10,
                       "max deviation " + detail::num(worst, 3), "<= 1e-10"});
    }

    // Monotone noise response at x = 2.5 for the tumor model.
    {
        std::vector<double> by_eps;
        for (double eps : {0.1, 0.3, 0.5, 0.7}) {
            by_eps.push_back(
                mean_exit_time(detail::tumor_grid(0.01), TumorDrift{detail::kTumor}, NoiseParams{0.25, eps, 1.5}).at(2.5));
        }
        out.push_back({"solver", "u(2.5) decreases with epsilon (a=0.25, alpha=1.5)",
                       detail::strictly_decreasing(by_eps), detail::list(by_eps), "strictly decreasing"});
        std::vector<double> by_a;
        for (double a : {0.0, 0.25, 0.5}) {
            by_a.push_back(
                mean_exit_time(detail::tumor_grid(0.01), TumorDrift{detail::kTumor}, NoiseParams{a, 0.5, 0.5}).at(2.5));
        }
        out.push_back({"solver", "u(2.5) decreases with a (eps=0.5, alpha=0.5)", detail::strictly_decreasing(by_a),
                       detail::list(by_a), "strictly decreasing"});
    }

    for (double alpha : {0.5, 1.0, 1.5}) out.push_back(zeta_correction_effectiveness(alpha));
    return out;
}

inline std::vector<CheckResult> mc_invariants(const Options& opt) {
    std::vector<CheckResult> out;
    const SimConfig cfg{1e-3, 1e3, opt.quick ? 200u : 2000u, 99};
    const auto outcomes = simulate_paths(2.5, TumorDrift{detail::kTumor}, NoiseParams{0.5, 0.5, 1.5},
                                         ExitBounds{0.0, 5.0}, cfg, opt.workers);
    const auto est = summarize_exit_time(outcomes);
    out.push_back({"mc", "left + right + censored = n_paths",
                   est.n_left + est.n_right + est.n_censored == est.n_paths,
                   std::to_string(est.n_left) + "+" + std::to_string(est.n_right) + "+" +
                       std::to_string(est.n_censored),
                   std::to_string(est.n_paths)});
    const double s1 = stable_increment_scale(0.3, 1.5, 1e-3);
    const double s2 = stable_increment_scale(0.6, 1.5, 1e-3);
    const double ratio = s2 / s1;
    out.push_back({"mc", "doubling epsilon scales increments by 2^(1/alpha)",
                   std::abs(ratio - std::pow(2.0, 1.0 / 1.5)) <= 1e-14, detail::num(ratio, 16),
                   detail::num(std::pow(2.0, 1.0 / 1.5), 16)});
    return out;
}

inline std::vector<CheckResult> full_suite(const Options& opt = {}) {
    std::vector<CheckResult> out;
    for (auto&& group : {model_invariants(), levy_invariants(), solver_invariants(), mc_invariants(opt),
                         acceptance_suite(opt)}) {
        out.insert(out.end(), group.begin(), group.end());
    }
    return out;
}

inline std::string format_result(const CheckResult& r) {
    return std::string(r.pass ? "PASS" : "FAIL") + " [" + r.id + "] " + r.name + ": measured " + r.measured +
           "; expected " + r.expected;
}

}  // namespace levyexit::validation
