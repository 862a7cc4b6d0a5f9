#pragma once

// Monte Carlo estimation of exit times and exit sides by Euler simulation of
//
//   dX = f(X) dt + dL,   L with generating triplet (0, a, eps nu_alpha),
//
// one independent Gaussian and one exact alpha-stable increment per step.
// Randomness of path i is a pure function of (base_seed, i), so estimates do
// not depend on the number of workers.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "levyexit/errors.hpp"
#include "levyexit/levy.hpp"
#include "levyexit/nonlocal_solver.hpp"
#include "levyexit/parallel.hpp"

namespace levyexit {

struct SimConfig {
    double dt = 1e-3;
    double max_time = 1e4;
    std::uint64_t n_paths = 10000;
    std::uint64_t base_seed = 20120602;

    void validate() const {
        std::ostringstream os;
        if (!(dt > 0.0)) {
            os << "mc: dt=" << dt << " must be positive";
        } else if (!(max_time >= 100.0 * dt)) {
            os << "mc: max_time=" << max_time << " must be at least 100*dt";
        } else if (n_paths < 1) {
            os << "mc: n_paths must be >= 1";
        }
        if (!os.str().empty()) throw ConfigError(os.str());
    }
};

/// Censoring horizon: 100 x the solver's mean exit time at x0 when known, else 1e4.
inline double default_max_time(std::optional<double> solver_mean_exit_time) {
    if (solver_mean_exit_time && *solver_mean_exit_time > 0.0) {
        return 100.0 * *solver_mean_exit_time;
    }
    return 1e4;
}

struct ExitBounds {
    double c = 0.0;
    double d = 1.0;
};

enum class ExitSide { Left, Right, Censored };

struct ExitOutcome {
    ExitSide side = ExitSide::Censored;
    double time = 0.0;     ///< exit time, or the horizon reached when censored
    double position = 0.0;  ///< landing position (last state when censored)
};

/// Landing-set rule: X <= c is a left exit, X >= d a right exit.
inline std::optional<ExitSide> classify_landing(double x, const ExitBounds& b) {
    if (x <= b.c) return ExitSide::Left;
    if (x >= b.d) return ExitSide::Right;
    return std::nullopt;
}

/// SplitMix64 finalizer; also used to derive per-path seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t path_seed(std::uint64_t base_seed, std::uint64_t path_index) {
    return mix64(base_seed ^ mix64(path_index));
}

/// Per-path random source: a 64-bit Mersenne Twister seeded from path_seed.
class PathRng {
public:
    explicit PathRng(std::uint64_t seed) : engine_(seed) {}

    double gaussian() { return normal_(engine_); }
    double stable(double alpha) {
        const double u = angle_(engine_);
        const double w = exponential_(engine_);
        return sample_standard_stable(alpha, u, w);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> angle_{-std::numbers::pi / 2.0, std::numbers::pi / 2.0};
    std::exponential_distribution<double> exponential_{1.0};
};

template <DriftField Drift>
ExitOutcome simulate_exit(double x0, const Drift& f, const NoiseParams& noise, const ExitBounds& bounds,
                          const SimConfig& cfg, std::uint64_t path_index) {
    if (!(x0 > bounds.c && x0 < bounds.d)) {
        std::ostringstream os;
        os << "simulate_exit: x0=" << x0 << " outside (" << bounds.c << ", " << bounds.d << ")";
        throw DomainError(os.str());
    }
    PathRng rng(path_seed(cfg.base_seed, path_index));
    const double dt = cfg.dt;
    const double gauss_scale = std::sqrt(noise.a * dt);
    const double jump_scale = noise.has_jumps() ? stable_increment_scale(noise.epsilon, noise.alpha, dt) : 0.0;
    const auto max_steps = static_cast<std::uint64_t>(std::ceil(cfg.max_time / dt - 1e-9));

    double x = x0;
    for (std::uint64_t k = 0; k < max_steps; ++k) {
        double next = x + f(x) * dt;
        if (gauss_scale > 0.0) next += gauss_scale * rng.gaussian();
        if (jump_scale > 0.0) next += jump_scale * rng.stable(noise.alpha);
        x = next;
        if (auto side = classify_landing(x, bounds)) {
            return {*side, static_cast<double>(k + 1) * dt, x};
        }
    }
    return {ExitSide::Censored, static_cast<double>(max_steps) * dt, x};
}

/// Simulates paths 0..n_paths-1; result slot i always holds path i.
template <DriftField Drift>
std::vector<ExitOutcome> simulate_paths(double x0, const Drift& f, const NoiseParams& noise,
                                        const ExitBounds& bounds, const SimConfig& cfg,
                                        std::optional<unsigned> workers = std::nullopt) {
    cfg.validate();
    noise.validate();
    std::vector<ExitOutcome> out(cfg.n_paths);
    parallel_for(out.size(), resolve_workers(workers),
                 [&](std::size_t i) { out[i] = simulate_exit(x0, f, noise, bounds, cfg, i); });
    return out;
}

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_paths = 0;
    std::uint64_t n_censored = 0;
    std::uint64_t n_left = 0;
    std::uint64_t n_right = 0;
    bool variance_undefined = false;  ///< fewer than two usable samples
    bool unreliable = false;          ///< censored fraction above 1%

    double censored_fraction() const {
        return n_paths ? static_cast<double>(n_censored) / static_cast<double>(n_paths) : 0.0;
    }
};

inline constexpr double kMaxCensoredFraction = 0.01;

namespace detail {

// Neumaier-compensated sum in index order.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline McEstimate count_sides(std::span<const ExitOutcome> outcomes) {
    McEstimate est;
    est.n_paths = outcomes.size();
    for (const auto& o : outcomes) {
        switch (o.side) {
            case ExitSide::Left: ++est.n_left; break;
            case ExitSide::Right: ++est.n_right; break;
            case ExitSide::Censored: ++est.n_censored; break;
        }
    }
    est.unreliable = est.censored_fraction() > kMaxCensoredFraction;
    return est;
}

}  // namespace detail

/// Sample mean and standard error of the exit time over non-censored paths.
inline McEstimate summarize_exit_time(std::span<const ExitOutcome> outcomes) {
    McEstimate est = detail::count_sides(outcomes);
    const std::uint64_t used = est.n_left + est.n_right;
    detail::CompensatedSum sum;
    for (const auto& o : outcomes) {
        if (o.side != ExitSide::Censored) sum.add(o.time);
    }
    if (used == 0) {
        est.variance_undefined = true;
        est.mean = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    est.mean = sum.value() / static_cast<double>(used);
    if (used < 2) {
        est.variance_undefined = true;
        return est;
    }
    detail::CompensatedSum sq;
    for (const auto& o : outcomes) {
        if (o.side != ExitSide::Censored) sq.add((o.time - est.mean) * (o.time - est.mean));
    }
    const double var = sq.value() / static_cast<double>(used - 1);
    est.std_error = std::sqrt(var / static_cast<double>(used));
    return est;
}

/// Fraction of non-censored paths landing in the target set, binomial standard error.
inline McEstimate summarize_escape(std::span<const ExitOutcome> outcomes, EscapeTarget target) {
    McEstimate est = detail::count_sides(outcomes);
    const std::uint64_t used = est.n_left + est.n_right;
    if (used == 0) {
        est.variance_undefined = true;
        est.mean = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    const std::uint64_t hits = target == EscapeTarget::LeftExtinction ? est.n_left : est.n_right;
    const double p = static_cast<double>(hits) / static_cast<double>(used);
    est.mean = p;
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(used));
    est.variance_undefined = used < 2;
    return est;
}

template <DriftField Drift>
McEstimate mc_mean_exit_time(double x0, const Drift& f, const NoiseParams& noise, const ExitBounds& bounds,
                             const SimConfig& cfg, std::optional<unsigned> workers = std::nullopt) {
    const auto outcomes = simulate_paths(x0, f, noise, bounds, cfg, workers);
    return summarize_exit_time(outcomes);
}

template <DriftField Drift>
McEstimate mc_escape_probability(double x0, const Drift& f, const NoiseParams& noise, const ExitBounds& bounds,
                                 const SimConfig& cfg, EscapeTarget target,
                                 std::optional<unsigned> workers = std::nullopt) {
    const auto outcomes = simulate_paths(x0, f, noise, bounds, cfg, workers);
    return summarize_escape(outcomes, target);
}

/// max over lambda of |mean cos(lambda S) - exp(-|lambda|^alpha)| for n standard
/// symmetric stable draws S.
inline double empirical_cf_check(double alpha, std::uint64_t n_samples, std::span<const double> lambdas,
                                 std::uint64_t seed = 1) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("empirical_cf_check: alpha outside (0, 2)");
    }
    if (n_samples < 10000) {
        throw std::invalid_argument("empirical_cf_check: need at least 1e4 samples");
    }
    std::vector<detail::CompensatedSum> sums(lambdas.size());
    PathRng rng(path_seed(seed, 0));
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double s = rng.stable(alpha);
        for (std::size_t k = 0; k < lambdas.size(); ++k) sums[k].add(std::cos(lambdas[k] * s));
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double empirical = sums[k].value() / static_cast<double>(n_samples);
        const double exact = std::exp(-std::pow(std::abs(lambdas[k]), alpha));
        worst = std::max(worst, std::abs(empirical - exact));
    }
    return worst;
}

}  // namespace levyexit
