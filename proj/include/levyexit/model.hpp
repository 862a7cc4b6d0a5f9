#pragma once

// Deterministic tumor growth with immune response (Michaelis-Menten predation):
//
//   dx/dt = x (1 - theta x) - beta x / (x + 1)
//
// x is a dimensionless tumor density. The printed scaling is x = (k1/k2) X;
// the same quantity is also described as a density normalized by tissue
// capacity. Both readings agree on the formula implemented here.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "levyexit/errors.hpp"

namespace levyexit {

struct ModelParams {
    double theta = 0.1;  ///< immune-response parameter
    double beta = 3.0;   ///< immune coefficient

    void validate() const {
        if (!(theta > 0.0) || !(beta > 0.0)) {
            std::ostringstream os;
            os << "model parameters must be positive (theta=" << theta << ", beta=" << beta << ")";
            throw ConfigError(os.str());
        }
    }
};

/// Raw kinetic constants (rates in 1/day) before nondimensionalization.
struct ScalingParams {
    double lambda_rate = 1.0;  ///< tumor proliferation rate
    double k1 = 1.0;           ///< binding rate
    double k2 = 0.1;           ///< dissociation rate
    double e_total = 3.0;      ///< Y + Z = E, total cytotoxic cells

    void validate() const {
        if (!(lambda_rate > 0.0) || !(k1 > 0.0) || !(k2 > 0.0) || !(e_total > 0.0)) {
            throw ConfigError("scaling parameters must all be strictly positive");
        }
    }

    /// Warnings for values outside the typical experimental ranges. Never throws for those.
    std::vector<std::string> range_warnings() const {
        std::vector<std::string> out;
        auto check = [&out](const char* name, double v, double lo, double hi) {
            if (v < lo || v > hi) {
                std::ostringstream os;
                os << name << "=" << v << " outside typical range [" << lo << ", " << hi << "]";
                out.push_back(os.str());
            }
        };
        check("lambda", lambda_rate, 0.2, 1.5);
        check("k1", k1, 0.1, 18.0);
        check("k2", k2, 0.2, 18.0);
        return out;
    }
};

struct SteadyStates {
    double x1 = 0.0;  ///< extinction (stable)
    double x2 = 0.0;  ///< threshold (unstable)
    double x3 = 0.0;  ///< stable tumor
};

struct Nondimensionalized {
    ModelParams params;
    double time_scale = 1.0;     ///< t = time_scale * t' (t' in days)
    double density_scale = 1.0;  ///< x = density_scale * X

    double to_raw_density(double x) const { return x / density_scale; }
    double to_model_density(double raw) const { return raw * density_scale; }
};

namespace detail {
inline void require_above_pole(double x, const char* fn) {
    if (!(x > -1.0)) {
        std::ostringstream os;
        os << fn << ": x=" << x << " must satisfy x > -1";
        throw DomainError(os.str());
    }
}
}  // namespace detail

inline double drift(double x, const ModelParams& p) {
    detail::require_above_pole(x, "drift");
    return x * (1.0 - p.theta * x) - p.beta * x / (x + 1.0);
}

/// U with dU/dx = -drift.
inline double potential(double x, const ModelParams& p) {
    detail::require_above_pole(x, "potential");
    return -0.5 * x * x + p.theta * x * x * x / 3.0 + p.beta * x - p.beta * std::log1p(x);
}

namespace detail {
// Discriminant of the nonzero steady-state quadratic; values within rounding of
// zero count as a double root.
inline bool has_distinct_roots(const ModelParams& p, double& disc) {
    const double lead = (1.0 + p.theta) * (1.0 + p.theta);
    disc = lead - 4.0 * p.beta * p.theta;
    return disc > 1e-12 * lead;
}
}  // namespace detail

inline bool is_bistable(const ModelParams& p) {
    double disc = 0.0;
    return p.theta > 0.0 && p.theta < 1.0 && p.beta > 0.0 && detail::has_distinct_roots(p, disc);
}

inline SteadyStates steady_states(const ModelParams& p) {
    p.validate();
    if (p.theta >= 1.0) {
        std::ostringstream os;
        os << "no bistability: theta=" << p.theta << " must be < 1";
        throw RegimeError(os.str());
    }
    double disc = 0.0;
    if (!detail::has_distinct_roots(p, disc)) {
        std::ostringstream os;
        os << "no bistability: discriminant (1+theta)^2 - 4 beta theta = " << disc << " <= 0";
        throw RegimeError(os.str());
    }
    const double root = std::sqrt(disc);
    return {0.0, (1.0 - p.theta - root) / (2.0 * p.theta), (1.0 - p.theta + root) / (2.0 * p.theta)};
}

inline Nondimensionalized nondimensionalize(const ScalingParams& s) {
    s.validate();
    Nondimensionalized out;
    out.params.theta = s.k2 / s.k1;
    out.params.beta = s.k1 * s.e_total / s.lambda_rate;
    out.time_scale = s.lambda_rate;
    out.density_scale = s.k1 / s.k2;
    return out;
}

/// Drift field of the tumor model, usable wherever a generic drift callable is accepted.
struct TumorDrift {
    ModelParams params;
    double operator()(double x) const { return drift(x, params); }
};

/// f == 0; pure-noise benchmarks.
struct ZeroDrift {
    constexpr double operator()(double) const { return 0.0; }
};

}  // namespace levyexit
