#pragma once

// Symmetric alpha-stable machinery for the Levy noise with generating
// triplet (0, a, eps * nu_alpha), where nu_alpha(dy) = C_alpha |y|^{-1-alpha} dy.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "levyexit/errors.hpp"
#include "levyexit/special_functions.hpp"

namespace levyexit {

struct NoiseParams {
    double a = 0.0;        ///< Gaussian diffusion coefficient (variance per unit time)
    double epsilon = 0.1;  ///< jump-noise intensity
    double alpha = 1.0;    ///< stability index in (0, 2)

    /// Throws ConfigError on invalid values; returns warnings for accepted-but-unusual ones.
    std::vector<std::string> validate() const {
        std::ostringstream os;
        if (!(a >= 0.0)) {
            os << "noise: a=" << a << " must be >= 0";
        } else if (!(epsilon >= 0.0)) {
            os << "noise: epsilon=" << epsilon << " must be >= 0";
        } else if (!(alpha > 0.0 && alpha < 2.0)) {
            os << "noise: alpha=" << alpha << " must lie in (0, 2); use a > 0, epsilon = 0 for Brownian noise";
        } else if (a == 0.0 && epsilon == 0.0) {
            os << "noise: a and epsilon are both zero (no noise)";
        }
        if (!os.str().empty()) {
            throw ConfigError(os.str());
        }
        std::vector<std::string> warnings;
        if (epsilon > 1.0) {
            std::ostringstream w;
            w << "epsilon=" << epsilon << " exceeds the usual range [0, 1]";
            warnings.push_back(w.str());
        }
        return warnings;
    }

    bool has_jumps() const { return epsilon > 0.0; }
};

namespace detail {
inline void require_stable_index(double alpha, const char* fn) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        std::ostringstream os;
        os << fn << ": alpha=" << alpha << " outside (0, 2)";
        throw DomainError(os.str());
    }
}
}  // namespace detail

/// C_alpha, the constant for which the jump measure C_alpha |y|^{-1-alpha} dy
/// yields characteristic exponent -|lambda|^alpha.
inline double stable_constant(double alpha) {
    detail::require_stable_index(alpha, "stable_constant");
    return alpha * std::tgamma((1.0 + alpha) / 2.0) /
           (std::exp2(1.0 - alpha) * std::sqrt(std::numbers::pi) * std::tgamma(1.0 - alpha / 2.0));
}

inline double jump_density(double y, double alpha) {
    detail::require_stable_index(alpha, "jump_density");
    if (y == 0.0) {
        throw DomainError("jump_density: undefined at y=0");
    }
    return stable_constant(alpha) * std::pow(std::abs(y), -(1.0 + alpha));
}

/// eta(lambda) = -a lambda^2 / 2 - eps |lambda|^alpha. Real for symmetric noise;
/// returned as complex to keep the Levy-Khintchine signature.
inline std::complex<double> characteristic_exponent(double lambda, const NoiseParams& n) {
    const double gaussian = -0.5 * n.a * lambda * lambda;
    const double jumps = lambda == 0.0 ? 0.0 : -n.epsilon * std::pow(std::abs(lambda), n.alpha);
    return {gaussian + jumps, 0.0};
}

/// Chambers-Mallows-Stuck transform for a standard symmetric alpha-stable draw
/// (characteristic function exp(-|lambda|^alpha)).
/// u ~ Uniform(-pi/2, pi/2), w ~ Exp(1).
inline double sample_standard_stable(double alpha, double u, double w) {
    if (std::abs(alpha - 1.0) < 1e-9) {
        return std::tan(u);
    }
    const double inv_alpha = 1.0 / alpha;
    return std::sin(alpha * u) / std::pow(std::cos(u), inv_alpha) *
           std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) * inv_alpha);
}

/// Scale of the stable increment over a step dt for jump measure eps * nu_alpha.
inline double stable_increment_scale(double epsilon, double alpha, double dt) {
    return std::pow(epsilon * dt, 1.0 / alpha);
}

}  // namespace levyexit
