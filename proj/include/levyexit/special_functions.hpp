#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levyexit/errors.hpp"

namespace levyexit {

/// Euler gamma. Poles at the nonpositive integers raise PoleError.
inline double gamma_fn(double x) {
    if (x <= 0.0 && std::floor(x) == x) {
        std::ostringstream os;
        os << "gamma_fn: pole at x=" << x;
        throw PoleError(os.str());
    }
    return std::tgamma(x);
}

namespace detail {

// Dirichlet eta by Borwein's accelerated alternating series (Algorithm 2),
// accurate to ~1e-16 for real s >= 0 with n = 40 terms.
inline double dirichlet_eta(double s) {
    constexpr int n = 40;
    static const std::array<double, n + 1> d = [] {
        std::array<double, n + 1> coeff{};
        // d_k = n * sum_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!)
        double term = 1.0 / n;  // i = 0 term divided by n: (n-1)!/n! = 1/n
        double acc = term;
        coeff[0] = n * acc;
        for (int i = 1; i <= n; ++i) {
            term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
            acc += term;
            coeff[i] = n * acc;
        }
        return coeff;
    }();

    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * (d[k] - d[n]) / std::pow(k + 1.0, s);
    }
    return -sum / d[n];
}

}  // namespace detail

/// Riemann zeta on the reals with analytic continuation; pole at s = 1.
/// s >= 0 goes through eta(s) / (1 - 2^{1-s}); s < 0 through the functional equation.
inline double riemann_zeta(double s) {
    if (s == 1.0) {
        throw PoleError("riemann_zeta: pole at s=1");
    }
    if (s >= 0.0) {
        return detail::dirichlet_eta(s) / (1.0 - std::exp2(1.0 - s));
    }
    // Trivial zeros at negative even integers.
    if (std::floor(s / 2.0) == s / 2.0) {
        return 0.0;
    }
    const double pi = std::numbers::pi;
    return std::exp2(s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) * std::tgamma(1.0 - s) *
           riemann_zeta(1.0 - s);
}

}  // namespace levyexit
