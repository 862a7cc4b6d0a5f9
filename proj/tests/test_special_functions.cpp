#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "levyexit/special_functions.hpp"

using namespace levyexit;

TEST(Zeta, KnownValues) {
    EXPECT_NEAR(riemann_zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-13);
    EXPECT_NEAR(riemann_zeta(0.0), -0.5, 1e-13);
    EXPECT_NEAR(riemann_zeta(-1.0), -1.0 / 12.0, 1e-13);
    EXPECT_NEAR(riemann_zeta(4.0), std::pow(std::numbers::pi, 4) / 90.0, 1e-13);
}

TEST(Zeta, TrivialZeros) {
    for (double s : {-2.0, -4.0, -6.0}) EXPECT_EQ(riemann_zeta(s), 0.0) << s;
}

TEST(Zeta, PoleAtOne) { EXPECT_THROW(riemann_zeta(1.0), PoleError); }

TEST(Zeta, MatchesStandardLibraryOnCorrectionRange) {
    // The correction term evaluates zeta(alpha - 1) for alpha in (0, 2).
    for (double s = -0.99; s < 0.999; s += 0.01) {
        if (std::abs(s) < 1e-12) continue;
        const double ref = std::riemann_zeta(s);
        EXPECT_NEAR(riemann_zeta(s), ref, 1e-12 * std::max(1.0, std::abs(ref))) << "s=" << s;
    }
}

TEST(Zeta, MatchesStandardLibraryAwayFromPole) {
    for (double s : {-3.5, -2.5, -1.5, 1.5, 2.5, 3.0, 7.0, 20.0}) {
        const double ref = std::riemann_zeta(s);
        EXPECT_NEAR(riemann_zeta(s), ref, 1e-12 * std::max(1.0, std::abs(ref))) << "s=" << s;
    }
}

TEST(Zeta, NearPoleBehavesLikeOneOverSMinusOne) {
    const double s = 1.0 + 1e-6;
    EXPECT_NEAR(riemann_zeta(s) * (s - 1.0), 1.0, 1e-5);
}

TEST(Gamma, KnownValues) {
    EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-14);
    EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
    EXPECT_NEAR(gamma_fn(-0.5), -2.0 * std::sqrt(std::numbers::pi), 1e-13);
}

TEST(Gamma, Recurrence) {
    for (double x = 0.05; x < 3.0; x += 0.05) {
        EXPECT_NEAR(gamma_fn(x + 1.0), x * gamma_fn(x), 1e-13 * gamma_fn(x + 1.0)) << x;
    }
}

TEST(Gamma, PolesRaise) {
    for (double x : {0.0, -1.0, -2.0, -7.0}) EXPECT_THROW(gamma_fn(x), PoleError) << x;
}
