#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "levyexit/model.hpp"

using namespace levyexit;

namespace {
const ModelParams kTumor{0.1, 3.0};
}

TEST(Drift, KnownValues) {
    EXPECT_EQ(drift(0.0, kTumor), 0.0);
    EXPECT_NEAR(drift(5.0, kTumor), 0.0, 1e-12);
    // 1*(1 - 0.1) - 3*1/2 = 0.9 - 1.5
    EXPECT_NEAR(drift(1.0, kTumor), -0.6, 1e-15);
}

TEST(Drift, PoleIsADomainError) {
    EXPECT_THROW(drift(-1.0, kTumor), DomainError);
    EXPECT_THROW(drift(-2.0, kTumor), DomainError);
    EXPECT_NO_THROW(drift(-0.99, kTumor));
    EXPECT_THROW(potential(-1.0, kTumor), DomainError);
}

TEST(Potential, ZeroAtOrigin) {
    EXPECT_EQ(potential(0.0, kTumor), 0.0);
    EXPECT_EQ(potential(0.0, ModelParams{0.7, 0.2}), 0.0);
}

TEST(Potential, DerivativeIsMinusDrift) {
    const double step = 1e-6;
    for (double x : {0.5, 2.5, 4.5}) {
        const double du = (potential(x + step, kTumor) - potential(x - step, kTumor)) / (2.0 * step);
        EXPECT_NEAR(du, -drift(x, kTumor), 1e-6) << "x=" << x;
    }
}

TEST(Potential, DerivativeIsMinusDriftOnWideRange) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xs(-0.9, 10.0), thetas(0.05, 0.95), betas(0.1, 5.0);
    for (int i = 0; i < 500; ++i) {
        const ModelParams p{thetas(rng), betas(rng)};
        const double x = xs(rng);
        const double step = 1e-6;
        const double du = (potential(x + step, p) - potential(x - step, p)) / (2.0 * step);
        EXPECT_NEAR(du, -drift(x, p), 1e-6) << "x=" << x << " theta=" << p.theta << " beta=" << p.beta;
    }
}

TEST(Potential, MinimaAndMaximumAtSteadyStates) {
    const auto s = steady_states(kTumor);
    const double off = 1e-3;
    // dU/dx = -f: minimum where -f goes from negative to positive.
    auto slope = [](double x) { return -drift(x, kTumor); };
    EXPECT_GT(slope(s.x1 + off), 0.0);
    EXPECT_LT(slope(s.x1 - off), 0.0);
    EXPECT_GT(slope(s.x2 - off), 0.0);
    EXPECT_LT(slope(s.x2 + off), 0.0);
    EXPECT_LT(slope(s.x3 - off), 0.0);
    EXPECT_GT(slope(s.x3 + off), 0.0);
}

TEST(SteadyStates, TumorParameters) {
    const auto s = steady_states(kTumor);
    EXPECT_EQ(s.x1, 0.0);
    EXPECT_NEAR(s.x2, 4.0, 1e-12);
    EXPECT_NEAR(s.x3, 5.0, 1e-12);
}

TEST(SteadyStates, RegimeErrors) {
    // (1 + 0.1)^2 / (4 * 0.1) = 3.025: zero discriminant.
    EXPECT_THROW(steady_states(ModelParams{0.1, 3.025}), RegimeError);
    EXPECT_THROW(steady_states(ModelParams{0.1, 3.1}), RegimeError);
    EXPECT_THROW(steady_states(ModelParams{1.5, 0.1}), RegimeError);
    EXPECT_THROW(steady_states(ModelParams{1.0, 0.1}), RegimeError);
}

TEST(SteadyStates, RootsAndOrderingForRandomBistableParameters) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> thetas(0.01, 0.99), frac(0.01, 0.99);
    for (int i = 0; i < 1000; ++i) {
        const double theta = thetas(rng);
        const double bound = (1.0 + theta) * (1.0 + theta) / (4.0 * theta);
        // x2 > 0 needs beta > 1; below that the threshold root is negative.
        const ModelParams p{theta, 1.0 + frac(rng) * (bound - 1.0)};
        ASSERT_TRUE(is_bistable(p));
        const auto s = steady_states(p);
        EXPECT_LT(s.x1, s.x2);
        EXPECT_LT(s.x2, s.x3);
        const double scale = std::max(1.0, s.x3 * s.x3);
        EXPECT_NEAR(drift(s.x1, p), 0.0, 1e-12 * scale);
        EXPECT_NEAR(drift(s.x2, p), 0.0, 1e-12 * scale);
        EXPECT_NEAR(drift(s.x3, p), 0.0, 1e-12 * scale);
    }
}

TEST(SteadyStates, ThresholdRootIsNegativeForSmallBeta) {
    const ModelParams p{0.1, 0.5};
    EXPECT_TRUE(is_bistable(p));
    const auto s = steady_states(p);
    EXPECT_LT(s.x2, 0.0);
    EXPECT_GT(s.x2, -1.0);
    EXPECT_NEAR(drift(s.x2, p), 0.0, 1e-12);
}

TEST(Bistability, Examples) {
    EXPECT_TRUE(is_bistable(ModelParams{0.1, 3.0}));
    EXPECT_FALSE(is_bistable(ModelParams{0.1, 3.1}));
    EXPECT_FALSE(is_bistable(ModelParams{1.0, 0.5}));
}

TEST(Bistability, MonotoneInBeta) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> thetas(0.01, 0.99), betas(0.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const double theta = thetas(rng);
        double b1 = betas(rng), b2 = betas(rng);
        if (b1 > b2) std::swap(b1, b2);
        if (b1 <= 0.0) continue;
        if (is_bistable({theta, b2})) {
            EXPECT_TRUE(is_bistable({theta, b1})) << theta << " " << b1 << " " << b2;
        }
    }
}

TEST(Nondimensionalize, DirectSubstitution) {
    const auto r = nondimensionalize(ScalingParams{1.0, 1.0, 0.1, 3.0});
    EXPECT_NEAR(r.params.theta, 0.1, 1e-15);
    EXPECT_NEAR(r.params.beta, 3.0, 1e-15);
    EXPECT_EQ(r.time_scale, 1.0);
    EXPECT_NEAR(r.density_scale, 10.0, 1e-13);
}

TEST(Nondimensionalize, SecondExample) {
    // beta = 2 * 0.75 / 0.5 = 3
    const auto r = nondimensionalize(ScalingParams{0.5, 2.0, 0.2, 0.75});
    EXPECT_NEAR(r.params.theta, 0.1, 1e-15);
    EXPECT_NEAR(r.params.beta, 3.0, 1e-15);
    EXPECT_EQ(r.time_scale, 0.5);
}

TEST(Nondimensionalize, DensityRoundTrip) {
    const auto r = nondimensionalize(ScalingParams{0.7, 3.0, 1.2, 2.0});
    for (double raw : {0.0, 0.3, 2.5, 17.0}) {
        EXPECT_NEAR(r.to_raw_density(r.to_model_density(raw)), raw, 1e-14 * std::max(1.0, raw));
    }
    // X = (k2/k1) x
    EXPECT_NEAR(r.to_raw_density(5.0), (1.2 / 3.0) * 5.0, 1e-14);
}

TEST(ScalingParams, OutOfRangeWarnsButIsAccepted) {
    const ScalingParams s{3.0, 20.0, 0.1, 1.0};
    EXPECT_NO_THROW(nondimensionalize(s));
    EXPECT_EQ(s.range_warnings().size(), 3u);
    EXPECT_TRUE((ScalingParams{1.0, 1.0, 1.0, 1.0}.range_warnings().empty()));
}

TEST(ScalingParams, NonPositiveRejected) {
    EXPECT_THROW(nondimensionalize(ScalingParams{0.0, 1.0, 1.0, 1.0}), ConfigError);
    EXPECT_THROW(nondimensionalize(ScalingParams{1.0, 1.0, -1.0, 1.0}), ConfigError);
}
