#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "levyexit/levy.hpp"

using namespace levyexit;

namespace {

// Composite Simpson on [lo, hi] after the substitution y = exp(t).
template <class F>
double integrate_log(F f, double lo, double hi, int n = 20000) {
    const double a = std::log(lo), b = std::log(hi), step = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = a + i * step, y = std::exp(t);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * f(y) * y;
    }
    return s * step / 3.0;
}

double sample_quantile(std::vector<double> v, double q) {
    const auto k = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

std::vector<double> draw(double alpha, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    std::exponential_distribution<double> w(1.0);
    std::vector<double> out(n);
    for (auto& x : out) {
        const double uu = u(rng);
        x = sample_standard_stable(alpha, uu, w(rng));
    }
    return out;
}

}  // namespace

TEST(StableConstant, KnownValues) {
    EXPECT_NEAR(stable_constant(1.0), 1.0 / std::numbers::pi, 1e-15);
    EXPECT_NEAR(stable_constant(0.5), 0.5 * std::tgamma(0.75) / (std::sqrt(2.0 * std::numbers::pi) * std::tgamma(0.75)),
                1e-15);
    EXPECT_NEAR(stable_constant(1.5), 0.2992067103, 1e-9);
}

TEST(StableConstant, DomainChecked) {
    EXPECT_THROW(stable_constant(0.0), DomainError);
    EXPECT_THROW(stable_constant(2.0), DomainError);
    EXPECT_THROW(jump_density(0.0, 1.0), DomainError);
}

TEST(StableConstant, ReproducesCharacteristicExponent) {
    // int (1 - cos(lambda y)) C |y|^{-1-alpha} dy = |lambda|^alpha.
    for (double alpha : {0.5, 1.0, 1.5}) {
        const double c = stable_constant(alpha);
        const double lambda = 1.0;
        auto integrand = [&](double y) { return 2.0 * (1.0 - std::cos(lambda * y)) * c * std::pow(y, -1.0 - alpha); };
        double total = integrate_log(integrand, 1e-8, 40.0, 400000);
        // Tail beyond 40: 1 - cos averages to 1.
        total += 2.0 * c * std::pow(40.0, -alpha) / alpha;
        EXPECT_NEAR(total, 1.0, 2e-3) << "alpha=" << alpha;
    }
}

TEST(JumpMeasure, TailMass) {
    for (double alpha : {0.3, 0.8, 1.2, 1.7}) {
        const double c = stable_constant(alpha);
        const double numeric = 2.0 * integrate_log([&](double y) { return jump_density(y, alpha); }, 1.0, 1e7) +
                               2.0 * c * std::pow(1e7, -alpha) / alpha;
        EXPECT_NEAR(numeric, 2.0 * c / alpha, 1e-6 * c) << alpha;
    }
}

TEST(JumpMeasure, LevyIntegrability) {
    for (double alpha : {0.3, 0.8, 1.2, 1.7}) {
        const double c = stable_constant(alpha);
        const double inner = 2.0 * integrate_log([&](double y) { return y * y * jump_density(y, alpha); }, 1e-12, 1.0) +
                             2.0 * c * std::pow(1e-12, 2.0 - alpha) / (2.0 - alpha);
        const double outer = 2.0 * integrate_log([&](double y) { return jump_density(y, alpha); }, 1.0, 1e7) +
                             2.0 * c * std::pow(1e7, -alpha) / alpha;
        const double exact = 2.0 * c * (1.0 / (2.0 - alpha) + 1.0 / alpha);
        EXPECT_NEAR(inner + outer, exact, 1e-6 * exact) << alpha;
    }
}

TEST(CharacteristicExponent, SymmetricRealNonPositive) {
    const NoiseParams n{0.3, 0.4, 1.3};
    EXPECT_EQ(characteristic_exponent(0.0, n), std::complex<double>(0.0, 0.0));
    for (double l : {0.1, 1.0, 3.7}) {
        const auto e = characteristic_exponent(l, n);
        EXPECT_EQ(e, characteristic_exponent(-l, n));
        EXPECT_EQ(e.imag(), 0.0);
        EXPECT_LT(e.real(), 0.0);
        EXPECT_NEAR(e.real(), -0.15 * l * l - 0.4 * std::pow(l, 1.3), 1e-14);
    }
}

TEST(NoiseParams, Validation) {
    EXPECT_THROW((NoiseParams{-0.1, 0.1, 1.0}.validate()), ConfigError);
    EXPECT_THROW((NoiseParams{0.0, -0.1, 1.0}.validate()), ConfigError);
    EXPECT_THROW((NoiseParams{0.0, 0.1, 2.0}.validate()), ConfigError);
    EXPECT_THROW((NoiseParams{0.0, 0.1, 0.0}.validate()), ConfigError);
    EXPECT_THROW((NoiseParams{0.0, 0.0, 1.0}.validate()), ConfigError);
    EXPECT_TRUE((NoiseParams{0.5, 0.0, 1.0}.validate().empty()));
    EXPECT_EQ((NoiseParams{0.0, 1.5, 1.0}.validate().size()), 1u);
}

TEST(Sampler, AlphaOneIsCauchy) {
    const auto s = draw(1.0, 200000, 9);
    EXPECT_NEAR(sample_quantile(s, 0.5), 0.0, 0.01);
    EXPECT_NEAR(sample_quantile(s, 0.75), 1.0, 0.02);
}

TEST(Sampler, SymmetricMedianZero) {
    for (double alpha : {0.5, 1.5, 1.9}) {
        const auto s = draw(alpha, 200000, 21);
        EXPECT_NEAR(sample_quantile(s, 0.5), 0.0, 0.01) << alpha;
        EXPECT_NEAR(sample_quantile(s, 0.8), -sample_quantile(s, 0.2), 0.03 * sample_quantile(s, 0.8)) << alpha;
    }
}

TEST(Sampler, EmpiricalCharacteristicFunction) {
    for (double alpha : {0.5, 1.0, 1.5}) {
        const auto s = draw(alpha, 400000, 33);
        for (double l : {0.5, 1.0, 2.0}) {
            double acc = 0.0;
            for (double x : s) acc += std::cos(l * x);
            EXPECT_NEAR(acc / static_cast<double>(s.size()), std::exp(-std::pow(l, alpha)), 5e-3)
                << alpha << " " << l;
        }
    }
}

TEST(Sampler, IncrementScaleLaw) {
    EXPECT_NEAR(stable_increment_scale(0.5, 1.5, 1e-3), std::pow(5e-4, 1.0 / 1.5), 1e-16);
    // Sum of two independent draws scaled by 2^{-1/alpha} matches a single draw in distribution.
    const double alpha = 1.3;
    const auto a = draw(alpha, 200000, 41), b = draw(alpha, 200000, 42);
    std::vector<double> sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = (a[i] + b[i]) * std::pow(2.0, -1.0 / alpha);
    EXPECT_NEAR(sample_quantile(sum, 0.75), sample_quantile(a, 0.75), 0.03);
    EXPECT_NEAR(sample_quantile(sum, 0.9), sample_quantile(a, 0.9), 0.06);
}
