#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "levyexit/dense_system.hpp"

using namespace levyexit;

TEST(DenseSolve, Identity) {
    DenseSystem s{Eigen::MatrixXd::Identity(4, 4), Eigen::VectorXd::LinSpaced(4, 1.0, 4.0)};
    const auto r = solve_dense(s);
    EXPECT_TRUE(r.values.isApprox(s.rhs));
    EXPECT_EQ(r.relative_residual, 0.0);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(DenseSolve, TwoByTwoNeedsPivoting) {
    Eigen::MatrixXd m(2, 2);
    m << 0.0, 1.0, 2.0, 3.0;
    Eigen::VectorXd b(2);
    b << 1.0, 8.0;
    const auto r = solve_dense({m, b});
    EXPECT_NEAR(r.values(0), 2.5, 1e-15);
    EXPECT_NEAR(r.values(1), 1.0, 1e-15);
}

TEST(DenseSolve, RandomWellConditioned) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(50, 50);
    for (Eigen::Index i = 0; i < 50; ++i)
        for (Eigen::Index j = 0; j < 50; ++j) m(i, j) = g(rng) + (i == j ? 20.0 : 0.0);
    Eigen::VectorXd x(50);
    for (auto& v : x) v = g(rng);
    const auto r = solve_dense({m, m * x});
    EXPECT_LT((r.values - x).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(r.relative_residual, 1e-13);
}

TEST(DenseSolve, SingularReportsPivot) {
    Eigen::MatrixXd m(3, 3);
    m << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 0.0, 1.0;
    try {
        solve_dense({m, Eigen::VectorXd::Ones(3)});
        FAIL() << "expected SingularMatrixError";
    } catch (const SingularMatrixError& e) {
        EXPECT_LT(e.pivot_index, 3u);
    }
}

TEST(DenseSolve, ShapeMismatch) {
    EXPECT_THROW(solve_dense({Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Ones(2)}), std::invalid_argument);
}

TEST(DenseSolve, WriteSystem) {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 0.5, 0.25, 2.0;
    std::ostringstream os;
    write_system(os, {m, Eigen::VectorXd::Ones(2)});
    EXPECT_EQ(os.str(), "# dense system 2x2\n1 0.5 | 1\n0.25 2 | 1\n");
}
