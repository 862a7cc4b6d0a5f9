#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levyexit/errors.hpp"

namespace levyexit {

struct DenseSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
};

struct DenseSolution {
    Eigen::VectorXd values;
    double relative_residual = 0.0;  ///< ||A u - b||_inf / ||b||_inf
    std::vector<std::string> warnings;
};

inline constexpr double kResidualTolerance = 1e-10;

/// LU with partial (row) pivoting. A zero or negligible pivot raises
/// SingularMatrixError carrying the pivot position.
inline DenseSolution solve_dense(const DenseSystem& s) {
    const auto n = s.matrix.rows();
    if (s.matrix.cols() != n || s.rhs.size() != n) {
        std::ostringstream os;
        os << "solve_dense: shape mismatch (" << s.matrix.rows() << "x" << s.matrix.cols() << ", rhs "
           << s.rhs.size() << ")";
        throw std::invalid_argument(os.str());
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(s.matrix);
    const double scale = s.matrix.cwiseAbs().maxCoeff();
    const auto& packed = lu.matrixLU();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pivot = packed(i, i);
        if (!std::isfinite(pivot) || std::abs(pivot) <= scale * 1e-14 * static_cast<double>(n)) {
            std::ostringstream os;
            os << "solve_dense: singular matrix (pivot " << i << " = " << pivot << ")";
            throw SingularMatrixError(static_cast<std::size_t>(i), os.str());
        }
    }

    DenseSolution out;
    out.values = lu.solve(s.rhs);
    const double bnorm = s.rhs.cwiseAbs().maxCoeff();
    const double rnorm = (s.matrix * out.values - s.rhs).cwiseAbs().maxCoeff();
    out.relative_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
    if (!(out.relative_residual <= kResidualTolerance)) {
        std::ostringstream os;
        os << "solve_dense: relative residual " << out.relative_residual << " exceeds " << kResidualTolerance;
        out.warnings.push_back(os.str());
    }
    return out;
}

/// Diagnostic dump: one matrix row per line followed by its rhs entry after '|',
/// 17 significant digits. Not a stable format.
inline void write_system(std::ostream& os, const DenseSystem& s) {
    char buf[32];
    os << "# dense system " << s.matrix.rows() << "x" << s.matrix.cols() << "\n";
    for (Eigen::Index i = 0; i < s.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < s.matrix.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", s.matrix(i, j));
            os << (j ? " " : "") << buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g", s.rhs(i));
        os << " | " << buf << "\n";
    }
}

}  // namespace levyexit
