#pragma once

// Finite-difference / punched-hole trapezoidal discretization of the nonlocal
// exit problems on D = (c, d):
//
//   (a/2) u'' + f u' + eps C_a * p.v. int [u(x+y) - u(x) - 1{|y|<delta} y u'(x)] |y|^{-1-a} dy = rhs
//
// with exterior data prescribed on R \ D. The integral over the exterior
// pieces (-inf, c-x] and [d-x, inf) is done analytically and produces the
// diagonal sink -(eps C_a / a) [(x-c)^{-a} + (d-x)^{-a}] plus, for escape
// problems, the exterior-data source on the right-hand side.

#include <cmath>
#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levyexit/dense_system.hpp"
#include "levyexit/errors.hpp"
#include "levyexit/grid.hpp"
#include "levyexit/levy.hpp"

namespace levyexit {

template <typename F>
concept DriftField = std::regular_invocable<const F&, double> &&
                     std::convertible_to<std::invoke_result_t<const F&, double>, double>;

enum class Scheme {
    Corrected,    ///< C_h = a/2 - eps C_a zeta(a-1) h^{2-a} on the second difference
    Uncorrected,  ///< plain a/2
};

enum class EscapeTarget {
    LeftExtinction,  ///< E = (-inf, c]
    RightMalignant,  ///< E = [d, +inf)
};

enum class FieldKind { MeanExitTime, EscapeLeft, EscapeRight };

inline const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::MeanExitTime: return "mean-exit-time";
        case FieldKind::EscapeLeft: return "escape-probability-left";
        case FieldKind::EscapeRight: return "escape-probability-right";
    }
    return "?";
}

/// Matrix part of the discrete generator plus everything needed to build a
/// right-hand side: coefficients that multiply the boundary nodes at c and d
/// (never matrix entries) and the two exterior sink halves.
struct AssembledOperator {
    Grid grid;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd left_weights;   ///< per row, total coefficient on U(c)
    Eigen::VectorXd right_weights;  ///< per row, total coefficient on U(d)
    Eigen::VectorXd sink_left;      ///< (eps C_a / a) (x_j - c)^{-a}
    Eigen::VectorXd sink_right;     ///< (eps C_a / a) (d - x_j)^{-a}
    double diffusion_coefficient = 0.0;  ///< C_h, or a/2 for the uncorrected scheme
};

namespace detail {

class RowWriter {
public:
    RowWriter(AssembledOperator& op, std::int64_t row_node)
        : op_(op), row_(op.grid.unknown_of(row_node)) {}

    void add(std::int64_t node, double w) {
        const Grid& g = op_.grid;
        if (g.is_interior(node)) {
            op_.matrix(static_cast<Eigen::Index>(row_), static_cast<Eigen::Index>(g.unknown_of(node))) += w;
        } else if (node == g.left_index()) {
            op_.left_weights(static_cast<Eigen::Index>(row_)) += w;
        } else if (node == g.right_index()) {
            op_.right_weights(static_cast<Eigen::Index>(row_)) += w;
        } else {
            std::ostringstream os;
            os << "assembly referenced node " << node << " outside [" << g.left_index() << ", "
               << g.right_index() << "]";
            throw std::logic_error(os.str());
        }
    }

private:
    AssembledOperator& op_;
    std::size_t row_;
};

// h * sum'' over k in [lo, hi] of (U_{j+k} - U_j) / |x_k|^{1+a}. A zero-length
// range is an empty integral and contributes nothing.
inline void add_plain_sum(RowWriter& row, std::int64_t j, std::int64_t lo, std::int64_t hi, double weight,
                          double h, double alpha) {
    if (lo >= hi) {
        return;
    }
    for (std::int64_t k = lo; k <= hi; ++k) {
        if (k == 0) {
            continue;
        }
        double w = weight / std::pow(std::abs(static_cast<double>(k) * h), 1.0 + alpha);
        if (k == lo || k == hi) {
            w *= 0.5;
        }
        row.add(j + k, w);
        row.add(j, -w);
    }
}

// h * sum'' over k in [-r, r], k != 0, of
// (U_{j+k} - U_j - (U_{j+1} - U_{j-1}) x_k / 2h) / |x_k|^{1+a}.
inline void add_compensated_sum(RowWriter& row, std::int64_t j, std::int64_t r, double weight, double h,
                                double alpha) {
    for (std::int64_t k = -r; k <= r; ++k) {
        if (k == 0) {
            continue;
        }
        double w = weight / std::pow(std::abs(static_cast<double>(k) * h), 1.0 + alpha);
        if (k == -r || k == r) {
            w *= 0.5;
        }
        const double slope = 0.5 * static_cast<double>(k);  // x_k / 2h
        row.add(j + k, w);
        row.add(j, -w);
        row.add(j + 1, -w * slope);
        row.add(j - 1, w * slope);
    }
}

}  // namespace detail

template <DriftField Drift>
AssembledOperator assemble_operator(const Grid& g, const Drift& f, const NoiseParams& noise,
                                    Scheme scheme = Scheme::Corrected) {
    noise.validate();
    const auto n = static_cast<Eigen::Index>(g.interior_count());
    AssembledOperator op{g,
                         Eigen::MatrixXd::Zero(n, n),
                         Eigen::VectorXd::Zero(n),
                         Eigen::VectorXd::Zero(n),
                         Eigen::VectorXd::Zero(n),
                         Eigen::VectorXd::Zero(n),
                         0.0};

    const double h = g.h();
    const double alpha = noise.alpha;
    const bool jumps = noise.has_jumps();
    const double c_alpha = jumps ? stable_constant(alpha) : 0.0;
    const double jump_weight = noise.epsilon * c_alpha;  // eps C_a

    double ch = 0.5 * noise.a;
    if (jumps && scheme == Scheme::Corrected) {
        ch -= jump_weight * riemann_zeta(alpha - 1.0) * std::pow(h, 2.0 - alpha);
    }
    op.diffusion_coefficient = ch;

    const std::int64_t jc = g.left_index();
    const std::int64_t jd = g.right_index();
    const std::int64_t jm = g.mid_index();

    for (std::int64_t j = jc + 1; j < jd; ++j) {
        detail::RowWriter row(op, j);
        const auto i = static_cast<Eigen::Index>(g.unknown_of(j));

        const double second = ch / (h * h);
        row.add(j - 1, second);
        row.add(j, -2.0 * second);
        row.add(j + 1, second);

        const double fx = f(g.x(j));
        row.add(j + 1, fx / (2.0 * h));
        row.add(j - 1, -fx / (2.0 * h));

        if (!jumps) {
            continue;
        }

        op.sink_left(i) = jump_weight / alpha * std::pow(g.dist_left(j), -alpha);
        op.sink_right(i) = jump_weight / alpha * std::pow(g.dist_right(j), -alpha);
        row.add(j, -(op.sink_left(i) + op.sink_right(i)));

        const double quad = jump_weight * h;
        if (j >= jm) {
            // far side [c-x, x-d], then the symmetric part [x-d, d-x]
            detail::add_plain_sum(row, j, jc - j, j - jd, quad, h, alpha);
            detail::add_compensated_sum(row, j, jd - j, quad, h, alpha);
        } else {
            // far side [x-c, d-x], then the symmetric part [c-x, x-c]
            detail::add_plain_sum(row, j, j - jc, jd - j, quad, h, alpha);
            detail::add_compensated_sum(row, j, j - jc, quad, h, alpha);
        }
    }

    for (Eigen::Index r = 0; r < n; ++r) {
        if (op.matrix(r, r) == 0.0) {
            std::ostringstream os;
            os << "assembly produced a zero diagonal at row " << r;
            throw std::logic_error(os.str());
        }
    }
    return op;
}

/// Mean exit time: rhs = -1 everywhere; exterior value 0 so boundary weights drop out.
inline Eigen::VectorXd met_rhs(const AssembledOperator& op) {
    return Eigen::VectorXd::Constant(op.matrix.rows(), -1.0);
}

/// Escape probability into the target set (exterior value 1 on the target side,
/// 0 on the other): minus the exterior sink on that side minus the boundary-node
/// coefficients times 1.
inline Eigen::VectorXd escape_rhs(const AssembledOperator& op, EscapeTarget target) {
    if (target == EscapeTarget::LeftExtinction) {
        return -op.sink_left - op.left_weights;
    }
    return -op.sink_right - op.right_weights;
}

/// Nodal solution on the closed grid with its exterior convention.
struct SolutionField {
    Grid grid;
    FieldKind kind = FieldKind::MeanExitTime;
    std::vector<double> interior;
    double left_exterior = 0.0;   ///< value on (-inf, c]
    double right_exterior = 0.0;  ///< value on [d, +inf)
    double relative_residual = 0.0;
    std::vector<std::string> warnings;

    /// Value at node index j; exterior convention for j <= c/h or j >= d/h.
    double at_node(std::int64_t j) const {
        if (j <= grid.left_index()) return left_exterior;
        if (j >= grid.right_index()) return right_exterior;
        return interior[grid.unknown_of(j)];
    }

    /// Value at the grid node nearest to x (exterior values outside (c, d)).
    double at(double x) const {
        if (x <= grid.c()) return left_exterior;
        if (x >= grid.d()) return right_exterior;
        return at_node(grid.nearest_node(x));
    }

    double min_interior() const { return *std::min_element(interior.begin(), interior.end()); }
    double max_interior() const { return *std::max_element(interior.begin(), interior.end()); }
};

inline constexpr double kFieldTolerance = 1e-8;

namespace detail {

inline SolutionField make_field(const AssembledOperator& op, const Eigen::VectorXd& rhs, FieldKind kind,
                                double left, double right) {
    auto sol = solve_dense({op.matrix, rhs});
    SolutionField field{op.grid, kind, std::vector<double>(sol.values.begin(), sol.values.end()),
                        left, right, sol.relative_residual, std::move(sol.warnings)};
    std::ostringstream os;
    if (kind == FieldKind::MeanExitTime) {
        if (field.min_interior() < -kFieldTolerance) {
            os << "mean exit time has negative values (min " << field.min_interior() << ")";
        }
    } else if (field.min_interior() < -kFieldTolerance || field.max_interior() > 1.0 + kFieldTolerance) {
        os << "escape probability outside [0, 1] (min " << field.min_interior() << ", max "
           << field.max_interior() << ")";
    }
    if (!os.str().empty()) {
        field.warnings.push_back(os.str());
    }
    return field;
}

}  // namespace detail

inline SolutionField mean_exit_time(const AssembledOperator& op) {
    return detail::make_field(op, met_rhs(op), FieldKind::MeanExitTime, 0.0, 0.0);
}

inline SolutionField escape_probability(const AssembledOperator& op, EscapeTarget target) {
    const bool left = target == EscapeTarget::LeftExtinction;
    return detail::make_field(op, escape_rhs(op, target), left ? FieldKind::EscapeLeft : FieldKind::EscapeRight,
                              left ? 1.0 : 0.0, left ? 0.0 : 1.0);
}

template <DriftField Drift>
SolutionField mean_exit_time(const Grid& g, const Drift& f, const NoiseParams& noise,
                             Scheme scheme = Scheme::Corrected) {
    return mean_exit_time(assemble_operator(g, f, noise, scheme));
}

template <DriftField Drift>
SolutionField escape_probability(const Grid& g, const Drift& f, const NoiseParams& noise, EscapeTarget target,
                                 Scheme scheme = Scheme::Corrected) {
    return escape_probability(assemble_operator(g, f, noise, scheme), target);
}

/// Richardson order estimate from solutions at h, h/2, h/4.
struct OrderEstimate {
    std::optional<double> order;  ///< empty when the differences are at rounding level
    double coarse_difference = 0.0;
    double fine_difference = 0.0;
    std::string note;
};

inline OrderEstimate observed_order(const SolutionField& coarse, const SolutionField& mid,
                                    const SolutionField& fine, double probe) {
    auto value = [probe](const SolutionField& s, const char* which) {
        std::int64_t j = 0;
        if (!s.grid.node_at(probe, j)) {
            std::ostringstream os;
            os << "observed_order: probe " << probe << " is not a node of the " << which << " grid";
            throw std::invalid_argument(os.str());
        }
        return s.at_node(j);
    };
    const double u1 = value(coarse, "coarse");
    const double u2 = value(mid, "mid");
    const double u4 = value(fine, "fine");

    OrderEstimate out;
    out.coarse_difference = std::abs(u1 - u2);
    out.fine_difference = std::abs(u2 - u4);
    const double floor = 1e-11 * std::max({1.0, std::abs(u1), std::abs(u2), std::abs(u4)});
    if (out.coarse_difference <= floor || out.fine_difference <= floor) {
        out.note = "converged below measurement";
        return out;
    }
    out.order = std::log2(out.coarse_difference / out.fine_difference);
    return out;
}

}  // namespace levyexit
