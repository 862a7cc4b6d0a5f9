#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "levyexit/errors.hpp"

namespace levyexit {

/// Uniform grid x_j = j h on the exit interval (c, d). Node indices run from
/// c/h (left boundary) to d/h (right boundary); the unknowns are the interior
/// nodes in between. Rows at or right of the midpoint index (c+d)/(2h) and rows
/// left of it use mirrored quadrature ranges.
class Grid {
public:
    Grid(double c, double d, double h) : c_(c), d_(d), h_(h) {
        if (!(h > 0.0)) {
            throw DivisibilityError("grid: step h must be positive");
        }
        if (!(c < d)) {
            throw DivisibilityError("grid: need c < d");
        }
        if (!(c <= 0.0 && d > 0.0)) {
            std::ostringstream os;
            os << "grid: need c <= 0 < d (got c=" << c << ", d=" << d << ")";
            throw DivisibilityError(os.str());
        }
        left_ = integral_quotient(c / h, "c/h");
        right_ = integral_quotient(d / h, "d/h");
        mid_ = integral_quotient((c + d) / (2.0 * h), "(c+d)/(2h)");
        if (interior_count() < 3) {
            throw DivisibilityError("grid: fewer than 3 interior nodes");
        }
    }

    double c() const { return c_; }
    double d() const { return d_; }
    double h() const { return h_; }

    std::int64_t left_index() const { return left_; }
    std::int64_t right_index() const { return right_; }
    std::int64_t mid_index() const { return mid_; }

    std::size_t interior_count() const { return static_cast<std::size_t>(right_ - left_ - 1); }

    /// Node index of the i-th unknown.
    std::int64_t node_of(std::size_t i) const { return left_ + 1 + static_cast<std::int64_t>(i); }
    std::size_t unknown_of(std::int64_t j) const { return static_cast<std::size_t>(j - left_ - 1); }
    bool is_interior(std::int64_t j) const { return j > left_ && j < right_; }

    double x(std::int64_t j) const { return static_cast<double>(j) * h_; }
    /// x_j - c and d - x_j computed in index space (exact multiples of h).
    double dist_left(std::int64_t j) const { return static_cast<double>(j - left_) * h_; }
    double dist_right(std::int64_t j) const { return static_cast<double>(right_ - j) * h_; }

    /// True (and j set) when x coincides with a grid node within 1e-9 relative.
    bool node_at(double x, std::int64_t& j) const {
        const double q = x / h_;
        const double r = std::round(q);
        if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
            return false;
        }
        j = static_cast<std::int64_t>(r);
        return j >= left_ && j <= right_;
    }

    std::int64_t nearest_node(double x) const {
        auto j = static_cast<std::int64_t>(std::llround(x / h_));
        return std::clamp(j, left_, right_);
    }

private:
    static std::int64_t integral_quotient(double q, const char* what) {
        const double r = std::round(q);
        if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
            std::ostringstream os;
            os.precision(12);
            os << "grid: " << what << " = " << q << " is not an integer";
            throw DivisibilityError(os.str());
        }
        return static_cast<std::int64_t>(r);
    }

    double c_;
    double d_;
    double h_;
    std::int64_t left_ = 0;
    std::int64_t right_ = 0;
    std::int64_t mid_ = 0;
};

inline Grid build_grid(double c, double d, double h) { return Grid(c, d, h); }

}  // namespace levyexit
