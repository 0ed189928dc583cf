#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "trigspline/grid.hpp"

namespace trigspline {

namespace detail {

/// Thomas elimination for a plain tridiagonal system. sub and sup hold the
/// off-diagonals (size n-1); throws on a vanishing pivot.
inline std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                             std::span<const double> diag,
                                             std::span<const double> sup,
                                             std::span<const double> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    if (diag[0] == 0.0) {
        throw NumericError("tridiagonal solve hit a zero pivot at row 0");
    }
    c[0] = n > 1 ? sup[0] / diag[0] : 0.0;
    d[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double pivot = diag[i] - sub[i - 1] * c[i - 1];
        if (pivot == 0.0) {
            throw NumericError("tridiagonal solve hit a zero pivot at row " +
                               std::to_string(i));
        }
        if (i + 1 < n) {
            c[i] = sup[i] / pivot;
        }
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        d[i] -= c[i] * d[i + 1];
    }
    return d;
}

} // namespace detail

/// Solves the cyclic tridiagonal system
///   [ diag[0]  sup[0]            ...  corner_top_right ]
///   [ sub[0]   diag[1]  sup[1]                         ]
///   [            ...                                   ]
///   [ corner_bottom_left     ...  sub[n-2]  diag[n-1]  ]
/// by a rank-one (Sherman-Morrison) correction over two acyclic solves.
/// The solution is verified against the inputs; a residual above
/// 1e-10 * |rhs| raises a numeric error.
inline std::vector<double> solve_cyclic_tridiagonal(std::span<const double> sub,
                                                    std::span<const double> diag,
                                                    std::span<const double> sup,
                                                    double corner_top_right,
                                                    double corner_bottom_left,
                                                    std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n < 3) {
        throw DimensionError("cyclic tridiagonal system must have dimension >= 3");
    }
    if (sub.size() != n - 1 || sup.size() != n - 1 || rhs.size() != n) {
        throw DimensionError("cyclic tridiagonal band sizes do not match the diagonal");
    }

    std::vector<double> solution;
    if (corner_top_right == 0.0 && corner_bottom_left == 0.0) {
        solution = detail::solve_tridiagonal(sub, diag, sup, rhs);
    } else {
        // A = T + u v^T with u = (gamma, 0, .., 0, corner_bl)^T and
        // v = (1, 0, .., 0, corner_tr / gamma)^T.
        const double gamma = -diag[0];
        if (gamma == 0.0) {
            throw NumericError("cyclic tridiagonal solve hit a zero pivot at row 0");
        }
        std::vector<double> diag_mod(diag.begin(), diag.end());
        diag_mod[0] -= gamma;
        diag_mod[n - 1] -= corner_top_right * corner_bottom_left / gamma;

        std::vector<double> u(n, 0.0);
        u[0] = gamma;
        u[n - 1] = corner_bottom_left;

        const std::vector<double> y = detail::solve_tridiagonal(sub, diag_mod, sup, rhs);
        const std::vector<double> q = detail::solve_tridiagonal(sub, diag_mod, sup, u);

        const double v_dot_y = y[0] + (corner_top_right / gamma) * y[n - 1];
        const double v_dot_q = q[0] + (corner_top_right / gamma) * q[n - 1];
        const double denom = 1.0 + v_dot_q;
        if (denom == 0.0) {
            throw NumericError("cyclic tridiagonal correction is singular");
        }
        solution = y;
        for (std::size_t i = 0; i < n; ++i) {
            solution[i] -= (v_dot_y / denom) * q[i];
        }
    }

    double rhs_norm = 0.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = diag[i] * solution[i];
        if (i > 0) {
            row += sub[i - 1] * solution[i - 1];
        }
        if (i + 1 < n) {
            row += sup[i] * solution[i + 1];
        }
        if (i == 0) {
            row += corner_top_right * solution[n - 1];
        }
        if (i == n - 1) {
            row += corner_bottom_left * solution[0];
        }
        residual = std::max(residual, std::abs(row - rhs[i]));
        rhs_norm = std::max(rhs_norm, std::abs(rhs[i]));
    }
    if (residual > 1e-10 * rhs_norm && residual > 0.0) {
        throw NumericError("cyclic tridiagonal residual " + std::to_string(residual) +
                           " exceeds tolerance");
    }
    return solution;
}

/// Periodic piecewise polynomial on the uniform knot grid 2 pi i / N,
/// degree 1..3, with local coefficients in u = t - knot_i. Built by the
/// constructors below; used as an independent reference for the
/// trigonometric splines.
class PeriodicPolySpline {
  public:
    int degree() const { return degree_; }
    int piece_count() const { return static_cast<int>(knots_.size()); }
    double step() const { return step_; }
    const std::vector<double>& knots() const { return knots_; }

    /// Coefficient p of piece i (value of u^p).
    double coefficient(int piece, int power) const {
        return pieces_[static_cast<std::size_t>(piece)][static_cast<std::size_t>(power)];
    }

    double eval(double t) const { return eval_derivative(t, 0); }

    /// d-th derivative of the local polynomial, 0 <= d <= degree-1.
    double eval_derivative(double t, int derivative) const {
        if (derivative < 0 || derivative >= degree_) {
            throw DomainError("polynomial spline derivative order must be in [0, degree-1]");
        }
        const double tr = detail::reduce_two_pi(t);
        std::size_t idx = static_cast<std::size_t>(tr / step_);
        if (idx >= knots_.size()) {
            idx = knots_.size() - 1;
        }
        const double u = tr - knots_[idx];
        const auto& c = pieces_[idx];
        // Horner on the derived coefficients.
        double value = 0.0;
        for (int p = degree_; p >= derivative; --p) {
            double scale = 1.0;
            for (int q = 0; q < derivative; ++q) {
                scale *= p - q;
            }
            value = value * u + scale * c[static_cast<std::size_t>(p)];
        }
        return value;
    }

    static PeriodicPolySpline from_pieces(int degree, double step,
                                          std::vector<double> knots,
                                          std::vector<std::array<double, 4>> pieces) {
        return PeriodicPolySpline(degree, step, std::move(knots), std::move(pieces));
    }

  private:
    PeriodicPolySpline(int degree, double step, std::vector<double> knots,
                       std::vector<std::array<double, 4>> pieces)
        : degree_(degree), step_(step), knots_(std::move(knots)),
          pieces_(std::move(pieces)) {}

    int degree_;
    double step_;
    std::vector<double> knots_;
    std::vector<std::array<double, 4>> pieces_;
};

namespace detail {

inline void require_grid(const GridSpec& grid, int indicator, const char* what) {
    if (grid.indicator() != indicator) {
        throw DomainError(std::string(what) + " requires the indicator-" +
                          std::to_string(indicator) + " grid");
    }
}

inline void require_values(std::span<const double> values, const GridSpec& grid) {
    if (static_cast<int>(values.size()) != grid.node_count()) {
        throw DimensionError("expected " + std::to_string(grid.node_count()) +
                             " values, got " + std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InputError("sample values must be finite");
        }
    }
}

} // namespace detail

/// Degree-1 periodic interpolant through (t_i, v_i) on the indicator-0
/// grid, wrap-around segment included.
inline PeriodicPolySpline periodic_linear(std::span<const double> values,
                                          const GridSpec& grid) {
    detail::require_grid(grid, 0, "periodic linear spline");
    detail::require_values(values, grid);
    const int count = grid.node_count();
    const double h = detail::two_pi / count;
    std::vector<std::array<double, 4>> pieces(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double v0 = values[static_cast<std::size_t>(i)];
        const double v1 = values[static_cast<std::size_t>((i + 1) % count)];
        pieces[static_cast<std::size_t>(i)] = {v0, (v1 - v0) / h, 0.0, 0.0};
    }
    return PeriodicPolySpline::from_pieces(1, h, grid.nodes(), std::move(pieces));
}

/// C^2 periodic cubic interpolant on the indicator-0 grid via the
/// second-derivative (moment) formulation: on a uniform grid the moments
/// solve the cyclic system
///   M_{i-1} + 4 M_i + M_{i+1} = 6 (v_{i-1} - 2 v_i + v_{i+1}) / h^2.
inline PeriodicPolySpline periodic_cubic(std::span<const double> values,
                                         const GridSpec& grid) {
    detail::require_grid(grid, 0, "periodic cubic spline");
    detail::require_values(values, grid);
    const int count = grid.node_count();
    const double h = detail::two_pi / count;

    std::vector<double> sub(static_cast<std::size_t>(count) - 1, 1.0);
    std::vector<double> diag(static_cast<std::size_t>(count), 4.0);
    std::vector<double> sup(static_cast<std::size_t>(count) - 1, 1.0);
    std::vector<double> rhs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double prev = values[static_cast<std::size_t>((i + count - 1) % count)];
        const double here = values[static_cast<std::size_t>(i)];
        const double next = values[static_cast<std::size_t>((i + 1) % count)];
        rhs[static_cast<std::size_t>(i)] = 6.0 * (prev - 2.0 * here + next) / (h * h);
    }
    const std::vector<double> moments =
        solve_cyclic_tridiagonal(sub, diag, sup, 1.0, 1.0, rhs);

    std::vector<std::array<double, 4>> pieces(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int next = (i + 1) % count;
        const double v0 = values[static_cast<std::size_t>(i)];
        const double v1 = values[static_cast<std::size_t>(next)];
        const double m0 = moments[static_cast<std::size_t>(i)];
        const double m1 = moments[static_cast<std::size_t>(next)];
        pieces[static_cast<std::size_t>(i)] = {
            v0,
            (v1 - v0) / h - (2.0 * m0 + m1) * h / 6.0,
            m0 / 2.0,
            (m1 - m0) / (6.0 * h),
        };
    }
    return PeriodicPolySpline::from_pieces(3, h, grid.nodes(), std::move(pieces));
}

/// C^1 periodic quadratic spline with knots on the indicator-0 grid that
/// interpolates the given values at the indicator-1 (midpoint) nodes. The
/// knot values z satisfy the cyclic system
///   z_{i-1} + 6 z_i + z_{i+1} = 4 (v_{i-1} + v_i),
/// after which the piece slope follows from the midpoint condition.
inline PeriodicPolySpline periodic_quadratic_midpoint(std::span<const double> values,
                                                      const GridSpec& grid) {
    detail::require_grid(grid, 1, "periodic quadratic midpoint spline");
    detail::require_values(values, grid);
    const int count = grid.node_count();
    const double h = detail::two_pi / count;

    std::vector<double> sub(static_cast<std::size_t>(count) - 1, 1.0);
    std::vector<double> diag(static_cast<std::size_t>(count), 6.0);
    std::vector<double> sup(static_cast<std::size_t>(count) - 1, 1.0);
    std::vector<double> rhs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double prev = values[static_cast<std::size_t>((i + count - 1) % count)];
        const double here = values[static_cast<std::size_t>(i)];
        rhs[static_cast<std::size_t>(i)] = 4.0 * (prev + here);
    }
    const std::vector<double> z = solve_cyclic_tridiagonal(sub, diag, sup, 1.0, 1.0, rhs);

    const GridSpec knot_grid(count, 0);
    std::vector<std::array<double, 4>> pieces(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int next = (i + 1) % count;
        const double z0 = z[static_cast<std::size_t>(i)];
        const double z1 = z[static_cast<std::size_t>(next)];
        const double mid = values[static_cast<std::size_t>(i)];
        const double slope = (4.0 * mid - 3.0 * z0 - z1) / h;
        pieces[static_cast<std::size_t>(i)] = {
            z0,
            slope,
            (z1 - z0 - slope * h) / (h * h),
            0.0,
        };
    }
    return PeriodicPolySpline::from_pieces(2, h, knot_grid.nodes(), std::move(pieces));
}

} // namespace trigspline
