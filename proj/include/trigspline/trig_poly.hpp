#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "trigspline/grid.hpp"

namespace trigspline {

/// Coefficients of the interpolating trigonometric polynomial
///   T_n(t) = a[0]/2 + sum_{k=1..n} (a[k] cos kt + b[k-1] sin kt).
struct TrigPolyCoeffs {
    int harmonics = 0;          // n
    std::vector<double> a;      // size n+1, cosine coefficients a_0..a_n
    std::vector<double> b;      // size n, sine coefficients b_1..b_n (b[k-1] = b_k)
};

/// Fits the degree-n trigonometric polynomial through the N = 2n+1 samples
/// on the given grid:
///   a_k = (2/N) sum_j values[j] cos(k t_j),  b_k = (2/N) sum_j values[j] sin(k t_j).
///
/// Direct O(N*n) summation; N is desk scale and the plain sums stay easy to
/// audit.
inline TrigPolyCoeffs fit_trig_poly(std::span<const double> values, const GridSpec& grid) {
    const int count = grid.node_count();
    if (static_cast<int>(values.size()) != count) {
        throw DimensionError("expected " + std::to_string(count) + " values, got " +
                             std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InputError("sample values must be finite");
        }
    }

    const int n = grid.harmonics();
    TrigPolyCoeffs coeffs;
    coeffs.harmonics = n;
    coeffs.a.resize(static_cast<std::size_t>(n) + 1);
    coeffs.b.resize(static_cast<std::size_t>(n));

    const std::vector<double> nodes = grid.nodes();
    const double scale = 2.0 / count;
    for (int k = 0; k <= n; ++k) {
        detail::KahanAccumulator ak;
        detail::KahanAccumulator bk;
        for (int j = 0; j < count; ++j) {
            const double kt = k * nodes[static_cast<std::size_t>(j)];
            ak.add(values[static_cast<std::size_t>(j)] * std::cos(kt));
            if (k >= 1) {
                bk.add(values[static_cast<std::size_t>(j)] * std::sin(kt));
            }
        }
        coeffs.a[static_cast<std::size_t>(k)] = scale * ak.sum;
        if (k >= 1) {
            coeffs.b[static_cast<std::size_t>(k) - 1] = scale * bk.sum;
        }
    }
    return coeffs;
}

/// Evaluates T_n at t (reduced mod 2*pi). Per-term cos/sin calls; n is
/// small, so clarity wins over recurrences here.
inline double eval_trig_poly(const TrigPolyCoeffs& coeffs, double t) {
    const double tr = detail::reduce_two_pi(t);
    double sum = 0.5 * coeffs.a[0];
    for (int k = 1; k <= coeffs.harmonics; ++k) {
        const double kt = k * tr;
        sum += coeffs.a[static_cast<std::size_t>(k)] * std::cos(kt) +
               coeffs.b[static_cast<std::size_t>(k) - 1] * std::sin(kt);
    }
    return sum;
}

} // namespace trigspline
