#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "trigspline/kernel.hpp"
#include "trigspline/trig_poly.hpp"

namespace trigspline {

struct SamplePoint {
    double t = 0.0;
    double value = 0.0;
};

/// Interpolating trigonometric spline of order r:
///   ST(t) = a_0/2 + sum_{k=1..n} [ a_k C_k(t) + b_k S_k(t) ] / H_k
/// under the kernel table's truncation. Immutable once built; value
/// semantics with a shared kernel table.
class TrigSpline {
  public:
    /// Builds from data plus a prebuilt kernel table. Several splines over
    /// the same (grid, kind, order, policy) should share one table; the
    /// expensive sums live there, fitting is cheap.
    static TrigSpline build(std::span<const double> values,
                            std::shared_ptr<const KernelTable> kernel) {
        if (!kernel) {
            throw DomainError("kernel table must not be null");
        }
        TrigPolyCoeffs coeffs = fit_trig_poly(values, kernel->grid());
        return TrigSpline(std::vector<double>(values.begin(), values.end()),
                          std::move(coeffs), std::move(kernel));
    }

    static TrigSpline build(std::span<const double> values, const GridSpec& grid,
                            FactorKind kind, SmoothnessOrder order,
                            std::optional<TruncationPolicy> policy = std::nullopt) {
        const TruncationPolicy effective =
            policy ? *policy : default_policy(kind, order, grid);
        return build(values,
                     std::make_shared<const KernelTable>(grid, kind, order, effective));
    }

    const GridSpec& grid() const { return kernel_->grid(); }
    FactorKind kind() const { return kernel_->kind(); }
    SmoothnessOrder order() const { return kernel_->order(); }
    const TruncationPolicy& policy() const { return kernel_->policy(); }
    const TrigPolyCoeffs& coeffs() const { return coeffs_; }
    const std::vector<double>& values() const { return values_; }
    const KernelTable& kernel() const { return *kernel_; }
    std::shared_ptr<const KernelTable> shared_kernel() const { return kernel_; }

    double eval(double t) const { return eval_derivative(t, 0); }

    /// Term-wise d-th derivative, 0 <= d <= r-1. Orders >= r are refused:
    /// the series no longer guarantees a continuous derivative there, so no
    /// value is better than an untrusted one.
    double eval_derivative(double t, int derivative) const {
        if (derivative < 0) {
            throw DomainError("derivative order must be >= 0");
        }
        if (derivative >= kernel_->order().value()) {
            throw OrderError("derivative order exceeds r-1");
        }
        const double tr = detail::reduce_two_pi(t);
        double sum = derivative == 0 ? 0.5 * coeffs_.a[0] : 0.0;
        for (int k = 1; k <= coeffs_.harmonics; ++k) {
            const auto kernel_point = kernel_->point(k, tr, derivative);
            sum += (coeffs_.a[static_cast<std::size_t>(k)] * kernel_point.cosine +
                    coeffs_.b[static_cast<std::size_t>(k) - 1] * kernel_point.sine) /
                   kernel_->normalizer_at(k);
        }
        return sum;
    }

    /// count equally spaced points t_s = 2 pi s / count with their values.
    /// Points are evaluated in parallel; each slot is written independently,
    /// so the result equals the serial loop exactly.
    std::vector<SamplePoint> sample(int count) const {
        if (count < 2) {
            throw DomainError("sample count must be >= 2");
        }
        std::vector<SamplePoint> out(static_cast<std::size_t>(count));
        detail::parallel_for(
            out.size(),
            [this, count, &out](std::size_t s) {
                const double t = detail::two_pi * static_cast<double>(s) / count;
                out[s] = SamplePoint{t, eval(t)};
            },
            1);
        return out;
    }

  private:
    TrigSpline(std::vector<double> values, TrigPolyCoeffs coeffs,
               std::shared_ptr<const KernelTable> kernel)
        : values_(std::move(values)), coeffs_(std::move(coeffs)),
          kernel_(std::move(kernel)) {}

    std::vector<double> values_;
    TrigPolyCoeffs coeffs_;
    std::shared_ptr<const KernelTable> kernel_;
};

/// Max of |f(t) - g(t)| over count equally spaced points, optionally phase
/// shifted by a fraction of a step: t_s = 2 pi (s + phase) / count. A
/// nonzero phase keeps samples off interpolation nodes, where agreement is
/// forced and would mask disagreement elsewhere.
template <class F, class G>
double max_deviation(F&& f, G&& g, int count, double phase = 0.0) {
    if (count < 2) {
        throw DomainError("deviation sample count must be >= 2");
    }
    std::vector<double> gaps(static_cast<std::size_t>(count));
    detail::parallel_for(
        gaps.size(),
        [&](std::size_t s) {
            const double t = detail::two_pi * (static_cast<double>(s) + phase) / count;
            gaps[s] = std::abs(f(t) - g(t));
        },
        1);
    double worst = 0.0;
    for (double gap : gaps) {
        worst = std::max(worst, gap);
    }
    return worst;
}

} // namespace trigspline
