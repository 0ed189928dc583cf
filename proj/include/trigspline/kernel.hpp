#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "trigspline/factors.hpp"
#include "trigspline/grid.hpp"

namespace trigspline {

/// How many alias blocks m = 1..M of the kernel series are retained,
/// together with a rigorous bound on everything discarded. The normalizers
/// and the kernels must always be truncated at the same M: every block
/// satisfies the node aliasing identity on its own, so a consistent cut
/// keeps interpolation exact at the nodes for any M and only perturbs
/// off-node values.
struct TruncationPolicy {
    long long alias_blocks = 1; // M >= 1
    double tail_bound = 0.0;    // bound on the discarded remainder

    static constexpr long long max_alias_blocks = 2'000'000;
    static constexpr double default_tolerance = 1e-9;
};

/// Rigorous upper bound on sum_{m>M} [|v_{mN+k}| + |v_{mN-k}|], valid for
/// every k <= n, by integral comparison of the dominating envelope:
///   sum_{m>M} 2 (mN - n)^-(1+r) <= 2 (MN - n)^-r / (r N).
/// The sinc families sit under the same envelope times (N/pi)^(1+r).
/// Decreasing in M, and in r as long as MN - n > N/pi (always true here).
inline double tail_bound(FactorKind kind, SmoothnessOrder order, int node_count,
                         int harmonics, long long alias_blocks) {
    if (alias_blocks < 1) {
        throw DomainError("tail bound requires at least one alias block");
    }
    const int r = order.value();
    const double gap = static_cast<double>(alias_blocks) * node_count - harmonics;
    double bound = 2.0 * std::pow(gap, -static_cast<double>(r)) / (r * node_count);
    if (kind != FactorKind::V3) {
        bound *= std::pow(node_count / detail::pi, r + 1.0);
    }
    return bound;
}

/// Smallest M with tail_bound(M) <= tolerance, capped at
/// TruncationPolicy::max_alias_blocks. The cap binds for r = 1 at any
/// practical tolerance; callers should then report the achieved bound
/// rather than assume the request was met.
inline long long blocks_for_tolerance(FactorKind kind, SmoothnessOrder order,
                                      int node_count, int harmonics, double tolerance) {
    if (!(tolerance > 0.0)) {
        throw DomainError("truncation tolerance must be positive");
    }
    const int r = order.value();
    double envelope = 2.0 / (tolerance * r * node_count);
    if (kind != FactorKind::V3) {
        envelope *= std::pow(node_count / detail::pi, r + 1.0);
    }
    const double gap = std::pow(envelope, 1.0 / r);
    double blocks = std::ceil((gap + harmonics) / node_count);
    if (!(blocks >= 1.0)) {
        blocks = 1.0;
    }
    long long m = blocks >= static_cast<double>(TruncationPolicy::max_alias_blocks)
                      ? TruncationPolicy::max_alias_blocks
                      : static_cast<long long>(blocks);
    while (m < TruncationPolicy::max_alias_blocks &&
           tail_bound(kind, order, node_count, harmonics, m) > tolerance) {
        ++m;
    }
    return m;
}

/// Policy with an explicit block count; the tail bound is filled in.
inline TruncationPolicy make_policy(long long alias_blocks, FactorKind kind,
                                    SmoothnessOrder order, const GridSpec& grid) {
    if (alias_blocks < 1 || alias_blocks > TruncationPolicy::max_alias_blocks) {
        throw DomainError("alias block count must be in [1, " +
                          std::to_string(TruncationPolicy::max_alias_blocks) + "]");
    }
    return TruncationPolicy{alias_blocks, tail_bound(kind, order, grid.node_count(),
                                                     grid.harmonics(), alias_blocks)};
}

/// Policy sized from a tail tolerance via the bound inversion.
inline TruncationPolicy policy_for_tolerance(double tolerance, FactorKind kind,
                                             SmoothnessOrder order, const GridSpec& grid) {
    const long long m = blocks_for_tolerance(kind, order, grid.node_count(),
                                             grid.harmonics(), tolerance);
    return make_policy(m, kind, order, grid);
}

inline TruncationPolicy default_policy(FactorKind kind, SmoothnessOrder order,
                                       const GridSpec& grid) {
    return policy_for_tolerance(TruncationPolicy::default_tolerance, kind, order, grid);
}

namespace detail {

struct KernelSums {
    double cosine = 0.0; // C_k(t), or its d-th derivative
    double sine = 0.0;   // S_k(t), or its d-th derivative
};

/// Truncated aliased kernel sums at reduced angle t:
///   C = v_k cos kt + sum_{m=1..M} s_m [ v_{mN+k} cos (mN+k)t + v_{mN-k} cos (mN-k)t ]
///   S = v_k sin kt + sum_{m=1..M} s_m [ v_{mN+k} sin (mN+k)t - v_{mN-k} sin (mN-k)t ]
/// with s_m = 1, or s_m = (-1)^m when alternating is set. Everything is
/// term-wise for the d-th derivative: frequency j picks up j^d and a
/// quarter-turn phase per order. cos/sin of (mN +- k)t come from one angle
/// recurrence on mNt plus product formulas, so the loop makes no trig
/// calls; Kahan accumulation keeps roundoff flat over millions of blocks.
///
/// The alias ladders have constant residues: (mN+k) % N == k and
/// (mN-k) % N == N-k, with block parities alternating in m.
template <bool WithDerivative>
KernelSums aliased_kernel_sums_impl(const FactorTable& factors, int node_count, int k,
                                    long long alias_blocks, double t, int derivative,
                                    bool alternating) {
    const double ck = std::cos(k * t);
    const double sk = std::sin(k * t);
    const int phase = derivative & 3;

    // d-th derivative of cos(jt) is j^d * rot_c, of sin(jt) j^d * rot_s.
    const auto rot_c = [phase](double c, double s) {
        switch (phase) {
        case 0:
            return c;
        case 1:
            return -s;
        case 2:
            return -c;
        default:
            return s;
        }
    };
    const auto rot_s = [phase](double c, double s) {
        switch (phase) {
        case 0:
            return s;
        case 1:
            return c;
        case 2:
            return -s;
        default:
            return -c;
        }
    };

    KahanAccumulator cos_acc;
    KahanAccumulator sin_acc;

    const double v_base = factors.at(k, k, false);
    if constexpr (WithDerivative) {
        const double jd = powi(static_cast<double>(k), derivative);
        cos_acc.add(v_base * jd * rot_c(ck, sk));
        sin_acc.add(v_base * jd * rot_s(ck, sk));
    } else {
        cos_acc.add(v_base * ck);
        sin_acc.add(v_base * sk);
    }

    if (alias_blocks > 0) {
        const double cN = std::cos(node_count * t);
        const double sN = std::sin(node_count * t);
        double cm = cN; // cos(m N t), starting at m = 1
        double sm = sN; // sin(m N t)
        const int res_plus = k;
        const int res_minus = node_count - k;
        bool plus_odd = true;   // parity of (mN+k)/N = m
        bool minus_odd = false; // parity of (mN-k)/N = m-1
        for (long long m = 1; m <= alias_blocks; ++m) {
            const long long j_plus = m * node_count + k;
            const long long j_minus = m * node_count - k;
            const double cc = cm * ck;
            const double ss = sm * sk;
            const double sc = sm * ck;
            const double cs = cm * sk;
            const double c_plus = cc - ss;  // cos((mN+k)t)
            const double c_minus = cc + ss; // cos((mN-k)t)
            const double s_plus = sc + cs;  // sin((mN+k)t)
            const double s_minus = sc - cs; // sin((mN-k)t)
            const double block_sign = (alternating && (m & 1)) ? -1.0 : 1.0;
            const double v_plus = block_sign * factors.at(j_plus, res_plus, plus_odd);
            const double v_minus = block_sign * factors.at(j_minus, res_minus, minus_odd);
            if constexpr (WithDerivative) {
                const double jd_plus = powi(static_cast<double>(j_plus), derivative);
                const double jd_minus = powi(static_cast<double>(j_minus), derivative);
                cos_acc.add(v_plus * jd_plus * rot_c(c_plus, s_plus));
                cos_acc.add(v_minus * jd_minus * rot_c(c_minus, s_minus));
                sin_acc.add(v_plus * jd_plus * rot_s(c_plus, s_plus));
                sin_acc.add(-(v_minus * jd_minus * rot_s(c_minus, s_minus)));
            } else {
                cos_acc.add(v_plus * c_plus);
                cos_acc.add(v_minus * c_minus);
                sin_acc.add(v_plus * s_plus);
                sin_acc.add(-(v_minus * s_minus));
            }
            const double next_c = cm * cN - sm * sN;
            sm = sm * cN + cm * sN;
            cm = next_c;
            plus_odd = !plus_odd;
            minus_odd = !minus_odd;
        }
    }
    return {cos_acc.sum, sin_acc.sum};
}

inline KernelSums aliased_kernel_sums(const FactorTable& factors, int node_count, int k,
                                      long long alias_blocks, double t, int derivative,
                                      bool alternating = false) {
    if (derivative == 0) {
        return aliased_kernel_sums_impl<false>(factors, node_count, k, alias_blocks, t, 0,
                                               alternating);
    }
    return aliased_kernel_sums_impl<true>(factors, node_count, k, alias_blocks, t,
                                          derivative, alternating);
}

struct NormalizerSums {
    double value = 0.0; // H_k
    double mass = 0.0;  // |v_k| + sum of |alias terms|; cancellation scale
};

/// H_k = v_k + sum_{m=1..M} s_m [ v_{mN+k} + v_{mN-k} ] with s_m as in the
/// kernel sums, plus the absolute mass of the same terms. |H| small against
/// the mass means the signs cancelled, not that the mode is merely weak.
inline NormalizerSums aliased_normalizer(const FactorTable& factors, int node_count,
                                         bool alternating, int k, long long alias_blocks) {
    KahanAccumulator value;
    KahanAccumulator mass;
    const double v_base = factors.at(k, k, false);
    value.add(v_base);
    mass.add(std::abs(v_base));
    const int res_plus = k;
    const int res_minus = node_count - k;
    bool plus_odd = true;
    bool minus_odd = false;
    for (long long m = 1; m <= alias_blocks; ++m) {
        const double v_plus = factors.at(m * node_count + k, res_plus, plus_odd);
        const double v_minus = factors.at(m * node_count - k, res_minus, minus_odd);
        double term = v_plus + v_minus;
        if (alternating && (m % 2) != 0) {
            term = -term;
        }
        value.add(term);
        mass.add(std::abs(v_plus) + std::abs(v_minus));
        plus_odd = !plus_odd;
        minus_odd = !minus_odd;
    }
    return {value.sum, mass.sum};
}

/// Cancellation threshold at ~1e3 machine epsilons of the term mass.
inline void ensure_not_degenerate(double value, double mass, int k) {
    if (std::abs(value) <= 1e-12 * mass) {
        throw DegenerateNormalizerError("normalizer for mode k=" + std::to_string(k) +
                                        " cancelled to zero; this factor family cannot "
                                        "normalize the mode");
    }
}

} // namespace detail

/// Interpolation normalizer H_k (the alias-sum scale of mode k). M = 0
/// means no alias terms at all.
inline double normalizer(FactorKind kind, SmoothnessOrder order, const GridSpec& grid,
                         int k, long long alias_blocks) {
    if (k < 1 || k > grid.harmonics()) {
        throw DomainError("mode index k out of range");
    }
    if (alias_blocks < 0) {
        throw DomainError("alias block count must be >= 0");
    }
    const FactorTable factors(kind, order, grid.node_count());
    const auto sums = detail::aliased_normalizer(factors, grid.node_count(),
                                                 grid.indicator() == 1, k, alias_blocks);
    detail::ensure_not_degenerate(sums.value, sums.mass, k);
    return sums.value;
}

/// Truncated aliased cosine kernel C_k(t).
inline double eval_cos_kernel(FactorKind kind, SmoothnessOrder order, const GridSpec& grid,
                              int k, long long alias_blocks, double t) {
    if (k < 1 || k > grid.harmonics()) {
        throw DomainError("mode index k out of range");
    }
    if (alias_blocks < 0) {
        throw DomainError("alias block count must be >= 0");
    }
    const FactorTable factors(kind, order, grid.node_count());
    return detail::aliased_kernel_sums(factors, grid.node_count(), k, alias_blocks,
                                       detail::reduce_two_pi(t), 0)
        .cosine;
}

/// Truncated aliased sine kernel S_k(t); note the minus on the mN-k terms.
inline double eval_sin_kernel(FactorKind kind, SmoothnessOrder order, const GridSpec& grid,
                              int k, long long alias_blocks, double t) {
    if (k < 1 || k > grid.harmonics()) {
        throw DomainError("mode index k out of range");
    }
    if (alias_blocks < 0) {
        throw DomainError("alias block count must be >= 0");
    }
    const FactorTable factors(kind, order, grid.node_count());
    return detail::aliased_kernel_sums(factors, grid.node_count(), k, alias_blocks,
                                       detail::reduce_two_pi(t), 0)
        .sine;
}

/// Precomputed normalizers plus kernel values at the grid nodes for one
/// (grid, kind, order, policy). Immutable after construction; several
/// splines over the same configuration share one table. The node cache is
/// filled by the same summation routine used everywhere else, so a cache
/// hit returns bit-identical values to a fresh evaluation.
///
/// The table uses the grid-consistent grouping of the alias blocks. On the
/// half-step grid the fitted coefficients alternate sign across alias
/// blocks (cos((mN +- k) t_j) = (-1)^m cos(k t_j) at its nodes), so the
/// factor-weighted series of the data carries (-1)^m inside each mode
/// ladder and is normalized by the plain all-plus alias mass; on the even
/// grid this reduces to the ungrouped sums. Folding the signs into the
/// kernels is what keeps the series equal to the factor-weighted Fourier
/// series of the data everywhere, not just at the nodes, and hence smooth
/// of order r-1 with the expected shape between nodes.
class KernelTable {
  public:
    KernelTable(const GridSpec& grid, FactorKind kind, SmoothnessOrder order,
                TruncationPolicy policy)
        : grid_(grid), kind_(kind), order_(order), policy_(policy),
          factors_(kind, order, grid.node_count()), nodes_(grid.nodes()),
          alternating_(grid.indicator() == 1) {
        if (policy_.alias_blocks < 1) {
            throw DomainError("kernel table requires at least one alias block");
        }
        const int n = grid_.harmonics();
        normalizers_.resize(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k) {
            const auto sums = detail::aliased_normalizer(factors_, grid_.node_count(),
                                                         false, k, policy_.alias_blocks);
            detail::ensure_not_degenerate(sums.value, sums.mass, k);
            normalizers_[static_cast<std::size_t>(k) - 1] = sums.value;
        }

        const std::size_t node_terms = nodes_.size() * static_cast<std::size_t>(n);
        node_cos_.resize(node_terms);
        node_sin_.resize(node_terms);
        detail::parallel_for(
            node_terms,
            [this, n](std::size_t idx) {
                const int i = static_cast<int>(idx / static_cast<std::size_t>(n));
                const int k = static_cast<int>(idx % static_cast<std::size_t>(n)) + 1;
                const auto sums = detail::aliased_kernel_sums(
                    factors_, grid_.node_count(), k, policy_.alias_blocks,
                    nodes_[static_cast<std::size_t>(i)], 0, alternating_);
                node_cos_[idx] = sums.cosine;
                node_sin_[idx] = sums.sine;
            },
            1);
    }

    const GridSpec& grid() const { return grid_; }
    FactorKind kind() const { return kind_; }
    SmoothnessOrder order() const { return order_; }
    const TruncationPolicy& policy() const { return policy_; }

    /// H_k, k in 1..n.
    double normalizer_at(int k) const {
        return normalizers_[static_cast<std::size_t>(k) - 1];
    }

    /// C_k and S_k (d-th derivative) at reduced angle t. Exact node hits are
    /// served from the construction-time cache when d = 0.
    detail::KernelSums point(int k, double t, int derivative = 0) const {
        if (derivative == 0) {
            const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
            if (it != nodes_.end() && *it == t) {
                const std::size_t idx =
                    static_cast<std::size_t>(it - nodes_.begin()) *
                        static_cast<std::size_t>(grid_.harmonics()) +
                    static_cast<std::size_t>(k) - 1;
                return {node_cos_[idx], node_sin_[idx]};
            }
        }
        return detail::aliased_kernel_sums(factors_, grid_.node_count(), k,
                                           policy_.alias_blocks, t, derivative,
                                           alternating_);
    }

  private:
    GridSpec grid_;
    FactorKind kind_;
    SmoothnessOrder order_;
    TruncationPolicy policy_;
    FactorTable factors_;
    std::vector<double> nodes_;
    bool alternating_;
    std::vector<double> normalizers_; // H_1..H_n
    std::vector<double> node_cos_;    // C_k(t_i), row-major in (i, k)
    std::vector<double> node_sin_;    // S_k(t_i)
};

} // namespace trigspline
