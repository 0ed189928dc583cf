#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <thread>
#include <vector>

namespace trigspline::detail {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduces t to [0, 2*pi). fmod is an exact remainder with respect to the
/// double rounding of 2*pi, so reduction of an already-reduced value is the
/// identity bit for bit.
inline double reduce_two_pi(double t) {
    double r = std::fmod(t, two_pi);
    return r < 0.0 ? r + two_pi : r;
}

/// sin(x)/x with the removable singularity filled in. Below 1e-8 the
/// truncated Taylor form keeps full double precision without a 0/0.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

/// Integer power by repeated squaring. The sign of a negative base is
/// carried through the multiplication sequence exactly, so
/// powi(-a, p) == +/- powi(a, p) bit for bit.
inline double powi(double base, int exponent) {
    double result = 1.0;
    double b = base;
    unsigned e = static_cast<unsigned>(exponent);
    while (e != 0) {
        if (e & 1u) {
            result *= b;
        }
        b *= b;
        e >>= 1u;
    }
    return result;
}

/// Compensated accumulator; drop-in for += loops over long series.
struct KahanAccumulator {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        const double y = value - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }
};

/// Runs fn(i) for i in [0, count). Work is split into contiguous blocks,
/// one per worker; fn must only write state owned by index i, which makes
/// the result identical to the serial loop.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_grain = 1024) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = hw == 0 ? 1 : hw;
    if (workers > 1 && count / workers < min_grain) {
        workers = count / min_grain;
    }
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

} // namespace trigspline::detail
