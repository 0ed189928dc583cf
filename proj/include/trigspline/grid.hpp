#pragma once

#include <vector>

#include "trigspline/detail/numeric.hpp"
#include "trigspline/errors.hpp"

namespace trigspline {

/// Uniform periodic grid on [0, 2*pi) with an odd number of nodes.
///
/// The indicator selects one of two node families: indicator 0 places node i
/// (0-indexed) at 2*pi*i/N, indicator 1 shifts every node by half a step to
/// pi*(2*i+1)/N. Invalid combinations are unconstructible.
class GridSpec {
  public:
    GridSpec(int node_count, int indicator)
        : node_count_(node_count), indicator_(indicator) {
        if (node_count_ < 3 || node_count_ % 2 == 0) {
            throw DomainError("grid node count must be an odd integer >= 3, got " +
                              std::to_string(node_count_));
        }
        if (indicator_ != 0 && indicator_ != 1) {
            throw DomainError("grid indicator must be 0 or 1, got " +
                              std::to_string(indicator_));
        }
    }

    int node_count() const { return node_count_; }
    int indicator() const { return indicator_; }

    /// Harmonic count n with N = 2n + 1.
    int harmonics() const { return (node_count_ - 1) / 2; }

    /// Angle of node i, 0-indexed. Each node is computed directly from its
    /// index (no cumulative addition, no drift).
    double node(int i) const {
        if (i < 0 || i >= node_count_) {
            throw DomainError("node index out of range");
        }
        if (indicator_ == 0) {
            return detail::two_pi * i / node_count_;
        }
        return detail::pi * (2 * i + 1) / node_count_;
    }

    /// All N node angles, strictly increasing, spaced 2*pi/N.
    std::vector<double> nodes() const {
        std::vector<double> out(static_cast<std::size_t>(node_count_));
        for (int i = 0; i < node_count_; ++i) {
            out[static_cast<std::size_t>(i)] = node(i);
        }
        return out;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.node_count_ == b.node_count_ && a.indicator_ == b.indicator_;
    }

  private:
    int node_count_;
    int indicator_;
};

} // namespace trigspline
