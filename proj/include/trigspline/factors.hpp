#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "trigspline/detail/numeric.hpp"
#include "trigspline/errors.hpp"

namespace trigspline {

/// The three convergence-factor families, all of decay order O(j^-(1+r)):
///   V1: [sinc(pi j / N)]^(1+r)   (signed; negative lobes survive odd powers)
///   V2: |sinc(pi j / N)|^(1+r)
///   V3: (1/j)^(1+r)
enum class FactorKind { V1, V2, V3 };

inline const char* to_string(FactorKind kind) {
    switch (kind) {
    case FactorKind::V1:
        return "v1";
    case FactorKind::V2:
        return "v2";
    default:
        return "v3";
    }
}

inline std::optional<FactorKind> parse_factor_kind(const std::string& text) {
    if (text == "v1" || text == "V1") return FactorKind::V1;
    if (text == "v2" || text == "V2") return FactorKind::V2;
    if (text == "v3" || text == "V3") return FactorKind::V3;
    return std::nullopt;
}

/// Smoothness order r >= 1; the built spline has continuous derivatives up
/// to order r-1.
class SmoothnessOrder {
  public:
    explicit SmoothnessOrder(int r) : value_(r) {
        if (r < 1) {
            throw DomainError("smoothness order must be >= 1, got " + std::to_string(r));
        }
    }

    int value() const { return value_; }

    friend bool operator==(SmoothnessOrder a, SmoothnessOrder b) {
        return a.value_ == b.value_;
    }

  private:
    int value_;
};

namespace detail {

/// Core factor evaluation from the index decomposition j = q*N + s,
/// 0 <= s < N. Uses sin(pi j / N) = (-1)^q sin(pi s / N), so sinc never
/// needs a reduced argument:
///   sinc(pi j / N) = (-1)^q * sin(pi s / N) * (N / pi) / j.
/// scaled_sin must equal std::sin(pi * s / N) * (N / pi).
inline double factor_from_parts(FactorKind kind, int exponent, long long j,
                                double scaled_sin, bool block_odd) {
    if (kind == FactorKind::V3) {
        return powi(1.0 / static_cast<double>(j), exponent);
    }
    double base = scaled_sin / static_cast<double>(j);
    if (kind == FactorKind::V1 && block_odd) {
        base = -base;
    }
    return powi(base, exponent);
}

} // namespace detail

/// Factor tables for a fixed (kind, r, N). Caches the per-residue values
/// sin(pi s / N) * (N / pi); alias sums revisit the same residues for every
/// block, so this is the whole state worth keeping. Lookups return exactly
/// what a standalone factor() call computes, and the table is immutable
/// after construction, so sharing it across threads changes nothing.
class FactorTable {
  public:
    FactorTable(FactorKind kind, SmoothnessOrder order, int modulus)
        : kind_(kind), exponent_(order.value() + 1), modulus_(modulus) {
        if (modulus_ < 3 || modulus_ % 2 == 0) {
            throw DomainError("factor modulus must be an odd integer >= 3");
        }
        scaled_sin_.resize(static_cast<std::size_t>(modulus_));
        const double n_over_pi = modulus_ / detail::pi;
        for (int s = 0; s < modulus_; ++s) {
            scaled_sin_[static_cast<std::size_t>(s)] =
                std::sin(detail::pi * s / modulus_) * n_over_pi;
        }
    }

    FactorKind kind() const { return kind_; }
    int exponent() const { return exponent_; }
    int modulus() const { return modulus_; }

    /// v_j with the residue/block decomposition already known to the caller
    /// (the alias-ladder loops keep both without recomputing divisions).
    /// residue must be j % N and block_odd the parity of j / N.
    double at(long long j, int residue, bool block_odd) const {
        return detail::factor_from_parts(kind_, exponent_, j,
                                         scaled_sin_[static_cast<std::size_t>(residue)],
                                         block_odd);
    }

    /// v_j from j alone.
    double operator()(long long j) const {
        if (j < 1) {
            throw DomainError("factor index must be >= 1");
        }
        const int residue = static_cast<int>(j % modulus_);
        const bool block_odd = ((j / modulus_) % 2) != 0;
        return at(j, residue, block_odd);
    }

  private:
    FactorKind kind_;
    int exponent_;
    int modulus_;
    std::vector<double> scaled_sin_;
};

/// Convergence factor v_j(r) for the selected family. j >= 1; j multiples
/// of N give exactly 0 for V1/V2.
inline double factor(FactorKind kind, SmoothnessOrder order, int modulus, long long j) {
    if (j < 1) {
        throw DomainError("factor index must be >= 1");
    }
    if (modulus < 3 || modulus % 2 == 0) {
        throw DomainError("factor modulus must be an odd integer >= 3");
    }
    const int exponent = order.value() + 1;
    if (kind == FactorKind::V3) {
        return detail::powi(1.0 / static_cast<double>(j), exponent);
    }
    const int residue = static_cast<int>(j % modulus);
    const bool block_odd = ((j / modulus) % 2) != 0;
    const double scaled_sin = std::sin(detail::pi * residue / modulus) * (modulus / detail::pi);
    return detail::factor_from_parts(kind, exponent, j, scaled_sin, block_odd);
}

} // namespace trigspline
