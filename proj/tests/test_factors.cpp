#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "trigspline/factors.hpp"

using namespace trigspline;
namespace num = trigspline::detail;

TEST_CASE("power-law factor at small indices") {
    REQUIRE(factor(FactorKind::V3, SmoothnessOrder(1), 9, 2) == 0.25);
    REQUIRE(factor(FactorKind::V3, SmoothnessOrder(2), 9, 2) == 0.125);
}

TEST_CASE("sinc factors vanish exactly at multiples of N") {
    REQUIRE(factor(FactorKind::V1, SmoothnessOrder(2), 9, 9) == 0.0);
    REQUIRE(factor(FactorKind::V2, SmoothnessOrder(2), 9, 18) == 0.0);
    REQUIRE(factor(FactorKind::V3, SmoothnessOrder(2), 9, 9) != 0.0);
}

TEST_CASE("abs-sinc over power-law ratio is constant on each alias class") {
    // Brute-force ratio table for N=9, r=2, k=2: all indices congruent to
    // +-2 mod 9 share the ratio (N sin(pi k / N) / pi)^(1+r).
    const int node_count = 9;
    const SmoothnessOrder order(2);
    const double expected =
        std::pow(node_count * std::abs(std::sin(num::pi * 2.0 / node_count)) / num::pi,
                 3.0);
    for (long long j : {2LL, 7LL, 11LL, 16LL, 20LL}) {
        const double ratio = factor(FactorKind::V2, order, node_count, j) /
                             factor(FactorKind::V3, order, node_count, j);
        REQUIRE(ratio == Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("signed and abs sinc families coincide for odd order") {
    for (int r : {1, 3, 5}) {
        const SmoothnessOrder order(r);
        for (long long j = 1; j <= 500; ++j) {
            REQUIRE(factor(FactorKind::V1, order, 9, j) ==
                    factor(FactorKind::V2, order, 9, j));
        }
    }
}

TEST_CASE("abs of the signed family equals the abs family for every order") {
    for (int r = 1; r <= 6; ++r) {
        const SmoothnessOrder order(r);
        for (long long j = 1; j <= 500; ++j) {
            REQUIRE(std::abs(factor(FactorKind::V1, order, 11, j)) ==
                    factor(FactorKind::V2, order, 11, j));
        }
    }
}

TEST_CASE("signed family goes negative where the sinc lobe is negative") {
    // r=2 makes the exponent odd; j in (N, 2N) sits in the negative lobe.
    const double value = factor(FactorKind::V1, SmoothnessOrder(2), 9, 13);
    REQUIRE(value < 0.0);
}

TEST_CASE("decay order: j^(1+r) * factor stays bounded") {
    for (auto kind : {FactorKind::V1, FactorKind::V2, FactorKind::V3}) {
        for (int r : {1, 2, 4}) {
            const SmoothnessOrder order(r);
            const double envelope = std::pow(9.0 / num::pi, r + 1.0) + 1e-9;
            double worst = 0.0;
            for (long long j = 1; j <= 100'000; j = j < 100 ? j + 1 : j * 7 / 5) {
                const double scaled = std::pow(static_cast<double>(j), r + 1.0) *
                                      std::abs(factor(kind, order, 9, j));
                worst = std::max(worst, scaled);
            }
            REQUIRE(worst <= envelope);
        }
    }
}

TEST_CASE("factor index zero is rejected") {
    REQUIRE_THROWS_AS(factor(FactorKind::V3, SmoothnessOrder(1), 9, 0), DomainError);
    REQUIRE_THROWS_AS(factor(FactorKind::V1, SmoothnessOrder(1), 9, -4), DomainError);
}

TEST_CASE("factor matches a direct sinc evaluation at moderate indices") {
    for (long long j = 1; j <= 200; ++j) {
        const double direct = num::powi(num::sinc(num::pi * j / 9.0), 3);
        REQUIRE(factor(FactorKind::V1, SmoothnessOrder(2), 9, j) ==
                Catch::Approx(direct).margin(1e-13));
    }
}

TEST_CASE("factor table behaves exactly as standalone evaluation") {
    for (auto kind : {FactorKind::V1, FactorKind::V2, FactorKind::V3}) {
        const SmoothnessOrder order(3);
        const FactorTable table(kind, order, 9);
        for (long long j = 1; j <= 2000; ++j) {
            REQUIRE(table(j) == factor(kind, order, 9, j));
        }
    }
}

TEST_CASE("sinc helper") {
    REQUIRE(num::sinc(0.0) == 1.0);
    REQUIRE(num::sinc(1e-9) == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(num::sinc(num::pi) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(num::sinc(0.5) == Catch::Approx(std::sin(0.5) / 0.5).epsilon(1e-15));
}

TEST_CASE("smoothness order must be positive") {
    REQUIRE_THROWS_AS(SmoothnessOrder(0), DomainError);
    REQUIRE_THROWS_AS(SmoothnessOrder(-2), DomainError);
    REQUIRE(SmoothnessOrder(4).value() == 4);
}

TEST_CASE("factor kind names round trip") {
    for (auto kind : {FactorKind::V1, FactorKind::V2, FactorKind::V3}) {
        REQUIRE(parse_factor_kind(to_string(kind)) == kind);
    }
    REQUIRE(!parse_factor_kind("v4").has_value());
}
