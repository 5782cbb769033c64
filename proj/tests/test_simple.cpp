#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "pcbounds/oracle.hpp"
#include "pcbounds/simple.hpp"
#include "support/test_helpers.hpp"

using namespace pcbounds;

namespace {
SimpleMargins sm(double p1, double p0) { return SimpleMargins{Probability(p1), Probability(p0)}; }
}

TEST_SUITE("simple") {

TEST_CASE("risk_ratio") {
    CHECK(*risk_ratio(sm(0.30, 0.12)) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(*risk_ratio(sm(0.5, 0.5)) == 1.0);
    CHECK(*risk_ratio(sm(0.3, 0.0)) == std::numeric_limits<double>::infinity());
    CHECK_FALSE(risk_ratio(sm(0.0, 0.0)).has_value());
}

TEST_CASE("simple_bounds examples") {
    const BoundInterval t1 = simple_bounds(sm(0.30, 0.12));
    CHECK(t1.lower().value() == doctest::Approx(0.60).epsilon(1e-12));
    CHECK(t1.upper().value() == 1.0);

    // rates rounded to two places: the upper bound is 0.68/0.78, not 0.88
    const BoundInterval t4 = simple_bounds(sm(0.78, 0.32));
    CHECK(std::abs(t4.lower().value() - 0.59) <= kReportTol);
    CHECK(t4.upper().value() == doctest::Approx(0.68 / 0.78).epsilon(1e-12));

    // the unrounded rates of the second mediation example give 0.88
    const BoundInterval ex2 = simple_bounds(sm(0.7768, 0.3176));
    CHECK(std::abs(ex2.lower().value() - 0.59) <= kReportTol);
    CHECK(std::abs(ex2.upper().value() - 0.88) <= kReportTol);

    const BoundInterval flat = simple_bounds(sm(0.5, 0.5));
    CHECK(flat.lower().value() == 0.0);
    CHECK(flat.upper().value() == 1.0);
}

TEST_CASE("p0 = 0 gives the point [1,1]") {
    const BoundInterval b = simple_bounds(sm(0.4, 0.0));
    CHECK(b.lower().value() == 1.0);
    CHECK(b.upper().value() == 1.0);
}

TEST_CASE("p1 = 0 is pc-undefined") {
    try {
        simple_bounds(sm(0.0, 0.2));
        FAIL("expected pc-undefined");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PcUndefined);
    }
}

TEST_CASE("vacuity conditions") {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 10000; ++i) {
        const SimpleMargins m = testing::random_simple(gen);
        const BoundInterval b = simple_bounds(m);
        if (m.p1 <= m.p0) REQUIRE(b.lower().value() == 0.0);
        if (m.p0.value() + m.p1.value() <= 1.0) REQUIRE(b.upper().value() == 1.0);
    }
}

TEST_CASE("monotone non-increasing in p0") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double p1 = 0.01 + 0.99 * u(gen);
        double prev_lo = 2.0, prev_hi = 2.0;
        for (int k = 0; k <= 50; ++k) {
            const BoundInterval b = simple_bounds(sm(p1, k / 50.0));
            REQUIRE(b.lower().value() <= prev_lo + 1e-15);
            REQUIRE(b.upper().value() <= prev_hi + 1e-15);
            prev_lo = b.lower().value();
            prev_hi = b.upper().value();
        }
    }
}

TEST_CASE("agrees with the coupling sweep") {
    std::mt19937_64 gen(13);
    for (int i = 0; i < 2000; ++i) {
        const SimpleMargins m = testing::random_simple(gen);
        const BoundInterval closed = simple_bounds(m);
        const BoundInterval swept = oracle::coupling_sweep_simple(m, 50);
        REQUIRE(std::abs(closed.lower().value() - swept.lower().value()) <= 1e-9);
        REQUIRE(std::abs(closed.upper().value() - swept.upper().value()) <= 1e-9);
    }
}

}
