#include <cmath>
#include <random>

#include "doctest.h"
#include "pcbounds/mediation.hpp"
#include "pcbounds/oracle.hpp"
#include "support/test_helpers.hpp"

using namespace pcbounds;
using namespace pcbounds::oracle;

namespace {

PartialMediationMargins pm(double y00, double y01, double y10, double y11, double m0, double m1) {
    return PartialMediationMargins{Probability(y00), Probability(y01), Probability(y10),
                                   Probability(y11), Probability(m0),  Probability(m1)};
}

PartialMediationMargins example1() { return from_zero_listing({0.98, 0.165, 0.315, 0.143, 0.73, 0.981}); }

double max_margin_gap(const PotentialOutcomeLaw& law, const PartialMediationMargins& m) {
    const auto got = law.margins();
    double gap = std::max(std::abs(got.m0.value() - m.m0.value()), std::abs(got.m1.value() - m.m1.value()));
    for (int x = 0; x < 2; ++x)
        for (int k = 0; k < 2; ++k) gap = std::max(gap, std::abs(got.y(x, k).value() - m.y(x, k).value()));
    return gap;
}

PotentialOutcomeLaw point_mass(unsigned m_cell, unsigned y_cell) {
    PotentialOutcomeLaw law;
    law.m_block[m_cell] = 1.0;
    law.y_block[y_cell] = 1.0;
    return law;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("frechet") {
    const BoundInterval a = frechet(Probability(0.7), Probability(0.6));
    CHECK(a.lower().value() == doctest::Approx(0.3));
    CHECK(a.upper().value() == doctest::Approx(0.6));
    const BoundInterval b = frechet(Probability(0.2), Probability(0.3));
    CHECK(b.lower().value() == 0.0);
    CHECK(b.upper().value() == doctest::Approx(0.2));
    for (double p : {0.0, 0.25, 1.0}) {
        const BoundInterval c = frechet(Probability(1.0), Probability(p));
        CHECK(c.lower().value() == doctest::Approx(p));
        CHECK(c.upper().value() == doctest::Approx(p));
    }
}

TEST_CASE("frechet endpoints are attained by explicit couplings") {
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const double pa = i / 10.0, pb = j / 10.0;
            const BoundInterval f = frechet(Probability(pa), Probability(pb));
            // comonotone: A and B nested; antitone: as disjoint as possible
            const Coupling2 co = coupling_with_joint(pa, pb, std::min(pa, pb));
            const Coupling2 anti = coupling_with_joint(pa, pb, std::max(0.0, pa + pb - 1.0));
            for (const Coupling2* c : {&co, &anti}) {
                REQUIRE(c->total() == doctest::Approx(1.0).epsilon(1e-12));
                REQUIRE(std::abs(c->margin_a() - pa) <= 1e-12);
                REQUIRE(std::abs(c->margin_b() - pb) <= 1e-12);
                REQUIRE(std::min({c->p11, c->p10, c->p01, c->p00}) >= 0.0);
            }
            REQUIRE(std::abs(co.p11 - f.upper().value()) <= 1e-12);
            REQUIRE(std::abs(anti.p11 - f.lower().value()) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(coupling_with_joint(0.2, 0.3, 0.25), Error);
}

TEST_CASE("coupling_sweep_simple examples") {
    const SimpleMargins t1{Probability(0.30), Probability(0.12)};
    const BoundInterval s1 = coupling_sweep_simple(t1, 1000);
    CHECK(std::abs(s1.lower().value() - 0.60) <= 1e-9);
    CHECK(std::abs(s1.upper().value() - 1.0) <= 1e-9);

    // q in [0.46, 0.68], divided by 0.78
    const SimpleMargins t4{Probability(0.78), Probability(0.32)};
    const BoundInterval s4 = coupling_sweep_simple(t4, 1000);
    CHECK(std::abs(s4.lower().value() - 0.46 / 0.78) <= 1e-6);
    CHECK(std::abs(s4.upper().value() - 0.68 / 0.78) <= 1e-6);
    CHECK(std::abs(s4.lower().value() - 0.5897) <= 1e-4);
    CHECK(std::abs(s4.upper().value() - 0.8718) <= 1e-4);

    const BoundInterval flat = coupling_sweep_simple(SimpleMargins{Probability(0.5), Probability(0.5)}, 10);
    CHECK(flat.lower().value() == 0.0);
    CHECK(flat.upper().value() == 1.0);

    CHECK_THROWS_AS(coupling_sweep_simple(SimpleMargins{Probability(0.0), Probability(0.5)}, 10), Error);
    CHECK_THROWS_AS(coupling_sweep_simple(t1, 1), Error);
}

TEST_CASE("complete_numerator_sweep matches the closed form") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const CompleteMediationMargins m{Probability(u(gen)), Probability(u(gen)), Probability(u(gen)),
                                         Probability(u(gen))};
        REQUIRE(complete_numerator_sweep(m, 10) == doctest::Approx(complete_numerator(m).value()).epsilon(1e-12));
    }
}

TEST_CASE("true_pc examples") {
    // M(0)=M(1)=0, Y*(0,0)=0, Y*(1,0)=1
    CHECK(true_pc(point_mass(0, 0b0100)).value() == 1.0);
    // Y*(x,m)=1 everywhere: Y(0)=1
    CHECK(true_pc(point_mass(0b10, 0b1111)).value() == 0.0);
    // everything independent with margins 1/2: 64-cell enumeration gives 1/2
    const PotentialOutcomeLaw half = independent_law(pm(0.5, 0.5, 0.5, 0.5, 0.5, 0.5));
    CHECK(true_pc(half).value() == doctest::Approx(0.5).epsilon(1e-15));
    // Y(1) never 1
    CHECK_THROWS_AS(true_pc(point_mass(0, 0)), Error);
}

TEST_CASE("independent law reproduces margins") {
    const auto m = example1();
    const PotentialOutcomeLaw law = independent_law(m);
    CHECK(max_margin_gap(law, m) <= 1e-12);
    CHECK_NOTHROW(law.validate());
}

TEST_CASE("IPF fits one-dimensional margins") {
    std::array<double, 8> cells{};
    cells.fill(1.0);
    cells[3] = 5.0;
    const std::array<double, 3> targets = {0.2, 0.7, 0.4};
    REQUIRE(fit_binary_margins(cells, targets));
    for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (unsigned i = 0; i < 8; ++i)
            if ((i >> k) & 1U) s += cells[i];
        CHECK(std::abs(s - targets[static_cast<std::size_t>(k)]) < kIpfTol);
    }
    std::array<double, 4> wrong{};
    CHECK_THROWS_AS(fit_binary_margins(wrong, targets), Error);
}

TEST_CASE("sample_laws reproduces margins and is deterministic") {
    std::mt19937_64 gen(42);
    for (int i = 0; i < 50; ++i) {
        const auto m = testing::random_partial(gen);
        const auto laws = sample_laws(m, 3, 99);
        for (const auto& law : laws) {
            REQUIRE(max_margin_gap(law, m) <= 1e-10);
            REQUIRE_NOTHROW(law.validate());
        }
        const auto again = sample_laws(m, 3, 99);
        for (std::size_t k = 0; k < laws.size(); ++k) {
            REQUIRE(laws[k].m_block == again[k].m_block);
            REQUIRE(laws[k].y_block == again[k].y_block);
        }
        const auto single = sample_law(m, 99, 2);
        REQUIRE(single.y_block == laws[2].y_block);
    }
    const auto other = sample_laws(example1(), 1, 100);
    CHECK(other[0].y_block != sample_laws(example1(), 1, 99)[0].y_block);
}

TEST_CASE("degenerate margins give the point-mass law") {
    const auto m = pm(1, 0, 0, 1, 0, 1);
    const auto law = sample_laws(m, 1, 5).front();
    // M(0)=0, M(1)=1 -> cell 0b10; Y*(0,0)=1, Y*(1,1)=1 -> cell 0b1001
    CHECK(law.m_block[0b10] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(law.y_block[0b1001] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complete-mediation laws keep Y*(0,m) = Y*(1,m) cellwise") {
    const CompleteMediationMargins m{Probability(0.7), Probability(0.6), Probability(0.4), Probability(0.9)};
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto law = sample_complete_law(m, 3, i);
        for (unsigned c = 0; c < 16; ++c) {
            const bool same = ((c & 1U) == ((c >> 2) & 1U)) && (((c >> 1) & 1U) == ((c >> 3) & 1U));
            if (!same) REQUIRE(law.y_block[c] == 0.0);
        }
        REQUIRE(true_numerator(law) <= complete_numerator(m).value() + 1e-12);
    }
}

TEST_CASE("verify_partial on the first worked example") {
    const auto r = verify_partial(example1(), 1000, 2024, 4);
    CHECK(r.passed());
    CHECK(r.laws_checked == 1000);
    CHECK(r.max_observed <= r.bounds.upper().value() + 1e-9);
    CHECK(r.upper_gap() >= -1e-9);
    // thread count does not change the outcome
    const auto serial = verify_partial(example1(), 1000, 2024, 1);
    CHECK(serial.max_observed == r.max_observed);
    CHECK(serial.min_observed == r.min_observed);
}

TEST_CASE("verify_complete") {
    const CompleteMediationMargins m{Probability(0.7), Probability(0.6), Probability(0.4), Probability(0.9)};
    const auto r = verify_complete(m, 500, 1, 2);
    CHECK(r.passed());
    CHECK(r.partial_envelope.has_value());
}

TEST_CASE("confounded mediator can break the bounds") {
    const auto m = example1();
    const auto law = sample_confounded_law(m, 8, 0);
    const auto seen = law.observed_margins();
    CHECK(std::abs(seen.m0.value() - m.m0.value()) <= 1e-10);
    CHECK(std::abs(seen.m1.value() - m.m1.value()) <= 1e-10);
    const ConfoundingReport r = probe_confounding(m, 500, 8);
    CHECK(r.laws_checked == 500);
    CHECK(r.outside_partial > 0);
}

TEST_CASE("simulate_trial") {
    const auto det = point_mass(0b10, 0b1001);  // M(x)=x, Y*(0,0)=1, Y*(1,1)=1
    const auto recs = simulate_trial(det, 50, 1);
    REQUIRE(recs.size() == 100);
    for (const auto& r : recs) {
        CHECK(r.m == r.x);
        CHECK(r.y == 1);
    }
    CHECK(simulate_trial(det, 1, 1).size() == 2);
    CHECK(simulate_trial(det, 10, 3) == simulate_trial(det, 10, 3));
}

TEST_CASE("simulate_trial rates converge") {
    const auto law = independent_law(example1());
    const std::int64_t n = 1'000'000;
    const auto recs = simulate_trial(law, n, 77);
    std::array<double, 2> y_rate{}, m_rate{};
    for (const auto& r : recs) {
        y_rate[r.x] += r.y;
        m_rate[r.x] += *r.m;
    }
    const SimpleMargins analytic = derive_simple_from_partial(example1());
    const double want_y[2] = {analytic.p0.value(), analytic.p1.value()};
    const double want_m[2] = {example1().m0.value(), example1().m1.value()};
    for (int x = 0; x < 2; ++x) {
        const double ey = y_rate[x] / n, em = m_rate[x] / n;
        CHECK(std::abs(ey - want_y[x]) < 4 * std::sqrt(want_y[x] * (1 - want_y[x]) / n));
        CHECK(std::abs(em - want_m[x]) < 4 * std::sqrt(want_m[x] * (1 - want_m[x]) / n));
    }
    CHECK(std::abs(y_rate[1] / n - 0.69) <= 0.002);
}

}
