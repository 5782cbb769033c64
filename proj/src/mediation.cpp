#include "pcbounds/mediation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcbounds {

Probability PartialMediationMargins::y(int x, int m) const noexcept {
    if (x == 0) return m == 0 ? y00 : y01;
    return m == 0 ? y10 : y11;
}

PartialMediationMargins from_zero_listing(const ZeroValueListing& z) {
    return PartialMediationMargins{
        .y00 = Probability(z.y00_is0).complement(),
        .y01 = Probability(z.y01_is0).complement(),
        .y10 = Probability(z.y10_is0).complement(),
        .y11 = Probability(z.y11_is0).complement(),
        .m0 = Probability(z.m0_is0).complement(),
        .m1 = Probability(z.m1_is0).complement(),
    };
}

Probability complete_numerator(const CompleteMediationMargins& m) noexcept {
    const double a = m.a.value();
    const double b = m.b.value();
    const double c = m.c.value();
    const double d = m.d.value();
    double num = 0.0;
    if (a <= b) {
        num = c <= d ? a * c + (1.0 - d) * (1.0 - b) : a * d + (1.0 - c) * (1.0 - b);
    } else {
        num = c <= d ? b * c + (1.0 - d) * (1.0 - a) : b * d + (1.0 - a) * (1.0 - c);
    }
    return Probability(std::clamp(num, 0.0, 1.0));
}

SimpleMargins derive_simple_from_complete(const CompleteMediationMargins& m) {
    const double a = m.a.value();
    const double b = m.b.value();
    const double c = m.c.value();
    const double d = m.d.value();
    return SimpleMargins{
        .p1 = Probability(b * d + (1.0 - b) * (1.0 - c)),
        .p0 = Probability((1.0 - a) * d + a * (1.0 - c)),
    };
}

BoundInterval complete_bounds(const CompleteMediationMargins& m) {
    const SimpleMargins derived = derive_simple_from_complete(m);
    const BoundInterval simple = simple_bounds(derived);  // throws when p1 = 0
    const double upper = std::min(1.0, complete_numerator(m).value() / derived.p1.value());
    return interval(simple.lower(), Probability(upper));
}

std::array<double, 4> partial_upper_terms(const PartialMediationMargins& m) noexcept {
    const double q00 = 1.0 - m.y00.value();
    const double q01 = 1.0 - m.y01.value();
    const double y10 = m.y10.value();
    const double y11 = m.y11.value();
    const double m0 = m.m0.value();
    const double m1 = m.m1.value();
    return {
        std::min(q00, y10) * std::min(1.0 - m0, 1.0 - m1),
        std::min(q00, y11) * std::min(1.0 - m0, m1),
        std::min(q01, y10) * std::min(m0, 1.0 - m1),
        std::min(q01, y11) * std::min(m0, m1),
    };
}

Probability partial_upper_numerator(const PartialMediationMargins& m) noexcept {
    const auto t = partial_upper_terms(m);
    // Each term is bounded by alpha or beta, so the sum is at most 2.
    return Probability(std::min(1.0, t[0] + t[1] + t[2] + t[3]));
}

SimpleMargins derive_simple_from_partial(const PartialMediationMargins& m) {
    const double m0 = m.m0.value();
    const double m1 = m.m1.value();
    return SimpleMargins{
        .p1 = Probability(m.y10.value() * (1.0 - m1) + m.y11.value() * m1),
        .p0 = Probability(m.y00.value() * (1.0 - m0) + m.y01.value() * m0),
    };
}

BoundInterval partial_bounds(const PartialMediationMargins& m) {
    const SimpleMargins derived = derive_simple_from_partial(m);
    const BoundInterval simple = simple_bounds(derived);
    const auto t = partial_upper_terms(m);
    const double numerator = t[0] + t[1] + t[2] + t[3];
    const double upper = std::min(1.0, numerator / derived.p1.value());
    return interval(simple.lower(), Probability(upper));
}

Decomposition simple_numerator_via_decomposition(const PartialMediationMargins& m) noexcept {
    Decomposition d;
    d.alpha = (1.0 - m.y00.value()) * (1.0 - m.m0.value());
    d.beta = (1.0 - m.y01.value()) * m.m0.value();
    d.gamma = m.y10.value() * (1.0 - m.m1.value());
    d.delta = m.y11.value() * m.m1.value();
    d.numerator = std::min(d.alpha + d.beta, d.gamma + d.delta);
    return d;
}

PartialMediationMargins expand_complete(const CompleteMediationMargins& m) noexcept {
    const Probability y_given_m0 = m.c.complement();  // P(Y*(0)=1)
    return PartialMediationMargins{
        .y00 = y_given_m0,
        .y01 = m.d,
        .y10 = y_given_m0,
        .y11 = m.d,
        .m0 = m.a.complement(),
        .m1 = m.b,
    };
}

CompleteMediationMargins collapse_to_complete(const PartialMediationMargins& m, double tolerance) {
    for (int med = 0; med <= 1; ++med) {
        const double gap = std::abs(m.y(0, med).value() - m.y(1, med).value());
        if (gap > tolerance) {
            std::ostringstream msg;
            msg << "complete mediation requires Y*(0," << med << ") = Y*(1," << med
                << "), but P(Y*(0," << med << ")=1) = " << m.y(0, med).value() << " and P(Y*(1," << med
                << ")=1) = " << m.y(1, med).value() << " differ by " << gap << " > " << tolerance;
            throw Error(ErrorKind::AssumptionViolation, msg.str());
        }
    }
    return CompleteMediationMargins{
        .a = m.m0.complement(),
        .b = m.m1,
        .c = m.y00.complement(),
        .d = m.y11,
    };
}

ComparisonReport compare(const PartialMediationMargins& m, bool complete_claim, double complete_tolerance) {
    const SimpleMargins derived = derive_simple_from_partial(m);
    const BoundInterval simple = simple_bounds(derived);
    const BoundInterval partial = partial_bounds(m);

    std::optional<BoundInterval> complete;
    if (complete_claim) complete = complete_bounds(collapse_to_complete(m, complete_tolerance));

    double lower = std::max(simple.lower().value(), partial.lower().value());
    double upper = std::min(simple.upper().value(), partial.upper().value());
    if (complete) {
        lower = std::max(lower, complete->lower().value());
        upper = std::min(upper, complete->upper().value());
    }

    const Decomposition dec = simple_numerator_via_decomposition(m);
    const auto t = partial_upper_terms(m);
    const double numerator_partial = t[0] + t[1] + t[2] + t[3];

    return ComparisonReport{
        .simple_interval = simple,
        .partial_interval = partial,
        .complete_interval = complete,
        .combined_interval = interval(lower, upper),
        .decomposition = dec,
        .numerator_simple = dec.numerator,
        .numerator_partial = numerator_partial,
        .two_x_holds = numerator_partial <= 2.0 * dec.numerator + kStructTol,
    };
}

}  // namespace pcbounds
