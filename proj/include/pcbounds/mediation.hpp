#pragma once
// Probability-of-causation bounds when a mediator M is measured in the
// experiment but not for the individual case.
//
// Complete mediation: X -> M -> Y with no direct effect, Y(x) = Y*(M(x)).
// Partial mediation:  X -> M -> Y plus X -> Y,        Y(x) = Y*(x, M(x)).
//
// Both regimes keep the exposure/outcome lower bound and only tighten (or
// loosen) the upper bound.

#include <array>
#include <optional>

#include "pcbounds/core.hpp"
#include "pcbounds/simple.hpp"

namespace pcbounds {

struct CompleteMediationMargins {
    Probability a;  // P(M(0)=0)
    Probability b;  // P(M(1)=1)
    Probability c;  // P(Y*(0)=0)
    Probability d;  // P(Y*(1)=1)
};

// All fields are probabilities of the value 1.
struct PartialMediationMargins {
    Probability y00;  // P(Y*(0,0)=1)
    Probability y01;  // P(Y*(0,1)=1)
    Probability y10;  // P(Y*(1,0)=1)
    Probability y11;  // P(Y*(1,1)=1)
    Probability m0;   // P(M(0)=1)
    Probability m1;   // P(M(1)=1)

    // Index by (x, m) into y00..y11.
    Probability y(int x, int m) const noexcept;
};

// Listing in terms of the value 0, as experimental summaries are often
// reported. Converted explicitly so that complements never happen silently.
struct ZeroValueListing {
    double y00_is0;  // P(Y*(0,0)=0)
    double y01_is0;  // P(Y*(0,1)=0)
    double y10_is0;  // P(Y*(1,0)=0)
    double y11_is0;  // P(Y*(1,1)=0)
    double m0_is0;   // P(M(0)=0)
    double m1_is0;   // P(M(1)=0)
};

PartialMediationMargins from_zero_listing(const ZeroValueListing& z);

// ---- complete mediation ----------------------------------------------------

// Maximum of P(Y(0)=0, Y(1)=1) over couplings of (M(0),M(1)) and (Y*(0),Y*(1)).
// Ties a=b or c=d take the "<=" branch.
Probability complete_numerator(const CompleteMediationMargins& m) noexcept;

// Law of total probability through the mediator.
SimpleMargins derive_simple_from_complete(const CompleteMediationMargins& m);

BoundInterval complete_bounds(const CompleteMediationMargins& m);

// ---- partial mediation -----------------------------------------------------

// The four products min{P(Y*(0,m0)=0), P(Y*(1,m1)=1)} * min{P(M(0)=m0), P(M(1)=m1)}
// for (m0,m1) = (0,0), (0,1), (1,0), (1,1).
std::array<double, 4> partial_upper_terms(const PartialMediationMargins& m) noexcept;

Probability partial_upper_numerator(const PartialMediationMargins& m) noexcept;

SimpleMargins derive_simple_from_partial(const PartialMediationMargins& m);

BoundInterval partial_bounds(const PartialMediationMargins& m);

// ---- comparisons -----------------------------------------------------------

// The exposure/outcome numerator written through the mediator:
// min{alpha + beta, gamma + delta}, alpha + beta = P(Y(0)=0), gamma + delta = P(Y(1)=1).
struct Decomposition {
    double alpha = 0.0;  // P(Y*(0,0)=0) P(M(0)=0)
    double beta = 0.0;   // P(Y*(0,1)=0) P(M(0)=1)
    double gamma = 0.0;  // P(Y*(1,0)=1) P(M(1)=0)
    double delta = 0.0;  // P(Y*(1,1)=1) P(M(1)=1)
    double numerator = 0.0;
};

Decomposition simple_numerator_via_decomposition(const PartialMediationMargins& m) noexcept;

// Partial margins that encode complete mediation: Y*(0,m) = Y*(1,m).
PartialMediationMargins expand_complete(const CompleteMediationMargins& m) noexcept;

// Inverse of expand_complete; requires |y0m - y1m| <= tolerance for both m.
CompleteMediationMargins collapse_to_complete(const PartialMediationMargins& m,
                                              double tolerance = kStructTol);

struct ComparisonReport {
    BoundInterval simple_interval;
    BoundInterval partial_interval;
    std::optional<BoundInterval> complete_interval;
    BoundInterval combined_interval;
    Decomposition decomposition;
    double numerator_simple = 0.0;
    double numerator_partial = 0.0;
    // numerator_partial <= 2 * numerator_simple + kStructTol
    bool two_x_holds = true;
};

// Computes all available intervals and combines them by intersection.
// `complete_tolerance` applies to the Y*(0,m) = Y*(1,m) check when
// `complete_claim` is set.
ComparisonReport compare(const PartialMediationMargins& m, bool complete_claim,
                         double complete_tolerance = kStructTol);

}  // namespace pcbounds
