#pragma once
// Probability-of-causation bounds from exposure/outcome data alone.

#include <optional>

#include "pcbounds/core.hpp"

namespace pcbounds {

// Interventional outcome rates.
struct SimpleMargins {
    Probability p1;  // P(Y=1 | X<-1)
    Probability p0;  // P(Y=1 | X<-0)
};

// p1/p0. +infinity when p0 = 0 < p1; nullopt when both rates are zero.
std::optional<double> risk_ratio(const SimpleMargins& m) noexcept;

// Upper-bound numerator ignoring any mediator: min{P(Y=0|X<-0), P(Y=1|X<-1)}.
double simple_numerator(const SimpleMargins& m) noexcept;

// [max{0, 1 - 1/RR}, min{1-p0, p1}/p1]. Throws PcUndefined when p1 = 0.
BoundInterval simple_bounds(const SimpleMargins& m);

}  // namespace pcbounds
