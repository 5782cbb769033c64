#include "pcbounds/simple.hpp"

#include <algorithm>
#include <limits>

namespace pcbounds {

std::optional<double> risk_ratio(const SimpleMargins& m) noexcept {
    const double p1 = m.p1.value();
    const double p0 = m.p0.value();
    if (p0 == 0.0) {
        if (p1 == 0.0) return std::nullopt;
        return std::numeric_limits<double>::infinity();
    }
    return p1 / p0;
}

double simple_numerator(const SimpleMargins& m) noexcept {
    return std::min(1.0 - m.p0.value(), m.p1.value());
}

BoundInterval simple_bounds(const SimpleMargins& m) {
    const double p1 = m.p1.value();
    const double p0 = m.p0.value();
    if (p1 == 0.0) {
        throw Error(ErrorKind::PcUndefined, "P(Y=1 | X<-1) is zero; the probability of causation is undefined");
    }
    // 1 - 1/RR written as 1 - p0/p1 so that p0 = 0 gives the limit 1.
    const double lower = std::max(0.0, 1.0 - p0 / p1);
    const double upper = std::min(1.0, simple_numerator(m) / p1);
    return interval(lower, upper);
}

}  // namespace pcbounds
