#include "pcbounds/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcbounds {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InconsistentBounds: return "inconsistent-bounds";
        case ErrorKind::PcUndefined: return "pc-undefined";
        case ErrorKind::InsufficientData: return "insufficient-data";
        case ErrorKind::AssumptionViolation: return "assumption-violation";
        case ErrorKind::GenerationFailure: return "generation-failure";
    }
    return "unknown";
}

double clamp_unit(double x, const char* what) {
    if (std::isnan(x) || x < -kClampTol || x > 1.0 + kClampTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " " << x << " lies outside [0,1]";
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    return std::clamp(x, 0.0, 1.0);
}

Probability::Probability(double value) : value_(clamp_unit(value)) {}

Probability operator*(Probability lhs, Probability rhs) noexcept {
    // Product of two values in [0,1] stays in [0,1].
    return Probability(lhs.value() * rhs.value());
}

Probability min(Probability lhs, Probability rhs) noexcept { return lhs <= rhs ? lhs : rhs; }
Probability max(Probability lhs, Probability rhs) noexcept { return lhs >= rhs ? lhs : rhs; }

BoundInterval::BoundInterval(Probability lower, Probability upper) : lower_(lower), upper_(upper) {
    if (lower.value() > upper.value() + kClampTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "lower bound " << lower.value() << " exceeds upper bound " << upper.value();
        throw Error(ErrorKind::InconsistentBounds, msg.str());
    }
    if (lower_ > upper_) {
        const Probability mid((lower.value() + upper.value()) / 2.0);
        lower_ = mid;
        upper_ = mid;
    }
}

BoundInterval interval(Probability lower, Probability upper) { return BoundInterval(lower, upper); }

BoundInterval interval(double lower, double upper) {
    return BoundInterval(Probability(lower), Probability(upper));
}

Probability prob_from_counts(std::int64_t events, std::int64_t total) {
    if (total <= 0) {
        throw Error(ErrorKind::InvalidInput, "count total must be positive, got " + std::to_string(total));
    }
    if (events < 0 || events > total) {
        throw Error(ErrorKind::InvalidInput, "event count " + std::to_string(events) +
                                                 " outside [0, " + std::to_string(total) + "]");
    }
    return Probability(static_cast<double>(events) / static_cast<double>(total));
}

void CountTable::validate() const {
    (void)prob_from_counts(exposed_event, exposed_total);
    (void)prob_from_counts(unexposed_event, unexposed_total);
}

}  // namespace pcbounds
