#pragma once
// Validated probability values, bound intervals and count tables.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcbounds {

// Tolerance for internal identities (margin consistency, normalization).
inline constexpr double kStructTol = 1e-9;
// Tolerance for matching values published at two decimals.
inline constexpr double kReportTol = 0.005;
// Float noise absorbed at the edges of [0,1] and on interval ordering.
inline constexpr double kClampTol = 1e-12;

enum class ErrorKind {
    InvalidInput,        // malformed or out-of-range input
    InconsistentBounds,  // lower > upper beyond tolerance
    PcUndefined,         // P(Y(1)=1) = 0, the conditioning event is null
    InsufficientData,    // an arm or stratum has no records
    AssumptionViolation, // e.g. complete mediation claimed but Y*(0,m) != Y*(1,m)
    GenerationFailure,   // law sampler could not fit the margins
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// A real number in [0,1]. Values within kClampTol outside the range are
// clamped; anything further out (or NaN) is rejected.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value);

    constexpr double value() const noexcept { return value_; }
    Probability complement() const noexcept { return Probability(1.0 - value_, Unchecked{}); }

    friend constexpr bool operator==(Probability, Probability) = default;
    friend constexpr auto operator<=>(Probability, Probability) = default;

private:
    struct Unchecked {};
    constexpr Probability(double v, Unchecked) noexcept : value_(v) {}

    double value_ = 0.0;
};

Probability operator*(Probability lhs, Probability rhs) noexcept;
Probability min(Probability lhs, Probability rhs) noexcept;
Probability max(Probability lhs, Probability rhs) noexcept;

// Clamp x into [0,1] if it lies within kClampTol of the range, else throw.
double clamp_unit(double x, const char* what = "probability");

class BoundInterval {
public:
    BoundInterval(Probability lower, Probability upper);

    Probability lower() const noexcept { return lower_; }
    Probability upper() const noexcept { return upper_; }
    double width() const noexcept { return upper_.value() - lower_.value(); }
    bool contains(double x, double tol = 0.0) const noexcept {
        return x >= lower_.value() - tol && x <= upper_.value() + tol;
    }

    friend bool operator==(const BoundInterval&, const BoundInterval&) = default;

private:
    Probability lower_;
    Probability upper_;
};

// Builds [lower, upper]; an ordering violation up to kClampTol is absorbed by
// collapsing to the midpoint, a larger one raises InconsistentBounds.
BoundInterval interval(Probability lower, Probability upper);
BoundInterval interval(double lower, double upper);

Probability prob_from_counts(std::int64_t events, std::int64_t total);

struct CountTable {
    std::int64_t exposed_event = 0;
    std::int64_t exposed_total = 0;
    std::int64_t unexposed_event = 0;
    std::int64_t unexposed_total = 0;

    // Throws InvalidInput unless totals are positive and events lie in [0, total].
    void validate() const;
};

}  // namespace pcbounds
