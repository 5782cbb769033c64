#pragma once
// Margin estimation from randomized-exposure data.
//
// Under no confounding of X-Y, X-M and M-Y the potential-outcome margins are
// read off the experiment as conditional frequencies:
//   P(Y*(x,m)=y) = P(Y=y | X<-x, M=m),   P(M(x)=m) = P(M=m | X<-x).
// Empirical fractions are used as-is; an empty stratum is an error.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pcbounds/core.hpp"
#include "pcbounds/mediation.hpp"
#include "pcbounds/record.hpp"
#include "pcbounds/simple.hpp"

namespace pcbounds {

class Dataset {
public:
    // Throws InvalidInput when empty, when any value is not binary, or when the
    // mediator is present on some records but not others.
    Dataset(std::vector<TrialRecord> records, std::string source = {});

    const std::vector<TrialRecord>& records() const noexcept { return records_; }
    const std::string& source() const noexcept { return source_; }
    bool has_mediator() const noexcept { return has_mediator_; }

private:
    std::vector<TrialRecord> records_;
    std::string source_;
    bool has_mediator_ = false;
};

// Sufficient statistics of a dataset. Indexing is [x][m]; for datasets without
// a mediator only the arm totals are filled.
struct StratumCounts {
    std::array<std::int64_t, 2> arm_total{};
    std::array<std::int64_t, 2> arm_events{};                // y = 1
    std::array<std::array<std::int64_t, 2>, 2> total{};      // records with (x, m)
    std::array<std::array<std::int64_t, 2>, 2> events{};     // of which y = 1
    bool has_mediator = false;
};

StratumCounts count_strata(const Dataset& d);

SimpleMargins estimate_simple(const Dataset& d);
SimpleMargins estimate_simple(const StratumCounts& c);

PartialMediationMargins estimate_partial(const Dataset& d);
PartialMediationMargins estimate_partial(const StratumCounts& c);

struct CompleteEstimate {
    CompleteMediationMargins margins;
    // Markov-property warnings: Y depends on X within a mediator stratum.
    std::vector<std::string> warnings;
};

// c and d pool both arms within each mediator stratum. A stratum whose
// arm-specific outcome rates differ by more than report_tol + 3 standard
// errors is reported as a warning.
CompleteEstimate estimate_complete(const Dataset& d, double report_tol = kReportTol);
CompleteEstimate estimate_complete(const StratumCounts& c, double report_tol = kReportTol);

SimpleMargins margins_from_count_table(const CountTable& t);

}  // namespace pcbounds
