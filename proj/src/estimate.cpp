#include "pcbounds/estimate.hpp"

#include <cmath>
#include <sstream>

namespace pcbounds {
namespace {

bool is_binary(int v) noexcept { return v == 0 || v == 1; }

std::string stratum_name(int x, int m) {
    return "(x=" + std::to_string(x) + ", m=" + std::to_string(m) + ")";
}

void require_arms(const StratumCounts& c) {
    for (int x = 0; x <= 1; ++x) {
        if (c.arm_total[x] == 0) {
            throw Error(ErrorKind::InsufficientData, "arm x=" + std::to_string(x) + " has no records");
        }
    }
}

void require_mediator(const StratumCounts& c) {
    if (!c.has_mediator) throw Error(ErrorKind::InvalidInput, "dataset has no mediator column");
}

}  // namespace

Dataset::Dataset(std::vector<TrialRecord> records, std::string source)
    : records_(std::move(records)), source_(std::move(source)) {
    if (records_.empty()) throw Error(ErrorKind::InvalidInput, "dataset is empty");
    has_mediator_ = records_.front().m.has_value();
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const TrialRecord& r = records_[i];
        if (r.m.has_value() != has_mediator_) {
            throw Error(ErrorKind::InvalidInput, "record " + std::to_string(i) + " disagrees on mediator presence");
        }
        if (!is_binary(r.x) || !is_binary(r.y) || (r.m && !is_binary(*r.m))) {
            throw Error(ErrorKind::InvalidInput, "record " + std::to_string(i) + " has a non-binary value");
        }
    }
}

StratumCounts count_strata(const Dataset& d) {
    StratumCounts c;
    c.has_mediator = d.has_mediator();
    for (const TrialRecord& r : d.records()) {
        ++c.arm_total[r.x];
        c.arm_events[r.x] += r.y;
        if (r.m) {
            ++c.total[r.x][*r.m];
            c.events[r.x][*r.m] += r.y;
        }
    }
    return c;
}

SimpleMargins estimate_simple(const StratumCounts& c) {
    require_arms(c);
    return SimpleMargins{
        .p1 = prob_from_counts(c.arm_events[1], c.arm_total[1]),
        .p0 = prob_from_counts(c.arm_events[0], c.arm_total[0]),
    };
}

SimpleMargins estimate_simple(const Dataset& d) { return estimate_simple(count_strata(d)); }

PartialMediationMargins estimate_partial(const StratumCounts& c) {
    require_mediator(c);
    require_arms(c);
    for (int x = 0; x <= 1; ++x) {
        for (int m = 0; m <= 1; ++m) {
            if (c.total[x][m] == 0) {
                throw Error(ErrorKind::InsufficientData,
                            "stratum " + stratum_name(x, m) + " has no records; P(Y=y | X<-" + std::to_string(x) +
                                ", M=" + std::to_string(m) + ") is not estimable");
            }
        }
    }
    auto rate = [&](int x, int m) { return prob_from_counts(c.events[x][m], c.total[x][m]); };
    return PartialMediationMargins{
        .y00 = rate(0, 0),
        .y01 = rate(0, 1),
        .y10 = rate(1, 0),
        .y11 = rate(1, 1),
        .m0 = prob_from_counts(c.total[0][1], c.arm_total[0]),
        .m1 = prob_from_counts(c.total[1][1], c.arm_total[1]),
    };
}

PartialMediationMargins estimate_partial(const Dataset& d) { return estimate_partial(count_strata(d)); }

CompleteEstimate estimate_complete(const StratumCounts& c, double report_tol) {
    require_mediator(c);
    require_arms(c);
    std::array<std::int64_t, 2> pooled_total{};
    std::array<std::int64_t, 2> pooled_events{};
    for (int m = 0; m <= 1; ++m) {
        pooled_total[m] = c.total[0][m] + c.total[1][m];
        pooled_events[m] = c.events[0][m] + c.events[1][m];
        if (pooled_total[m] == 0) {
            throw Error(ErrorKind::InsufficientData,
                        "mediator stratum m=" + std::to_string(m) + " has no records; P(Y | M<-" +
                            std::to_string(m) + ") is not estimable");
        }
    }

    CompleteEstimate out{
        .margins =
            CompleteMediationMargins{
                .a = prob_from_counts(c.total[0][0], c.arm_total[0]),
                .b = prob_from_counts(c.total[1][1], c.arm_total[1]),
                .c = prob_from_counts(pooled_total[0] - pooled_events[0], pooled_total[0]),
                .d = prob_from_counts(pooled_events[1], pooled_total[1]),
            },
        .warnings = {},
    };

    for (int m = 0; m <= 1; ++m) {
        if (c.total[0][m] == 0 || c.total[1][m] == 0) continue;
        const double r1 = static_cast<double>(c.events[1][m]) / static_cast<double>(c.total[1][m]);
        const double r0 = static_cast<double>(c.events[0][m]) / static_cast<double>(c.total[0][m]);
        const double se = std::sqrt(r1 * (1.0 - r1) / static_cast<double>(c.total[1][m]) +
                                    r0 * (1.0 - r0) / static_cast<double>(c.total[0][m]));
        const double gap = std::abs(r1 - r0);
        if (gap > report_tol + 3.0 * se) {
            std::ostringstream msg;
            msg.precision(4);
            msg << "Markov property Y independent of X given M looks violated in stratum m=" << m
                << ": P(Y=1|X=1,M=" << m << ")=" << r1 << " vs P(Y=1|X=0,M=" << m << ")=" << r0;
            out.warnings.push_back(msg.str());
        }
    }
    return out;
}

CompleteEstimate estimate_complete(const Dataset& d, double report_tol) {
    return estimate_complete(count_strata(d), report_tol);
}

SimpleMargins margins_from_count_table(const CountTable& t) {
    return SimpleMargins{
        .p1 = prob_from_counts(t.exposed_event, t.exposed_total),
        .p0 = prob_from_counts(t.unexposed_event, t.unexposed_total),
    };
}

}  // namespace pcbounds
