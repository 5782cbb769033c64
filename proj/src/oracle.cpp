#include "pcbounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "pcbounds/rng.hpp"

namespace pcbounds::oracle {
namespace {

constexpr double kMarginRoundTrip = 1e-10;
constexpr std::size_t kMaxDetails = 10;

int bit(unsigned index, int k) noexcept { return static_cast<int>((index >> k) & 1U); }

template <std::size_t N>
void dirichlet_flat(std::array<double, N>& cells, CounterRng& rng) {
    for (double& c : cells) c = rng.exponential();
}

template <std::size_t N>
void fit_or_throw(std::array<double, N>& cells, std::span<const double> targets, CounterRng& rng,
                  const char* block) {
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
        dirichlet_flat(cells, rng);
        if (fit_binary_margins(cells, targets)) return;
    }
    throw Error(ErrorKind::GenerationFailure, std::string("IPF did not converge for the ") + block +
                                                  " block after " + std::to_string(kMaxResamples) +
                                                  " resamples");
}

double numerator_for(const std::array<double, 4>& m_block, const std::array<double, 16>& y_block,
                     double* p1_out) noexcept {
    double numerator = 0.0;
    double p1 = 0.0;
    for (unsigned mi = 0; mi < 4; ++mi) {
        const int m_at0 = bit(mi, 0);
        const int m_at1 = bit(mi, 1);
        for (unsigned yi = 0; yi < 16; ++yi) {
            const double w = m_block[mi] * y_block[yi];
            const int y_at0 = bit(yi, m_at0);      // Y(0) = Y*(0, M(0))
            const int y_at1 = bit(yi, 2 + m_at1);  // Y(1) = Y*(1, M(1))
            if (y_at1 == 1) {
                p1 += w;
                if (y_at0 == 0) numerator += w;
            }
        }
    }
    if (p1_out) *p1_out = p1;
    return numerator;
}

Probability pc_from_blocks(const std::array<double, 4>& m_block, const std::array<double, 16>& y_block) {
    double p1 = 0.0;
    const double numerator = numerator_for(m_block, y_block, &p1);
    if (p1 <= 0.0) {
        throw Error(ErrorKind::PcUndefined, "P(Y(1)=1) is zero under the law; the probability of causation is undefined");
    }
    return Probability(std::min(1.0, numerator / p1));
}

std::size_t draw_cell(std::span<const double> weights, double u) noexcept {
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = i;
        acc += weights[i];
        if (u < acc) return i;
    }
    return last_positive;
}

std::string describe_violation(std::uint64_t index, const char* which, double pc, const BoundInterval& b) {
    std::ostringstream out;
    out.precision(12);
    out << "law " << index << ": true PC " << pc << " outside " << which << " interval [" << b.lower().value()
        << ", " << b.upper().value() << "]";
    return out.str();
}

// Per-law outcome, filled by workers and reduced serially in index order.
struct LawCheck {
    double pc = 0.0;
    double margin_error = 0.0;
};

template <typename MakeLaw>
std::vector<LawCheck> run_parallel(int n, int threads, MakeLaw make_law) {
    std::vector<LawCheck> out(static_cast<std::size_t>(n));
    const int workers = std::clamp(threads, 1, std::max(1, n));
    auto work = [&](int w) {
        for (int i = w; i < n; i += workers) out[static_cast<std::size_t>(i)] = make_law(static_cast<std::uint64_t>(i));
    };
    if (workers == 1) {
        work(0);
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    pool.clear();  // joins
    return out;
}

double max_margin_error(const PartialMediationMargins& got, const PartialMediationMargins& want) noexcept {
    double err = 0.0;
    for (int x = 0; x <= 1; ++x) {
        for (int m = 0; m <= 1; ++m) err = std::max(err, std::abs(got.y(x, m).value() - want.y(x, m).value()));
    }
    err = std::max(err, std::abs(got.m0.value() - want.m0.value()));
    err = std::max(err, std::abs(got.m1.value() - want.m1.value()));
    return err;
}

void reduce(SoundnessReport& report, const std::vector<LawCheck>& checks, double tol) {
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const LawCheck& c = checks[i];
        ++report.laws_checked;
        report.min_observed = std::min(report.min_observed, c.pc);
        report.max_observed = std::max(report.max_observed, c.pc);

        auto flag = [&](std::string detail) {
            ++report.violations;
            if (report.violation_details.size() < kMaxDetails) report.violation_details.push_back(std::move(detail));
        };
        if (c.margin_error > kMarginRoundTrip) {
            std::ostringstream out;
            out << "law " << i << ": margins off by " << c.margin_error;
            flag(out.str());
        }
        if (!report.bounds.contains(c.pc, tol)) {
            flag(describe_violation(i, report.regime == Regime::Complete ? "complete-mediation" : "partial-mediation",
                                    c.pc, report.bounds));
        }
        if (report.partial_envelope && !report.partial_envelope->contains(c.pc, tol)) {
            flag(describe_violation(i, "partial-mediation", c.pc, *report.partial_envelope));
        }
        if (!report.simple.contains(c.pc, tol)) flag(describe_violation(i, "simple", c.pc, report.simple));
    }
}

}  // namespace

Coupling2 coupling_with_joint(double pA, double pB, double joint) {
    Coupling2 c{.p11 = joint, .p10 = pA - joint, .p01 = pB - joint, .p00 = 1.0 - pA - pB + joint};
    for (double* cell : {&c.p11, &c.p10, &c.p01, &c.p00}) {
        if (*cell < -kClampTol) {
            std::ostringstream msg;
            msg << "joint probability " << joint << " infeasible for margins " << pA << ", " << pB;
            throw Error(ErrorKind::InvalidInput, msg.str());
        }
        *cell = std::max(0.0, *cell);
    }
    return c;
}

BoundInterval frechet(Probability pA, Probability pB) {
    const double a = pA.value();
    const double b = pB.value();
    return interval(std::max(a + b - 1.0, 0.0), std::min(a, b));
}

BoundInterval coupling_sweep_simple(const SimpleMargins& m, int steps) {
    if (steps < 2) throw Error(ErrorKind::InvalidInput, "coupling sweep needs at least 2 steps");
    const double p1 = m.p1.value();
    if (p1 == 0.0) {
        throw Error(ErrorKind::PcUndefined, "P(Y=1 | X<-1) is zero; the probability of causation is undefined");
    }
    // A = {Y(0)=0}, B = {Y(1)=1}; the joint cell is the PC numerator.
    const double pA = 1.0 - m.p0.value();
    const BoundInterval range = frechet(Probability(pA), m.p1);
    const double lo = range.lower().value();
    const double hi = range.upper().value();

    double pc_min = 1.0;
    double pc_max = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double q = i == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / steps;
        const Coupling2 c = coupling_with_joint(pA, p1, q);
        const double pc = c.p11 / c.margin_b();
        pc_min = std::min(pc_min, pc);
        pc_max = std::max(pc_max, pc);
    }
    return interval(std::min(pc_min, 1.0), std::min(pc_max, 1.0));
}

double complete_numerator_sweep(const CompleteMediationMargins& m, int steps) {
    if (steps < 1) throw Error(ErrorKind::InvalidInput, "sweep needs at least 1 step");
    // Mediator pair: A = {M(0)=0}, B = {M(1)=1}. Response pair: A = {Y*(0)=0}, B = {Y*(1)=1}.
    const BoundInterval mr = frechet(m.a, m.b);
    const BoundInterval yr = frechet(m.c, m.d);
    auto at = [steps](const BoundInterval& r, int i) {
        return i == steps ? r.upper().value()
                          : r.lower().value() + r.width() * static_cast<double>(i) / steps;
    };
    double best = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const Coupling2 mc = coupling_with_joint(m.a.value(), m.b.value(), at(mr, i));
        for (int j = 0; j <= steps; ++j) {
            const Coupling2 yc = coupling_with_joint(m.c.value(), m.d.value(), at(yr, j));
            // (M(0),M(1)) = (0,1) needs (Y*(0),Y*(1)) = (0,1); (1,0) needs (1,0).
            best = std::max(best, mc.p11 * yc.p11 + mc.p00 * yc.p00);
        }
    }
    return best;
}

double PotentialOutcomeLaw::m_margin(int x) const noexcept {
    double s = 0.0;
    for (unsigned i = 0; i < 4; ++i) {
        if (bit(i, x)) s += m_block[i];
    }
    return s;
}

double PotentialOutcomeLaw::y_margin(int x, int m) const noexcept {
    double s = 0.0;
    for (unsigned i = 0; i < 16; ++i) {
        if (bit(i, 2 * x + m)) s += y_block[i];
    }
    return s;
}

PartialMediationMargins PotentialOutcomeLaw::margins() const {
    return PartialMediationMargins{
        .y00 = Probability(y_margin(0, 0)),
        .y01 = Probability(y_margin(0, 1)),
        .y10 = Probability(y_margin(1, 0)),
        .y11 = Probability(y_margin(1, 1)),
        .m0 = Probability(m_margin(0)),
        .m1 = Probability(m_margin(1)),
    };
}

void PotentialOutcomeLaw::validate() const {
    auto check = [](std::span<const double> block, const char* name) {
        double total = 0.0;
        for (double c : block) {
            if (!(c >= 0.0)) throw Error(ErrorKind::InvalidInput, std::string(name) + " has a negative or NaN cell");
            total += c;
        }
        if (std::abs(total - 1.0) > kStructTol) {
            std::ostringstream msg;
            msg << name << " sums to " << total << ", not 1";
            throw Error(ErrorKind::InvalidInput, msg.str());
        }
    };
    check(m_block, "m_block");
    check(y_block, "y_block");
}

PotentialOutcomeLaw independent_law(const PartialMediationMargins& m) {
    PotentialOutcomeLaw law;
    const double mp[2] = {m.m0.value(), m.m1.value()};
    for (unsigned i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int k = 0; k < 2; ++k) w *= bit(i, k) ? mp[k] : 1.0 - mp[k];
        law.m_block[i] = w;
    }
    const double yp[4] = {m.y00.value(), m.y01.value(), m.y10.value(), m.y11.value()};
    for (unsigned i = 0; i < 16; ++i) {
        double w = 1.0;
        for (int k = 0; k < 4; ++k) w *= bit(i, k) ? yp[k] : 1.0 - yp[k];
        law.y_block[i] = w;
    }
    return law;
}

double true_numerator(const PotentialOutcomeLaw& law) noexcept {
    return numerator_for(law.m_block, law.y_block, nullptr);
}

double true_p1(const PotentialOutcomeLaw& law) noexcept {
    double p1 = 0.0;
    numerator_for(law.m_block, law.y_block, &p1);
    return p1;
}

Probability true_pc(const PotentialOutcomeLaw& law) { return pc_from_blocks(law.m_block, law.y_block); }

bool fit_binary_margins(std::span<double> cells, std::span<const double> targets) {
    const std::size_t k = targets.size();
    if (cells.size() != (std::size_t{1} << k)) {
        throw Error(ErrorKind::InvalidInput, "cell count does not match the number of binary margins");
    }
    double total = 0.0;
    for (double c : cells) total += c;
    if (!(total > 0.0)) return false;
    for (double& c : cells) c /= total;

    auto margin = [&](std::size_t v) {
        double s = 0.0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if ((i >> v) & 1U) s += cells[i];
        }
        return s;
    };

    for (int round = 0; round < kIpfMaxRounds; ++round) {
        double worst = 0.0;
        for (std::size_t v = 0; v < k; ++v) worst = std::max(worst, std::abs(margin(v) - targets[v]));
        if (worst < kIpfTol) return true;

        for (std::size_t v = 0; v < k; ++v) {
            const double ones = margin(v);
            const double zeros = 1.0 - ones;
            const double t = targets[v];
            if ((ones <= 0.0 && t > 0.0) || (zeros <= 0.0 && t < 1.0)) return false;
            const double up = ones > 0.0 ? t / ones : 0.0;
            const double down = zeros > 0.0 ? (1.0 - t) / zeros : 0.0;
            for (std::size_t i = 0; i < cells.size(); ++i) cells[i] *= ((i >> v) & 1U) ? up : down;
        }
    }
    return false;
}

PotentialOutcomeLaw sample_law(const PartialMediationMargins& m, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    PotentialOutcomeLaw law;
    const std::array<double, 2> m_targets = {m.m0.value(), m.m1.value()};
    const std::array<double, 4> y_targets = {m.y00.value(), m.y01.value(), m.y10.value(), m.y11.value()};
    fit_or_throw(law.m_block, m_targets, rng, "mediator");
    fit_or_throw(law.y_block, y_targets, rng, "response");
    return law;
}

std::vector<PotentialOutcomeLaw> sample_laws(const PartialMediationMargins& m, int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "number of laws must be positive");
    std::vector<PotentialOutcomeLaw> laws;
    laws.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) laws.push_back(sample_law(m, seed, static_cast<std::uint64_t>(i)));
    return laws;
}

PotentialOutcomeLaw sample_complete_law(const CompleteMediationMargins& m, std::uint64_t seed,
                                        std::uint64_t index) {
    CounterRng rng(seed, index);
    PotentialOutcomeLaw law;
    const std::array<double, 2> m_targets = {m.a.complement().value(), m.b.value()};
    fit_or_throw(law.m_block, m_targets, rng, "mediator");

    // (Y*(0), Y*(1)) block, embedded so that Y*(x,m) = Y*(m) for both x.
    std::array<double, 4> response{};
    const std::array<double, 2> y_targets = {m.c.complement().value(), m.d.value()};
    fit_or_throw(response, y_targets, rng, "response");
    for (unsigned r = 0; r < 4; ++r) {
        const unsigned y_m0 = r & 1U;
        const unsigned y_m1 = (r >> 1) & 1U;
        law.y_block[y_m0 | (y_m1 << 1) | (y_m0 << 2) | (y_m1 << 3)] = response[r];
    }
    return law;
}

PartialMediationMargins ConfoundedLaw::observed_margins() const {
    PotentialOutcomeLaw unexposed{m_block_by_arm[0], y_block};
    PotentialOutcomeLaw exposed{m_block_by_arm[1], y_block};
    PartialMediationMargins out = exposed.margins();
    out.m0 = Probability(unexposed.m_margin(0));
    return out;
}

Probability ConfoundedLaw::pc_given_exposed() const { return pc_from_blocks(m_block_by_arm[1], y_block); }

ConfoundedLaw sample_confounded_law(const PartialMediationMargins& m, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    ConfoundedLaw law;
    // Each arm reproduces only the mediator margin the experiment observes in
    // it; the counterfactual margin is drawn freely.
    const std::array<double, 2> unexposed_targets = {m.m0.value(), rng.uniform()};
    const std::array<double, 2> exposed_targets = {rng.uniform(), m.m1.value()};
    fit_or_throw(law.m_block_by_arm[0], unexposed_targets, rng, "mediator");
    fit_or_throw(law.m_block_by_arm[1], exposed_targets, rng, "mediator");
    const std::array<double, 4> y_targets = {m.y00.value(), m.y01.value(), m.y10.value(), m.y11.value()};
    fit_or_throw(law.y_block, y_targets, rng, "response");
    return law;
}

std::vector<TrialRecord> simulate_trial(const PotentialOutcomeLaw& law, std::int64_t n_per_arm, std::uint64_t seed) {
    if (n_per_arm < 1) throw Error(ErrorKind::InvalidInput, "n_per_arm must be positive");
    law.validate();
    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(2 * n_per_arm));
    for (int x = 0; x <= 1; ++x) {
        CounterRng rng(seed, static_cast<std::uint64_t>(x));
        for (std::int64_t i = 0; i < n_per_arm; ++i) {
            const auto mi = static_cast<unsigned>(draw_cell(law.m_block, rng.uniform()));
            const auto yi = static_cast<unsigned>(draw_cell(law.y_block, rng.uniform()));
            const int m = bit(mi, x);
            records.push_back(TrialRecord{.x = x, .m = m, .y = bit(yi, 2 * x + m)});
        }
    }
    return records;
}

SoundnessReport verify_partial(const PartialMediationMargins& m, int n, std::uint64_t seed, int threads,
                               double tol) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "number of laws must be positive");
    SoundnessReport report{
        .regime = Regime::Partial,
        .bounds = partial_bounds(m),
        .simple = simple_bounds(derive_simple_from_partial(m)),
    };
    const auto checks = run_parallel(n, threads, [&](std::uint64_t i) {
        const PotentialOutcomeLaw law = sample_law(m, seed, i);
        return LawCheck{.pc = true_pc(law).value(), .margin_error = max_margin_error(law.margins(), m)};
    });
    reduce(report, checks, tol);
    return report;
}

SoundnessReport verify_complete(const CompleteMediationMargins& m, int n, std::uint64_t seed, int threads,
                                double tol) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "number of laws must be positive");
    const PartialMediationMargins expanded = expand_complete(m);
    SoundnessReport report{
        .regime = Regime::Complete,
        .bounds = complete_bounds(m),
        .simple = simple_bounds(derive_simple_from_complete(m)),
        .partial_envelope = partial_bounds(expanded),
    };
    const auto checks = run_parallel(n, threads, [&](std::uint64_t i) {
        const PotentialOutcomeLaw law = sample_complete_law(m, seed, i);
        return LawCheck{.pc = true_pc(law).value(), .margin_error = max_margin_error(law.margins(), expanded)};
    });
    reduce(report, checks, tol);
    return report;
}

ConfoundingReport probe_confounding(const PartialMediationMargins& m, int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "number of laws must be positive");
    const BoundInterval partial = partial_bounds(m);
    const BoundInterval simple = simple_bounds(derive_simple_from_partial(m));
    ConfoundingReport report;
    for (int i = 0; i < n; ++i) {
        const ConfoundedLaw law = sample_confounded_law(m, seed, static_cast<std::uint64_t>(i));
        const double pc = law.pc_given_exposed().value();
        ++report.laws_checked;
        if (!partial.contains(pc, kStructTol)) {
            ++report.outside_partial;
            const double excess = std::max(partial.lower().value() - pc, pc - partial.upper().value());
            report.max_excess = std::max(report.max_excess, excess);
        }
        if (!simple.contains(pc, kStructTol)) ++report.outside_simple;
    }
    return report;
}

}  // namespace pcbounds::oracle
