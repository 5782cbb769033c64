#pragma once
// Brute-force verification: explicit joint laws over the potential outcomes,
// the exact probability of causation they imply, and soundness checks of the
// closed-form bounds against them.
//
// Cell layout
//   m_block index = M(0) | M(1) << 1
//   y_block index = Y*(0,0) | Y*(0,1) << 1 | Y*(1,0) << 2 | Y*(1,1) << 3
// i.e. Y*(x,m) lives in bit 2x+m.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcbounds/core.hpp"
#include "pcbounds/mediation.hpp"
#include "pcbounds/record.hpp"
#include "pcbounds/simple.hpp"

namespace pcbounds::oracle {

// Joint law of two binary variables A and B.
struct Coupling2 {
    double p11 = 0.0;  // A and B
    double p10 = 0.0;  // A, not B
    double p01 = 0.0;  // B, not A
    double p00 = 0.0;

    double margin_a() const noexcept { return p11 + p10; }
    double margin_b() const noexcept { return p11 + p01; }
    double total() const noexcept { return p11 + p10 + p01 + p00; }
};

// Coupling of Bernoulli(pA) and Bernoulli(pB) with P(A and B) = joint.
// Throws InvalidInput if `joint` lies outside the Frechet range.
Coupling2 coupling_with_joint(double pA, double pB, double joint);

// [max{pA+pB-1, 0}, min{pA, pB}]
BoundInterval frechet(Probability pA, Probability pB);

// Sweeps the single free cell P(Y(0)=0, Y(1)=1) across its feasible range in
// `steps` equal increments (both ends included) and returns the range of PC.
BoundInterval coupling_sweep_simple(const SimpleMargins& m, int steps);

// Sweeps P(M=(0,1)) and P(Y*=(0,1)) on a (steps+1)^2 grid and returns the
// largest P(Y(0)=0, Y(1)=1) under complete mediation.
double complete_numerator_sweep(const CompleteMediationMargins& m, int steps);

struct PotentialOutcomeLaw {
    std::array<double, 4> m_block{};
    std::array<double, 16> y_block{};

    // P(M(x)=1)
    double m_margin(int x) const noexcept;
    // P(Y*(x,m)=1)
    double y_margin(int x, int m) const noexcept;
    PartialMediationMargins margins() const;
    // Throws InvalidInput unless each block is nonnegative and sums to 1.
    void validate() const;
};

// Law with all six potential variables mutually independent.
PotentialOutcomeLaw independent_law(const PartialMediationMargins& m);

// Exact P(Y(0)=0 | Y(1)=1) by enumerating the 64 joint cells.
Probability true_pc(const PotentialOutcomeLaw& law);
// P(Y(0)=0, Y(1)=1) and P(Y(1)=1) under the law.
double true_numerator(const PotentialOutcomeLaw& law) noexcept;
double true_p1(const PotentialOutcomeLaw& law) noexcept;

inline constexpr double kIpfTol = 1e-12;
inline constexpr int kIpfMaxRounds = 10000;
inline constexpr int kMaxResamples = 100;

// Fits positive cell weights to one-dimensional margins by iterative
// proportional fitting. `targets[k]` is P(bit k = 1). Returns false when the
// largest margin error is still >= kIpfTol after kIpfMaxRounds.
bool fit_binary_margins(std::span<double> cells, std::span<const double> targets);

// Law i of the sequence sample_laws(m, n, seed) without generating the others.
PotentialOutcomeLaw sample_law(const PartialMediationMargins& m, std::uint64_t seed, std::uint64_t index);

// n random laws reproducing m: a flat Dirichlet draw per block, then IPF.
std::vector<PotentialOutcomeLaw> sample_laws(const PartialMediationMargins& m, int n, std::uint64_t seed);

// Like sample_law, but Y*(0,m) = Y*(1,m) holds on every cell.
PotentialOutcomeLaw sample_complete_law(const CompleteMediationMargins& m, std::uint64_t seed,
                                        std::uint64_t index);

// A law in which the mediator block of the exposed differs from that of the
// unexposed, breaking M(x) independent of X.
struct ConfoundedLaw {
    std::array<std::array<double, 4>, 2> m_block_by_arm{};
    std::array<double, 16> y_block{};

    // Margins an experiment would report: M(x) read from arm x.
    PartialMediationMargins observed_margins() const;
    // PC for an exposed individual, using the exposed arm's mediator block.
    Probability pc_given_exposed() const;
};

ConfoundedLaw sample_confounded_law(const PartialMediationMargins& m, std::uint64_t seed, std::uint64_t index);

// n_per_arm individuals per arm drawn from the law; arm 0 first.
std::vector<TrialRecord> simulate_trial(const PotentialOutcomeLaw& law, std::int64_t n_per_arm, std::uint64_t seed);

enum class Regime { Partial, Complete };

struct SoundnessReport {
    Regime regime = Regime::Partial;
    std::int64_t laws_checked = 0;
    std::int64_t violations = 0;
    std::vector<std::string> violation_details;  // first few only
    BoundInterval bounds{Probability(0.0), Probability(1.0)};
    BoundInterval simple{Probability(0.0), Probability(1.0)};
    // Complete regime only: the partial-mediation interval of the same margins.
    std::optional<BoundInterval> partial_envelope;
    double min_observed = 1.0;
    double max_observed = 0.0;

    bool passed() const noexcept { return violations == 0; }
    // Observed, not proven: distance from the largest sampled PC to the upper bound.
    double upper_gap() const noexcept { return bounds.upper().value() - max_observed; }
    double lower_gap() const noexcept { return min_observed - bounds.lower().value(); }
};

// Samples n laws (in parallel over `threads` workers) and checks that every
// true PC lies in the partial and simple intervals within `tol`, and that each
// law reproduces the margins within 1e-10. Results do not depend on `threads`.
SoundnessReport verify_partial(const PartialMediationMargins& m, int n, std::uint64_t seed, int threads = 1,
                               double tol = kStructTol);

// As verify_partial, with laws restricted to complete mediation; also checks
// the complete-mediation interval.
SoundnessReport verify_complete(const CompleteMediationMargins& m, int n, std::uint64_t seed, int threads = 1,
                                double tol = kStructTol);

struct ConfoundingReport {
    std::int64_t laws_checked = 0;
    std::int64_t outside_partial = 0;
    std::int64_t outside_simple = 0;
    double max_excess = 0.0;  // largest distance of a PC outside the partial interval
};

// Diagnostic only: how often bounds computed from observed margins miss the PC
// of an exposed individual when the mediator is confounded with exposure.
ConfoundingReport probe_confounding(const PartialMediationMargins& m, int n, std::uint64_t seed);

}  // namespace pcbounds::oracle
