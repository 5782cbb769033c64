#include "pcbounds/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "pcbounds/estimate.hpp"
#include "pcbounds/io.hpp"
#include "pcbounds/mediation.hpp"
#include "pcbounds/oracle.hpp"
#include "pcbounds/simple.hpp"

namespace pcbounds::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kSimpleAssumptions = {"exchangeability", "randomization"};
const std::vector<std::string> kMediationAssumptions = {"A1", "A2", "A3", "exchangeability", "randomization"};
// P(Y*(x,m)=y) read as P(Y=y | X<-x, M=m) from exposure-randomized data with
// the mediator observed rather than set.
const std::string kObservedMediatorTag = "observed-mediator-strata";

// ---- JSON helpers ----------------------------------------------------------

json num(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig12(x);
}

json interval_json(const BoundInterval& b) {
    return {{"lower", num(b.lower().value())}, {"upper", num(b.upper().value())}};
}

json derived_json(const SimpleMargins& m) {
    const auto rr = risk_ratio(m);
    return {{"p1", num(m.p1.value())}, {"p0", num(m.p0.value())}, {"risk_ratio", rr ? num(*rr) : json(nullptr)}};
}

StratumCounts strata_from_json(const json& j) {
    StratumCounts c;
    try {
        c.has_mediator = j.at("has_mediator").get<bool>();
        c.arm_total = j.at("arm_total").get<std::array<std::int64_t, 2>>();
        c.arm_events = j.at("arm_events").get<std::array<std::int64_t, 2>>();
        c.total = j.at("total").get<std::array<std::array<std::int64_t, 2>, 2>>();
        c.events = j.at("events").get<std::array<std::array<std::int64_t, 2>, 2>>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed strata echo: ") + e.what());
    }
    return c;
}

json strata_json(const StratumCounts& c) {
    return {{"has_mediator", c.has_mediator},
            {"arm_total", c.arm_total},
            {"arm_events", c.arm_events},
            {"total", c.total},
            {"events", c.events}};
}

// ---- computation from an inputs echo ---------------------------------------

struct Computed {
    std::optional<BoundInterval> interval;
    json derived = nullptr;
    std::vector<std::string> diagnostics;
    std::vector<std::string> assumptions;
    json extra = nullptr;  // method-specific block
};

std::string fmt2(double x) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << x;
    return out.str();
}

std::string fmt4(double x) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << x;
    return out.str();
}

void cross_check_counts(const json& echo, const SimpleMargins& derived, double tol, Computed& c) {
    if (!echo.contains("check_counts")) return;
    const SimpleMargins table = margins_from_count_table(io::parse_count_table(echo["check_counts"]));
    const double d1 = std::abs(derived.p1.value() - table.p1.value());
    const double d0 = std::abs(derived.p0.value() - table.p0.value());
    if (d1 > tol || d0 > tol) {
        c.diagnostics.push_back("derived rates (" + fmt4(derived.p1.value()) + ", " + fmt4(derived.p0.value()) +
                                ") disagree with the count table (" + fmt4(table.p1.value()) + ", " +
                                fmt4(table.p0.value()) + ") beyond tolerance " + fmt4(tol));
    } else {
        c.diagnostics.push_back("derived rates consistent with the count table within " + fmt4(tol));
    }
}

io::AnyMargins echo_margins(const json& echo) { return io::parse_margins(echo.at("margins")); }

const std::string& source_of(const json& echo) { return echo.at("source").get_ref<const std::string&>(); }

Computed compute_simple(const json& echo) {
    Computed c;
    c.assumptions = kSimpleAssumptions;
    SimpleMargins m;
    const std::string& source = source_of(echo);
    if (source == "counts") {
        m = margins_from_count_table(io::parse_count_table(echo.at("counts")));
    } else if (source == "records") {
        m = estimate_simple(strata_from_json(echo.at("strata")));
    } else {
        const io::AnyMargins any = echo_margins(echo);
        if (const auto* s = std::get_if<SimpleMargins>(&any)) {
            m = *s;
        } else if (const auto* cm = std::get_if<CompleteMediationMargins>(&any)) {
            m = derive_simple_from_complete(*cm);
            c.diagnostics.push_back("exposure/outcome rates derived from complete-mediation margins");
        } else {
            m = derive_simple_from_partial(std::get<PartialMediationMargins>(any));
            c.diagnostics.push_back("exposure/outcome rates derived from partial-mediation margins");
        }
    }
    c.derived = derived_json(m);
    c.interval = simple_bounds(m);
    if (m.p0 < m.p1 && m.p0.value() + m.p1.value() <= 1.0) {
        c.diagnostics.push_back("upper bound is vacuous: P(Y=1|X<-0) < P(Y=1|X<-1) <= P(Y=0|X<-0)");
    }
    return c;
}

Computed compute_complete(const json& echo) {
    Computed c;
    c.assumptions = kMediationAssumptions;
    c.assumptions.push_back("complete-mediation");
    const double tol = echo.at("report_tol").get<double>();
    CompleteMediationMargins m;
    if (source_of(echo) == "records") {
        CompleteEstimate est = estimate_complete(strata_from_json(echo.at("strata")), tol);
        m = est.margins;
        c.diagnostics = std::move(est.warnings);
        c.assumptions.push_back(kObservedMediatorTag);
    } else {
        const io::AnyMargins any = echo_margins(echo);
        if (const auto* cm = std::get_if<CompleteMediationMargins>(&any)) {
            m = *cm;
        } else if (const auto* pm = std::get_if<PartialMediationMargins>(&any)) {
            m = collapse_to_complete(*pm, kStructTol);
        } else {
            throw Error(ErrorKind::InvalidInput, "complete mediation needs {a,b,c,d} or partial-mediation margins");
        }
    }
    const SimpleMargins derived = derive_simple_from_complete(m);
    c.derived = derived_json(derived);
    c.interval = complete_bounds(m);
    cross_check_counts(echo, derived, tol, c);
    c.extra = {{"margins", {{"a", num(m.a.value())}, {"b", num(m.b.value())}, {"c", num(m.c.value())},
                            {"d", num(m.d.value())}}},
               {"numerator", num(complete_numerator(m).value())}};
    return c;
}

PartialMediationMargins partial_from_echo(const json& echo, Computed& c, bool* from_complete) {
    if (source_of(echo) == "records") {
        c.assumptions.push_back(kObservedMediatorTag);
        return estimate_partial(strata_from_json(echo.at("strata")));
    }
    const io::AnyMargins any = echo_margins(echo);
    if (const auto* pm = std::get_if<PartialMediationMargins>(&any)) return *pm;
    if (const auto* cm = std::get_if<CompleteMediationMargins>(&any)) {
        if (from_complete) *from_complete = true;
        return expand_complete(*cm);
    }
    throw Error(ErrorKind::InvalidInput, "mediation analysis needs partial-mediation or complete-mediation margins");
}

json margins_json_rounded(const PartialMediationMargins& m) {
    return {{"y00", num(m.y00.value())}, {"y01", num(m.y01.value())}, {"y10", num(m.y10.value())},
            {"y11", num(m.y11.value())}, {"m0", num(m.m0.value())},   {"m1", num(m.m1.value())}};
}

Computed compute_partial(const json& echo) {
    Computed c;
    c.assumptions = kMediationAssumptions;
    const double tol = echo.at("report_tol").get<double>();
    const PartialMediationMargins m = partial_from_echo(echo, c, nullptr);
    const SimpleMargins derived = derive_simple_from_partial(m);
    c.derived = derived_json(derived);
    c.interval = partial_bounds(m);
    cross_check_counts(echo, derived, tol, c);
    const auto t = partial_upper_terms(m);
    c.extra = {{"margins", margins_json_rounded(m)},
               {"terms", {num(t[0]), num(t[1]), num(t[2]), num(t[3])}},
               {"numerator", num(t[0] + t[1] + t[2] + t[3])}};
    return c;
}

Computed compute_compare(const json& echo) {
    Computed c;
    c.assumptions = kMediationAssumptions;
    const double tol = echo.at("report_tol").get<double>();
    bool from_complete = false;
    const PartialMediationMargins m = partial_from_echo(echo, c, &from_complete);
    const bool claim = echo.at("complete_claim").get<bool>() || from_complete;
    // Estimated margins carry sampling noise; analytic ones must match tightly.
    const double claim_tol = source_of(echo) == "records" ? tol : kStructTol;
    if (claim) c.assumptions.push_back("complete-mediation");

    const ComparisonReport r = compare(m, claim, claim_tol);
    const SimpleMargins derived = derive_simple_from_partial(m);
    c.derived = derived_json(derived);
    c.interval = r.combined_interval;
    cross_check_counts(echo, derived, tol, c);

    const double su = r.simple_interval.upper().value();
    const double pu = r.partial_interval.upper().value();
    if (su < pu) {
        c.diagnostics.push_back("simple upper bound is smaller");
    } else if (pu < su) {
        c.diagnostics.push_back("partial-mediation upper bound is smaller");
    } else {
        c.diagnostics.push_back("simple and partial-mediation upper bounds coincide");
    }
    if (r.complete_interval && r.complete_interval->upper().value() <= std::min(su, pu)) {
        c.diagnostics.push_back("complete-mediation upper bound is the smallest");
    }
    if (!r.two_x_holds) {
        c.diagnostics.push_back("partial numerator exceeds twice the simple numerator; inputs are inconsistent");
    }

    const Decomposition& d = r.decomposition;
    c.extra = {
        {"simple_interval", interval_json(r.simple_interval)},
        {"partial_interval", interval_json(r.partial_interval)},
        {"complete_interval", r.complete_interval ? interval_json(*r.complete_interval) : json(nullptr)},
        {"combined_interval", interval_json(r.combined_interval)},
        {"alpha", num(d.alpha)},
        {"beta", num(d.beta)},
        {"gamma", num(d.gamma)},
        {"delta", num(d.delta)},
        {"numerator_simple", num(r.numerator_simple)},
        {"numerator_partial", num(r.numerator_partial)},
        {"two_x_holds", r.two_x_holds},
    };
    return c;
}

Computed compute(const std::string& method, const json& echo) {
    try {
        if (method == "simple") return compute_simple(echo);
        if (method == "complete") return compute_complete(echo);
        if (method == "partial") return compute_partial(echo);
        if (method == "compare") return compute_compare(echo);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed inputs echo: ") + e.what());
    }
    throw Error(ErrorKind::InvalidInput, "cannot recompute method '" + method + "'");
}

// ---- output ----------------------------------------------------------------

json make_report(const std::string& method, const Computed& c, const json& echo) {
    json report = {
        {"method", method},
        {"interval", c.interval ? interval_json(*c.interval) : json(nullptr)},
        {"derived", c.derived},
        {"diagnostics", c.diagnostics},
        {"assumptions", c.assumptions},
        {"inputs_echo", echo},
    };
    if (!c.extra.is_null()) report["details"] = c.extra;
    return report;
}

std::string interval_text(const BoundInterval& b) {
    return "[" + fmt2(b.lower().value()) + ", " + fmt2(b.upper().value()) + "]";
}

std::string interval_text(const json& j) {
    if (j.is_null()) return "-";
    return "[" + fmt2(j["lower"].get<double>()) + ", " + fmt2(j["upper"].get<double>()) + "]";
}

void print_common(std::ostream& out, const std::string& title, const Computed& c) {
    out << title << "\n";
    if (c.interval) out << "  PC bounds:   " << interval_text(*c.interval) << "\n";
    if (!c.derived.is_null()) {
        out << "  P(Y=1|X<-1) = " << fmt4(c.derived["p1"].get<double>())
            << "   P(Y=1|X<-0) = " << fmt4(c.derived["p0"].get<double>()) << "   RR = ";
        const json& rr = c.derived["risk_ratio"];
        if (rr.is_null()) {
            out << "undefined";
        } else if (rr.is_string()) {
            out << rr.get<std::string>();
        } else {
            out << fmt4(rr.get<double>());
        }
        out << "\n";
    }
}

void print_tail(std::ostream& out, const Computed& c) {
    out << "  assumptions: ";
    for (std::size_t i = 0; i < c.assumptions.size(); ++i) out << (i ? ", " : "") << c.assumptions[i];
    out << "\n";
    for (const auto& d : c.diagnostics) out << "  note: " << d << "\n";
}

void print_human(std::ostream& out, const std::string& method, const Computed& c) {
    if (method == "simple") {
        print_common(out, "exposure/outcome analysis", c);
    } else if (method == "complete") {
        print_common(out, "complete mediation", c);
        out << "  upper-bound numerator = " << fmt4(c.extra["numerator"].get<double>()) << "\n";
    } else if (method == "partial") {
        print_common(out, "partial mediation", c);
        out << "  upper-bound numerator = " << fmt4(c.extra["numerator"].get<double>()) << " (terms";
        for (const auto& t : c.extra["terms"]) out << " " << fmt4(t.get<double>());
        out << ")\n";
    } else {
        print_common(out, "comparison", c);
        out << "  " << std::left << std::setw(10) << "regime" << "interval\n";
        out << "  " << std::setw(10) << "simple" << interval_text(c.extra["simple_interval"]) << "\n";
        out << "  " << std::setw(10) << "partial" << interval_text(c.extra["partial_interval"]) << "\n";
        out << "  " << std::setw(10) << "complete" << interval_text(c.extra["complete_interval"]) << "\n";
        out << "  " << std::setw(10) << "combined" << interval_text(c.extra["combined_interval"]) << "\n";
        out << std::right;
    }
    print_tail(out, c);
}

// ---- subcommand plumbing ---------------------------------------------------

struct Options {
    bool json_out = false;
    double tol = kReportTol;
    std::string counts;
    std::string margins;
    std::string records;
    bool complete_claim = false;
    long long samples = 1000;
    long long seed = 0;
    int threads = 0;
    bool confounded = false;
    std::string law;
    long long n = 0;
    std::string out_path;
};

json build_echo(const std::string& method, const Options& o) {
    const int given = !o.margins.empty() + !o.records.empty() + (method == "simple" && !o.counts.empty());
    if (given != 1) {
        const std::string choices = method == "simple" ? "--counts or --margins" : "--margins or --records";
        throw Error(ErrorKind::InvalidInput, method + " needs exactly one of " + choices);
    }
    json echo = {{"report_tol", o.tol}};
    if (!o.margins.empty()) {
        echo["source"] = "margins";
        echo["file"] = o.margins;
        echo["margins"] = io::read_json_file(o.margins);
        (void)io::parse_margins(echo["margins"]);
    } else if (!o.records.empty()) {
        const Dataset d = io::read_records_csv(o.records);
        echo["source"] = "records";
        echo["file"] = o.records;
        echo["records"] = d.records().size();
        echo["strata"] = strata_json(count_strata(d));
    } else {
        echo["source"] = "counts";
        echo["file"] = o.counts;
        echo["counts"] = io::to_json(io::parse_count_table(io::read_json_file(o.counts)));
    }
    if (method != "simple" && !o.counts.empty()) {
        echo["check_counts"] = io::to_json(io::parse_count_table(io::read_json_file(o.counts)));
    }
    if (method == "compare") echo["complete_claim"] = o.complete_claim;
    return echo;
}

int run_bounds(const std::string& method, const Options& o, std::ostream& out) {
    const json echo = build_echo(method, o);
    const Computed c = compute(method, echo);
    if (o.json_out) {
        out << make_report(method, c, echo).dump(2) << "\n";
    } else {
        print_human(out, method, c);
    }
    return kExitOk;
}

json soundness_json(const oracle::SoundnessReport& r) {
    return {
        {"passed", r.passed()},
        {"laws_checked", r.laws_checked},
        {"violations", r.violations},
        {"min_observed_pc", num(r.min_observed)},
        {"max_observed_pc", num(r.max_observed)},
        {"upper_gap_observed_not_proven", num(r.upper_gap())},
        {"lower_gap_observed_not_proven", num(r.lower_gap())},
        {"simple_interval", interval_json(r.simple)},
        {"partial_interval", r.partial_envelope ? interval_json(*r.partial_envelope) : json(nullptr)},
    };
}

int run_verify(const Options& o, std::ostream& out) {
    if (o.margins.empty()) throw Error(ErrorKind::InvalidInput, "verify needs --margins");
    if (o.samples < 1) throw Error(ErrorKind::InvalidInput, "--samples must be positive");
    const json raw = io::read_json_file(o.margins);
    const io::AnyMargins any = io::parse_margins(raw);
    const auto seed = static_cast<std::uint64_t>(o.seed);
    const int samples = static_cast<int>(std::min<long long>(o.samples, std::numeric_limits<int>::max()));
    const int threads = o.threads > 0 ? o.threads : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));

    Computed c;
    bool passed = true;
    json verification;
    std::string regime;

    if (const auto* s = std::get_if<SimpleMargins>(&any)) {
        regime = "simple";
        c.assumptions = kSimpleAssumptions;
        const BoundInterval analytic = simple_bounds(*s);
        const BoundInterval swept = oracle::coupling_sweep_simple(*s, std::max(2, samples));
        const double dl = std::abs(analytic.lower().value() - swept.lower().value());
        const double du = std::abs(analytic.upper().value() - swept.upper().value());
        passed = dl <= kStructTol && du <= kStructTol;
        c.interval = analytic;
        c.derived = derived_json(*s);
        if (!passed) c.diagnostics.push_back("coupling sweep disagrees with the closed-form bounds");
        verification = {{"passed", passed}, {"sweep_interval", interval_json(swept)}, {"steps", std::max(2, samples)}};
    } else {
        oracle::SoundnessReport r;
        PartialMediationMargins partial;
        if (const auto* cm = std::get_if<CompleteMediationMargins>(&any)) {
            regime = "complete";
            c.assumptions = kMediationAssumptions;
            c.assumptions.push_back("complete-mediation");
            r = oracle::verify_complete(*cm, samples, seed, threads);
            partial = expand_complete(*cm);
        } else {
            regime = "partial";
            c.assumptions = kMediationAssumptions;
            partial = std::get<PartialMediationMargins>(any);
            r = oracle::verify_partial(partial, samples, seed, threads);
        }
        passed = r.passed();
        c.interval = r.bounds;
        c.derived = derived_json(derive_simple_from_partial(partial));
        c.diagnostics = r.violation_details;
        c.diagnostics.push_back("tightness gap to the upper bound is " + fmt4(r.upper_gap()) +
                                " (observed, not proven)");
        verification = soundness_json(r);
        if (o.confounded) {
            const oracle::ConfoundingReport cr = oracle::probe_confounding(partial, samples, seed);
            verification["confounding_probe"] = {
                {"laws_checked", cr.laws_checked},
                {"outside_partial", cr.outside_partial},
                {"outside_simple", cr.outside_simple},
                {"max_excess", num(cr.max_excess)},
            };
            c.diagnostics.push_back("confounded-mediator probe (diagnostic only): " + std::to_string(cr.outside_partial) +
                                    " of " + std::to_string(cr.laws_checked) +
                                    " laws fall outside the partial-mediation interval");
        }
    }
    verification["regime"] = regime;

    const json echo = {{"source", "margins"}, {"file", o.margins}, {"margins", raw},
                       {"samples", o.samples}, {"seed", o.seed}};
    if (o.json_out) {
        json report = make_report("verify", c, echo);
        report["details"] = verification;
        out << report.dump(2) << "\n";
    } else {
        print_common(out, "verification (" + regime + ")", c);
        out << "  result:      " << (passed ? "PASS" : "FAIL") << "\n";
        if (verification.contains("laws_checked")) {
            out << "  laws:        " << verification["laws_checked"] << " checked, " << verification["violations"]
                << " violations\n";
            out << "  observed PC: [" << fmt4(verification["min_observed_pc"].get<double>()) << ", "
                << fmt4(verification["max_observed_pc"].get<double>()) << "]\n";
        }
        print_tail(out, c);
    }
    return passed ? kExitOk : kExitVerificationFailed;
}

int run_simulate(const Options& o, std::ostream& out) {
    if (o.law.empty() || o.out_path.empty()) throw Error(ErrorKind::InvalidInput, "simulate needs --law and --out");
    if (o.n < 1) throw Error(ErrorKind::InvalidInput, "--n must be positive");
    const oracle::PotentialOutcomeLaw law = io::parse_law(io::read_json_file(o.law));
    const auto records = oracle::simulate_trial(law, o.n, static_cast<std::uint64_t>(o.seed));
    std::ofstream file(o.out_path);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + o.out_path);
    io::write_records_csv(file, records);
    if (!file) throw Error(ErrorKind::InvalidInput, "failed writing " + o.out_path);
    if (o.json_out) {
        const json report = {{"method", "simulate"}, {"records", records.size()}, {"out", o.out_path},
                             {"inputs_echo", {{"law", o.law}, {"n_per_arm", o.n}, {"seed", o.seed}}}};
        out << report.dump(2) << "\n";
    } else {
        out << "wrote " << records.size() << " records (" << o.n << " per arm) to " << o.out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::PcUndefined:
        case ErrorKind::InsufficientData:
            return kExitInestimable;
        case ErrorKind::InvalidInput:
        case ErrorKind::InconsistentBounds:
        case ErrorKind::AssumptionViolation:
        case ErrorKind::GenerationFailure:
            return kExitInvalid;
    }
    return kExitInvalid;
}

double round_sig12(double x) noexcept {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json recompute_interval(const json& report) {
    const std::string method = report.at("method").get<std::string>();
    const Computed c = compute(method, report.at("inputs_echo"));
    return c.interval ? interval_json(*c.interval) : json(nullptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on the probability of causation from experimental data", "pcbounds"};
    app.fallthrough();
    app.require_subcommand(1);

    Options o;
    app.add_flag("--json", o.json_out, "Emit the report as JSON");
    app.add_option("--tol", o.tol, "Tolerance for consistency checks against reported rates")
        ->check(CLI::NonNegativeNumber);

    auto add_inputs = [&](CLI::App* sub, bool counts_primary) {
        sub->add_option("--margins", o.margins, "Margins JSON file");
        if (counts_primary) {
            sub->add_option("--counts", o.counts, "Count table JSON file");
        } else {
            sub->add_option("--records", o.records, "Record CSV file (x,m,y)");
            sub->add_option("--counts", o.counts, "Count table to cross-check the derived rates against");
        }
    };

    auto* simple = app.add_subcommand("simple", "Bounds from exposure/outcome data only");
    simple->add_option("--records", o.records, "Record CSV file (x,y or x,m,y)");
    add_inputs(simple, true);
    auto* complete = app.add_subcommand("complete", "Bounds under complete mediation");
    add_inputs(complete, false);
    auto* partial = app.add_subcommand("partial", "Bounds under partial mediation");
    add_inputs(partial, false);
    auto* cmp = app.add_subcommand("compare", "Compare simple, partial and complete-mediation bounds");
    add_inputs(cmp, false);
    cmp->add_flag("--complete", o.complete_claim, "Also apply complete mediation (requires Y*(0,m) = Y*(1,m))");

    auto* verify = app.add_subcommand("verify", "Check closed-form bounds against sampled potential-outcome laws");
    verify->add_option("--margins", o.margins, "Margins JSON file")->required();
    verify->add_option("--samples", o.samples, "Number of laws (sweep steps for simple margins)");
    verify->add_option("--seed", o.seed, "Random seed");
    verify->add_option("--threads", o.threads, "Worker threads (default: hardware concurrency)");
    verify->add_flag("--confounded", o.confounded, "Also probe laws with a confounded mediator (diagnostic)");

    auto* simulate = app.add_subcommand("simulate", "Simulate a randomized trial from a potential-outcome law");
    simulate->add_option("--law", o.law, "Law JSON file")->required();
    simulate->add_option("--n", o.n, "Individuals per arm")->required();
    simulate->add_option("--seed", o.seed, "Random seed");
    simulate->add_option("--out", o.out_path, "Output record CSV")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (simple->parsed()) return run_bounds("simple", o, out);
        if (complete->parsed()) return run_bounds("complete", o, out);
        if (partial->parsed()) return run_bounds("partial", o, out);
        if (cmp->parsed()) return run_bounds("compare", o, out);
        if (verify->parsed()) return run_verify(o, out);
        if (simulate->parsed()) return run_simulate(o, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace pcbounds::cli
