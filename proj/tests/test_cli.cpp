#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pcbounds/cli.hpp"
#include "pcbounds/io.hpp"

using namespace pcbounds;
using nlohmann::json;

namespace {

const std::string kData = PCB_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    const Result r = run(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("pcbounds_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simple --counts table1") {
    const json r = run_json({"simple", "--counts", kData + "/table1.json"});
    CHECK(r["method"] == "simple");
    CHECK(r["interval"]["lower"].get<double>() == doctest::Approx(0.60).epsilon(1e-12));
    CHECK(r["interval"]["upper"].get<double>() == 1.0);
    CHECK(r["derived"]["risk_ratio"].get<double>() == doctest::Approx(2.5));
    for (const char* key : {"method", "interval", "derived", "diagnostics", "assumptions", "inputs_echo"}) {
        CHECK(r.contains(key));
    }
    CHECK_FALSE(r["assumptions"].empty());

    const Result text = run({"simple", "--counts", kData + "/table1.json"});
    CHECK(text.code == 0);
    CHECK(text.out.find("[0.60, 1.00]") != std::string::npos);
}

TEST_CASE("flags may follow the subcommand") {
    const Result r = run({"simple", "--counts", kData + "/table1.json", "--json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["method"] == "simple");
}

TEST_CASE("compare example 2") {
    const json r = run_json({"compare", "--margins", kData + "/example2.json"});
    CHECK(std::abs(r["interval"]["lower"].get<double>() - 0.59) <= kReportTol);
    CHECK(std::abs(r["interval"]["upper"].get<double>() - 0.88) <= kReportTol);
    bool flagged = false;
    for (const auto& d : r["diagnostics"]) flagged |= d.get<std::string>() == "simple upper bound is smaller";
    CHECK(flagged);
    CHECK(r["details"]["complete_interval"].is_null());
}

TEST_CASE("partial with a cross-check count table") {
    const json ok = run_json({"partial", "--margins", kData + "/example1.json", "--counts", kData + "/table3.json"});
    CHECK(ok["diagnostics"][0].get<std::string>().find("consistent") != std::string::npos);
    const json bad = run_json({"partial", "--margins", kData + "/example1.json", "--counts", kData + "/table4.json"});
    CHECK(bad["diagnostics"][0].get<std::string>().find("disagree") != std::string::npos);
    // a looser tolerance accepts the mismatch
    const json loose = run_json({"--tol", "0.2", "partial", "--margins", kData + "/example1.json", "--counts",
                                 kData + "/table4.json"});
    CHECK(loose["diagnostics"][0].get<std::string>().find("consistent") != std::string::npos);
}

TEST_CASE("complete mediation from margins") {
    const json r = run_json({"complete", "--margins", kData + "/complete_example.json"});
    CHECK(r["details"]["numerator"].get<double>() == doctest::Approx(0.27));
    CHECK(r["derived"]["p1"].get<double>() == doctest::Approx(0.78));
}

TEST_CASE("JSON reports recompute bit-for-bit from their inputs echo") {
    const std::vector<std::vector<std::string>> cases = {
        {"simple", "--counts", kData + "/table1.json"},
        {"simple", "--margins", kData + "/example2.json"},
        {"partial", "--margins", kData + "/example1.json"},
        {"compare", "--margins", kData + "/example2.json"},
        {"complete", "--margins", kData + "/complete_example.json"},
    };
    for (const auto& args : cases) {
        const json r = run_json(args);
        const json reparsed = json::parse(r.dump());
        const json again = cli::recompute_interval(reparsed);
        CHECK(again["lower"].get<double>() == reparsed["interval"]["lower"].get<double>());
        CHECK(again["upper"].get<double>() == reparsed["interval"]["upper"].get<double>());
    }
}

TEST_CASE("numbers carry at most 12 significant digits") {
    CHECK(cli::round_sig12(0.8194743907896341) == 0.819474390790);
    CHECK(cli::round_sig12(1.0) == 1.0);
    CHECK(cli::round_sig12(0.0) == 0.0);
}

TEST_CASE("records through simulate and partial") {
    const auto csv = std::filesystem::temp_directory_path() / "pcbounds_test_sim.csv";
    const Result sim = run({"simulate", "--law", kData + "/example1.json", "--n", "20000", "--seed", "3", "--out",
                            csv.string()});
    REQUIRE(sim.code == 0);
    const json r = run_json({"partial", "--records", csv.string()});
    CHECK(std::abs(r["interval"]["lower"].get<double>() - 0.65) < 0.03);
    CHECK(r["inputs_echo"]["records"].get<int>() == 40000);
    bool tagged = false;
    for (const auto& a : r["assumptions"]) tagged |= a.get<std::string>() == "observed-mediator-strata";
    CHECK(tagged);
    const json again = cli::recompute_interval(r);
    CHECK(again == r["interval"]);
    std::filesystem::remove(csv);
}

TEST_CASE("verify exits 0 on the worked examples") {
    for (const char* file : {"/example1.json", "/example2.json", "/complete_example.json"}) {
        const Result r = run({"verify", "--margins", kData + file, "--samples", "300", "--seed", "1"});
        CHECK_MESSAGE(r.code == 0, (r.out + r.err));
    }
    const json j = run_json({"verify", "--margins", kData + "/example1.json", "--samples", "200", "--seed", "2",
                             "--confounded"});
    CHECK(j["details"]["passed"] == true);
    CHECK(j["details"].contains("confounding_probe"));
    const auto simple = temp_file("simple_margins.json", R"({"p1": 0.3, "p0": 0.12})");
    CHECK(run({"verify", "--margins", simple.string(), "--samples", "1000"}).code == 0);
}

TEST_CASE("exit codes") {
    const Result zero = run({"simple", "--counts", kData + "/zero_p1.json"});
    CHECK(zero.code == cli::kExitInestimable);
    CHECK(zero.err.find("pc-undefined") != std::string::npos);

    const auto empty_stratum = temp_file("empty_stratum.csv", "x,m,y\n0,0,1\n0,1,0\n1,0,1\n1,0,0\n");
    const Result es = run({"partial", "--records", empty_stratum.string()});
    CHECK(es.code == cli::kExitInestimable);
    CHECK(es.err.find("(x=1, m=1)") != std::string::npos);

    const auto bad_csv = temp_file("bad.csv", "x,m,y\n0,0,1\n0,7,0\n");
    const Result parse = run({"partial", "--records", bad_csv.string()});
    CHECK(parse.code == cli::kExitInvalid);
    CHECK(parse.err.find("line 3") != std::string::npos);

    CHECK(run({"compare", "--margins", kData + "/example1.json", "--complete"}).code == cli::kExitInvalid);
    CHECK(run({"simple"}).code == cli::kExitInvalid);
    CHECK(run({"nonsense"}).code == cli::kExitInvalid);
    CHECK(run({"partial", "--margins", kData + "/missing.json"}).code == cli::kExitInvalid);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("exit code mapping") {
    CHECK(cli::exit_code_for(ErrorKind::PcUndefined) == 2);
    CHECK(cli::exit_code_for(ErrorKind::InsufficientData) == 2);
    CHECK(cli::exit_code_for(ErrorKind::InvalidInput) == 1);
    CHECK(cli::exit_code_for(ErrorKind::InconsistentBounds) == 1);
}

}
