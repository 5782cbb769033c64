#pragma once
// Command-line front end.
//
// Exit codes: 0 success, 1 invalid input, 2 inestimable (PC undefined or
// insufficient data), 3 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "pcbounds/core.hpp"

namespace pcbounds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInestimable = 2;
inline constexpr int kExitVerificationFailed = 3;

int exit_code_for(ErrorKind kind) noexcept;

// Round to 12 significant digits, the precision of every computed number in
// a JSON report.
double round_sig12(double x) noexcept;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Recompute a report's interval from its inputs_echo (methods simple,
// complete, partial and compare), rounded as the report rounds it.
nlohmann::json recompute_interval(const nlohmann::json& report);

}  // namespace pcbounds::cli
