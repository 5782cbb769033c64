#pragma once
// File formats.
//
//   Record CSV    header "x,m,y" or "x,y", one 0/1 row per unit.
//   Count JSON    {"exposed_event", "exposed_total", "unexposed_event", "unexposed_total"}
//   Margins JSON  exactly one of the key sets {p1,p0}, {a,b,c,d} or
//                 {y00,y01,y10,y11,m0,m1}; unknown keys are rejected.
//   Law JSON      {"m_block": [4], "y_block": [16]} in the cell layout of
//                 oracle.hpp, or a partial margins object, which stands for
//                 the law with all potential variables independent.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pcbounds/core.hpp"
#include "pcbounds/estimate.hpp"
#include "pcbounds/mediation.hpp"
#include "pcbounds/oracle.hpp"
#include "pcbounds/simple.hpp"

namespace pcbounds::io {

using AnyMargins = std::variant<SimpleMargins, CompleteMediationMargins, PartialMediationMargins>;

std::vector<TrialRecord> parse_records_csv(std::istream& in);
Dataset read_records_csv(const std::filesystem::path& path);
void write_records_csv(std::ostream& out, std::span<const TrialRecord> records);

nlohmann::json read_json_file(const std::filesystem::path& path);

CountTable parse_count_table(const nlohmann::json& j);
AnyMargins parse_margins(const nlohmann::json& j);
oracle::PotentialOutcomeLaw parse_law(const nlohmann::json& j);

nlohmann::json to_json(const SimpleMargins& m);
nlohmann::json to_json(const CompleteMediationMargins& m);
nlohmann::json to_json(const PartialMediationMargins& m);
nlohmann::json to_json(const CountTable& t);

}  // namespace pcbounds::io
