#include "pcbounds/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

namespace pcbounds::io {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": " + what);
}

std::set<std::string> keys_of(const json& j) {
    std::set<std::string> keys;
    for (const auto& item : j.items()) keys.insert(item.key());
    return keys;
}

double probability_field(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw Error(ErrorKind::InvalidInput, std::string("field '") + key + "' must be a number");
    const double x = v.get<double>();
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "field '" << key << "' = " << x << " is not a probability";
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    return x;
}

std::int64_t integer_field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw Error(ErrorKind::InvalidInput, std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

const std::set<std::string> kSimpleKeys = {"p1", "p0"};
const std::set<std::string> kCompleteKeys = {"a", "b", "c", "d"};
const std::set<std::string> kPartialKeys = {"y00", "y01", "y10", "y11", "m0", "m1"};
const std::set<std::string> kCountKeys = {"exposed_event", "exposed_total", "unexposed_event", "unexposed_total"};
const std::set<std::string> kLawKeys = {"m_block", "y_block"};

void require_object(const json& j, const char* what) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a JSON object");
}

std::string join(const std::set<std::string>& keys) {
    std::string out;
    for (const auto& k : keys) out += (out.empty() ? "" : ",") + k;
    return out;
}

template <std::size_t N>
std::array<double, N> block_field(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != N) {
        throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!v[i].is_number()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' holds a non-number");
        out[i] = v[i].get<double>();
    }
    return out;
}

}  // namespace

std::vector<TrialRecord> parse_records_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool with_mediator = false;
    bool have_header = false;
    std::vector<TrialRecord> records;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);

        if (!have_header) {
            if (fields == std::vector<std::string>{"x", "m", "y"}) {
                with_mediator = true;
            } else if (fields != std::vector<std::string>{"x", "y"}) {
                parse_fail(line_no, "expected header 'x,m,y' or 'x,y', got '" + trim(line) + "'");
            }
            have_header = true;
            continue;
        }

        const std::size_t expected = with_mediator ? 3 : 2;
        if (fields.size() != expected) {
            parse_fail(line_no, "expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
        }
        std::array<int, 3> v{};
        for (std::size_t k = 0; k < expected; ++k) {
            if (fields[k] == "0") {
                v[k] = 0;
            } else if (fields[k] == "1") {
                v[k] = 1;
            } else {
                parse_fail(line_no, "token '" + fields[k] + "' is not 0 or 1");
            }
        }
        if (with_mediator) {
            records.push_back(TrialRecord{.x = v[0], .m = v[1], .y = v[2]});
        } else {
            records.push_back(TrialRecord{.x = v[0], .m = std::nullopt, .y = v[1]});
        }
    }
    if (!have_header) throw Error(ErrorKind::InvalidInput, "record file has no header");
    return records;
}

Dataset read_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
    return Dataset(parse_records_csv(in), path.string());
}

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records) {
    const bool with_mediator = !records.empty() && records.front().m.has_value();
    out << (with_mediator ? "x,m,y\n" : "x,y\n");
    std::string buffer;
    buffer.reserve(records.size() * 6);
    for (const TrialRecord& r : records) {
        buffer += static_cast<char>('0' + r.x);
        buffer += ',';
        if (with_mediator) {
            buffer += static_cast<char>('0' + r.m.value_or(0));
            buffer += ',';
        }
        buffer += static_cast<char>('0' + r.y);
        buffer += '\n';
    }
    out << buffer;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
    }
}

CountTable parse_count_table(const json& j) {
    require_object(j, "count table");
    for (const auto& k : keys_of(j)) {
        if (!kCountKeys.contains(k)) throw Error(ErrorKind::InvalidInput, "unknown count-table field '" + k + "'");
    }
    CountTable t{
        .exposed_event = integer_field(j, "exposed_event"),
        .exposed_total = integer_field(j, "exposed_total"),
        .unexposed_event = integer_field(j, "unexposed_event"),
        .unexposed_total = integer_field(j, "unexposed_total"),
    };
    t.validate();
    return t;
}

AnyMargins parse_margins(const json& j) {
    require_object(j, "margins");
    const auto keys = keys_of(j);
    if (keys == kSimpleKeys) {
        return SimpleMargins{.p1 = Probability(probability_field(j, "p1")),
                             .p0 = Probability(probability_field(j, "p0"))};
    }
    if (keys == kCompleteKeys) {
        return CompleteMediationMargins{
            .a = Probability(probability_field(j, "a")),
            .b = Probability(probability_field(j, "b")),
            .c = Probability(probability_field(j, "c")),
            .d = Probability(probability_field(j, "d")),
        };
    }
    if (keys == kPartialKeys) {
        return PartialMediationMargins{
            .y00 = Probability(probability_field(j, "y00")),
            .y01 = Probability(probability_field(j, "y01")),
            .y10 = Probability(probability_field(j, "y10")),
            .y11 = Probability(probability_field(j, "y11")),
            .m0 = Probability(probability_field(j, "m0")),
            .m1 = Probability(probability_field(j, "m1")),
        };
    }
    for (const auto* known : {&kSimpleKeys, &kCompleteKeys, &kPartialKeys}) {
        if (std::includes(known->begin(), known->end(), keys.begin(), keys.end())) {
            std::set<std::string> missing;
            std::set_difference(known->begin(), known->end(), keys.begin(), keys.end(),
                                std::inserter(missing, missing.end()));
            throw Error(ErrorKind::InvalidInput, "margins object is missing field(s) " + join(missing));
        }
    }
    throw Error(ErrorKind::InvalidInput, "margins object has fields {" + join(keys) +
                                             "}; expected {p1,p0}, {a,b,c,d} or {y00,y01,y10,y11,m0,m1}");
}

oracle::PotentialOutcomeLaw parse_law(const json& j) {
    require_object(j, "law");
    if (keys_of(j) == kLawKeys) {
        oracle::PotentialOutcomeLaw law{block_field<4>(j, "m_block"), block_field<16>(j, "y_block")};
        law.validate();
        return law;
    }
    const AnyMargins margins = parse_margins(j);
    if (const auto* partial = std::get_if<PartialMediationMargins>(&margins)) return oracle::independent_law(*partial);
    throw Error(ErrorKind::InvalidInput, "law file must hold m_block/y_block or partial-mediation margins");
}

nlohmann::json to_json(const SimpleMargins& m) { return {{"p1", m.p1.value()}, {"p0", m.p0.value()}}; }

nlohmann::json to_json(const CompleteMediationMargins& m) {
    return {{"a", m.a.value()}, {"b", m.b.value()}, {"c", m.c.value()}, {"d", m.d.value()}};
}

nlohmann::json to_json(const PartialMediationMargins& m) {
    return {{"y00", m.y00.value()}, {"y01", m.y01.value()}, {"y10", m.y10.value()},
            {"y11", m.y11.value()}, {"m0", m.m0.value()},   {"m1", m.m1.value()}};
}

nlohmann::json to_json(const CountTable& t) {
    return {{"exposed_event", t.exposed_event},
            {"exposed_total", t.exposed_total},
            {"unexposed_event", t.unexposed_event},
            {"unexposed_total", t.unexposed_total}};
}

}  // namespace pcbounds::io
