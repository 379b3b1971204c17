#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cleconn {

inline constexpr const char* kVersion = "0.1.0";

struct ResultValue {
    std::string name;
    nlohmann::json value;
    std::string provenance;  // closed-form | monte-carlo | enumeration
    std::optional<std::uint64_t> n;
    std::optional<double> std_error;
    std::optional<std::uint64_t> seed;

    bool operator==(const ResultValue&) const = default;
};

struct RunRecord {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<ResultValue> results;
    std::optional<std::uint64_t> seed;
    // Only filled with --timing; a fixed null keeps the output reproducible.
    std::optional<double> wall_time;
    std::string version = kVersion;

    bool operator==(const RunRecord&) const = default;
};

nlohmann::json to_json(const RunRecord& rec);
RunRecord record_from_json(const nlohmann::json& j);

// Serialized form written to standard output (sorted keys, trailing newline).
std::string serialize(const RunRecord& rec);

// Runs the command line (without the program name).  Exit codes: 0 success,
// 1 numeric or resource failure (and failed verify items), 2 bad arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cleconn
