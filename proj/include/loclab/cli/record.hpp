#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loclab/cli/config.hpp"

namespace loclab::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "loclab";
inline constexpr const char* kToolVersion = "1.0.0";

/// Per-row data; each row holds scalars only.
struct Table {
    std::vector<std::string> columns;
    std::vector<ordered_json> rows;  ///< each an array with one entry per column
};

struct RunRecord {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    ordered_json config;  ///< the params block with defaults filled in
    Table table;
    ordered_json summary = ordered_json::object();
    double wall_time_s = 0.0;
};

/// Finite doubles pass through; +-inf and NaN become "inf", "-inf", "nan".
ordered_json num(double v);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// The payload (columns, rows, summary) as compact JSON: the bytes that must
/// not depend on thread count or wall time.
std::string payload_dump(const RunRecord& record);

/// Header comment, column header, rows, summary comments, wall-time comment.
std::string render_csv(const RunRecord& record);

/// Envelope with tool, version, command, config_hash, seed, config, payload, wall_time_s.
std::string render_json(const RunRecord& record);

std::string render(const RunRecord& record, Format format);

}  // namespace loclab::cli
