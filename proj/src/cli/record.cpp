#include "loclab/cli/record.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace loclab::cli {
namespace {

std::string csv_cell(const ordered_json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "";
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }
    return v.dump();
}

void flatten(const ordered_json& v, const std::string& prefix, std::ostringstream& os) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), prefix + "." + it.key(), os);
        return;
    }
    std::string text;
    if (v.is_string())
        text = v.get<std::string>();
    else if (v.is_array())
        text = v.dump();
    else
        text = csv_cell(v);
    os << "# " << prefix << "=" << text << "\n";
}

}  // namespace

ordered_json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string payload_dump(const RunRecord& record) {
    ordered_json p = ordered_json::object();
    p["columns"] = record.table.columns;
    p["rows"] = ordered_json::array();
    for (const auto& r : record.table.rows) p["rows"].push_back(r);
    p["summary"] = record.summary;
    return p.dump();
}

std::string render_csv(const RunRecord& record) {
    std::ostringstream os;
    os << "# tool=" << kToolName << " version=" << kToolVersion << " command=" << record.command
       << " config_hash=" << record.config_hash << " seed=" << record.seed << "\n";
    for (std::size_t i = 0; i < record.table.columns.size(); ++i) os << (i ? "," : "") << record.table.columns[i];
    os << "\n";
    for (const auto& row : record.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
    flatten(record.summary, "summary", os);
    os << "# wall_time_s=" << format_double(record.wall_time_s) << "\n";
    return os.str();
}

std::string render_json(const RunRecord& record) {
    ordered_json j = ordered_json::object();
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = record.command;
    j["config_hash"] = record.config_hash;
    j["seed"] = record.seed;
    j["config"] = record.config;
    j["payload"] = ordered_json::parse(payload_dump(record));
    j["wall_time_s"] = record.wall_time_s;
    return j.dump(2) + "\n";
}

std::string render(const RunRecord& record, Format format) {
    return format == Format::Csv ? render_csv(record) : render_json(record);
}

}  // namespace loclab::cli
