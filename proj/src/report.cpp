#include <huvf/report.hpp>

#include <huvf/error.hpp>
#include <huvf/version.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace huvf::report {

std::string csv_cell(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Csv::add_row(std::vector<std::string> row) {
    if (row.size() != header.size())
        throw UsageError("CSV row width does not match the header");
    rows.push_back(std::move(row));
}

std::string Csv::str() const {
    std::ostringstream out;
    auto escape = [](const std::string& cell) -> std::string {
        if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
        std::string quoted = "\"";
        for (char ch : cell) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        quoted += '"';
        return quoted;
    };
    auto emit = [&out, &escape](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << escape(cells[i]);
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out.str();
}

json document(const std::string& command_echo, bool with_timestamp) {
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["command"] = command_echo;
    if (with_timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(
            std::chrono::system_clock::now());
        char buf[32];
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        doc["timestamp"] = buf;
    }
    doc["payload"] = json::object();
    return doc;
}

std::string resolve_output_path(const std::string& requested) {
    if (requested.empty()) throw UsageError("empty output path");
    const std::filesystem::path p(requested);
    if (p.is_absolute() || p.has_parent_path()) return requested;
    const char* dir = std::getenv("HUVF_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0') return requested;
    return (std::filesystem::path(dir) / p).string();
}

void write_text(const std::string& path, const std::string& content) {
    const std::string resolved = resolve_output_path(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + resolved);
    out << content;
    if (!out) throw UsageError("failed writing output file: " + resolved);
}

}  // namespace huvf::report
