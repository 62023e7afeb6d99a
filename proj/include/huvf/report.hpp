#pragma once

/// Deterministic report emission: CSV with 17-significant-digit cells
/// (lossless double round-trip) and JSON documents with a fixed key order.

#include <json.hpp>

#include <string>
#include <vector>

namespace huvf::report {

using json = nlohmann::ordered_json;

/// One numeric CSV cell: '.' decimal separator, 17 significant digits.
[[nodiscard]] std::string csv_cell(double v);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    [[nodiscard]] std::string str() const;
};

/// Document skeleton: {tool, version, command, timestamp?, payload}.
/// The timestamp is omitted when with_timestamp is false so that identical
/// requests produce byte-identical output.
[[nodiscard]] json document(const std::string& command_echo, bool with_timestamp);

/// Resolves an output path: absolute paths and paths with directory
/// components pass through; a bare file name lands in $HUVF_OUTPUT_DIR when
/// that variable is set and non-empty.
[[nodiscard]] std::string resolve_output_path(const std::string& requested);

void write_text(const std::string& path, const std::string& content);

}  // namespace huvf::report
