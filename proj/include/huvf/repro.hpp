#pragma once

/// The reproduction suite: each acceptance criterion as one executable check
/// producing a pass/fail line.  Shared by `huvf repro all` and the
/// acceptance test binary.

#include <huvf/report.hpp>

#include <string>
#include <vector>

namespace huvf::repro {

struct Line {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Table {
    std::vector<Line> lines;
    [[nodiscard]] bool all_pass() const;
};

inline constexpr int kCriterionCount = 7;

/// Runs criterion k (1-based).  Never throws for in-range k: failures are
/// reported in the line.
[[nodiscard]] Line run_criterion(int k);

[[nodiscard]] Table run_all();

[[nodiscard]] std::string format_text(const Table& table);
[[nodiscard]] report::json to_json(const Table& table);

}  // namespace huvf::repro
