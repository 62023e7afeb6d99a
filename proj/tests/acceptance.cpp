// Acceptance gate: runs every criterion of the reproduction suite and prints
// one pass/fail line per criterion.  Exit status reflects the overall verdict.
// With --criterion k only that criterion runs (used by the per-criterion ctest
// registrations).

#include <huvf/repro.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    int criterion = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            criterion = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: huvf_acceptance [--criterion K]\n";
            return 1;
        }
    }

    huvf::repro::Table table;
    try {
        if (criterion > 0)
            table.lines.push_back(huvf::repro::run_criterion(criterion));
        else
            table = huvf::repro::run_all();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << huvf::repro::format_text(table);
    return table.all_pass() ? 0 : 2;
}
