// Acceptance suite runner: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <cstdint>
#include <cstring>
#include <iostream>
#include <string>

#include "mzbath/acceptance.hpp"

int main(int argc, char** argv) {
    mzbath::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            options.seed = std::stoull(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--seed N]\n";
            return 2;
        }
    }
    const auto report = mzbath::run_acceptance(options);
    mzbath::print_acceptance_table(report, std::cout);
    return report.passed() ? 0 : 1;
}
