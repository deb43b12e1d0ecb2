// acceptance.hpp - the numbered acceptance suite behind `mzbath selftest`
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mzbath/output.hpp"

namespace mzbath {

struct AcceptanceCheck {
    std::string label;
    double value;      // observed deviation, >= 0
    double tolerance;  // passes when value <= tolerance
    bool deterministic{true};  // false for wall-clock budgets; value omitted from the CSV

    bool passed() const { return value <= tolerance; }
};

struct CriterionResult {
    int id;
    std::string name;
    std::vector<AcceptanceCheck> checks;
    std::vector<std::string> notes;

    bool passed() const;
    /// Check with the largest value / tolerance ratio (first failing one if any fail).
    const AcceptanceCheck* worst() const;
};

struct AcceptanceOptions {
    std::uint64_t seed{20240501};
    /// Test hook: replaces every tolerance by -1 so that every check fails.
    bool tamper_tolerance{false};
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool passed() const;
};

/// Runs criteria 1-14. Criterion 14 reruns 1-13 and compares their CSV bit for bit.
AcceptanceReport run_acceptance(const AcceptanceOptions& options);

/// One row per check: criterion, name, check, value, tolerance, passed.
void write_acceptance_csv(const AcceptanceReport& report, CsvWriter& out);

/// One line per criterion.
void print_acceptance_table(const AcceptanceReport& report, std::ostream& out);

}  // namespace mzbath
