// commands.hpp - subcommands behind the mzbath executable
#pragma once

#include <ostream>
#include <string>

#include "mzbath/config.hpp"

namespace mzbath {

enum ExitCode : int {
    kExitOk = 0,
    kExitSelftestFailed = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitCrossCheck = 4,
};

/// Largest tolerated |RK4 - analytic| element in cmd_evolve.
inline constexpr double kEvolveCrossCheck = 1e-6;

/// Transient Delta(t), gamma(t) on the time grid (default [0, 50/Lambda]).
int cmd_coeffs(const RunConfig& config, std::ostream& csv);

/// RK4 evolution between the beamsplitters with thermodynamic columns and the
/// analytic cross-check (default grid [0, 40/(Gamma(2n+1))]).
int cmd_evolve(const RunConfig& config, std::ostream& csv);

/// Position and momentum pointer distributions per snapshot and phase. When `svg_base`
/// is non-empty, writes `<svg_base>_snapshot<k>.svg` for each snapshot.
int cmd_interfere(const RunConfig& config, std::ostream& csv, const std::string& svg_base);

/// Asymptotic entropy, coherence and mixedness over a parameter sweep.
int cmd_sweep(const RunConfig& config, std::ostream& csv);

/// Runs the acceptance suite; the CSV goes to `csv` when non-null.
int cmd_selftest(const RunConfig& config, std::ostream* csv, std::ostream& table, bool tamper);

/// Runs `command` with outputs at config.out (stdout when empty) and maps
/// exceptions to exit codes, reporting them on `err`.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out,
                std::ostream& err, bool tamper = false);

}  // namespace mzbath
