// config.hpp - run configuration: TOML file, --key=value overrides, validation
//
// Layout of a config file (every key optional):
//
//   [bath]            temperature, cutoff, coupling, system_frequency,
//                     omega_over_T, cutoff_ratio
//   [interferometer]  phase, path_difference, pointer_separation, phases, snapshots
//   [grid]            start, stop, count, spacing, step_factor, eval_times,
//                     sweep_axis, sweep_values, sweep_start, sweep_stop, sweep_count
//   [output]          out, svg, quiet, seed
//
// Overrides are written `--section.key=value` or `--key=value` and win over the file.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mzbath/bath.hpp"
#include "mzbath/interferometer.hpp"

namespace mzbath {

using ConfigValue = std::variant<double, bool, std::string, std::vector<double>>;

/// Flat "section.key" -> value map.
using ConfigTable = std::map<std::string, ConfigValue>;

/// Parses the TOML subset above. Throws ConfigError with the offending key or line.
ConfigTable parse_toml(const std::string& text);

/// Applies `--key=value` arguments to `table`. Bare keys are resolved to their section.
void apply_overrides(ConfigTable& table, const std::vector<std::string>& args);

enum class GridSpacing { linear, log };

struct TimeGridSpec {
    double start{0.0};
    std::optional<double> stop;  // command-specific default when absent
    int count{201};
    GridSpacing spacing{GridSpacing::linear};

    /// Throws ConfigError unless count >= 2 and the points increase strictly.
    std::vector<double> points(double default_stop) const;
};

enum class SweepAxis { omega_over_T, temperature, time };

struct SweepSpec {
    SweepAxis axis{SweepAxis::omega_over_T};
    std::vector<double> values;  // explicit list; otherwise log-spaced start..stop
    double start{1e8};
    double stop{1e12};
    int count{20};

    std::vector<double> points() const;
};

struct RunConfig {
    BathParameters bath;
    double phase{0.0};
    std::optional<double> path_difference;
    std::optional<double> pointer_separation;
    std::vector<double> phases{0.0, 1.5707963267948966};
    std::vector<double> snapshots{0.0, 1.5e-8, 1e-7};

    TimeGridSpec grid;
    double step_factor{0.005};
    std::vector<double> eval_times{1e-12, 1e-11};
    SweepSpec sweep;

    std::string out;  // empty: stdout
    bool svg{false};
    bool quiet{false};
    std::uint64_t seed{20240501};

    /// Re-validates every physical invariant; throws ConfigError naming the field.
    void validate() const;

    MarkovParameters markov() const;
    /// Interferometer at the configured phase, with unset separations at their defaults.
    InterferometerConfig interferometer(double phase) const;

    /// Resolved configuration as TOML, excluding the output path.
    std::string to_toml() const;

    static RunConfig from_table(const ConfigTable& table);
};

/// Reads `path` (if non-empty), applies overrides and validates.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace mzbath
