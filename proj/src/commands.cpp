#include "mzbath/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "mzbath/acceptance.hpp"
#include "mzbath/bath.hpp"
#include "mzbath/dynamics.hpp"
#include "mzbath/errors.hpp"
#include "mzbath/interferometer.hpp"
#include "mzbath/output.hpp"
#include "mzbath/thermo.hpp"

namespace mzbath {

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Uniform RK4 grid from 0 through every output time; `index[i]` locates times[i].
std::vector<double> refined_grid(std::span<const double> times, double max_step,
                                 std::vector<std::size_t>& index) {
    std::vector<double> grid{0.0};
    index.clear();
    for (double t : times) {
        const double a = grid.back();
        if (t > a) {
            const double n = std::isfinite(max_step) ? std::ceil((t - a) / max_step) : 1.0;
            const auto steps = static_cast<std::size_t>(std::max(1.0, n));
            for (std::size_t k = 1; k < steps; ++k)
                grid.push_back(a + (t - a) * static_cast<double>(k) / static_cast<double>(steps));
            grid.push_back(t);
        }
        index.push_back(grid.size() - 1);
    }
    return grid;
}

double default_evolve_stop(const MarkovParameters& m) {
    const double rate = m.decoherence_rate();
    return rate > 0.0 ? 40.0 / rate : 1e-9;
}

struct SweepPoint {
    double value;
    double occupation;
    double s_inf;
    double s_rem;
    std::vector<double> coherence;
    double m_inf;
    double visibility;
};

SweepPoint sweep_point(const RunConfig& config, double value) {
    BathParameters bath = config.bath;
    std::vector<double> times = config.eval_times;
    switch (config.sweep.axis) {
        case SweepAxis::omega_over_T: bath.temperature = bath.system_frequency / value; break;
        case SweepAxis::temperature: bath.temperature = value; break;
        case SweepAxis::time: times = {value}; break;
    }
    bath.validate();
    const auto markov = markov_parameters(bath);
    auto ic = config.interferometer(config.phase);
    ic.markov = markov;
    SweepPoint p{value, markov.occupation, 0.0, 0.0, {}, 0.0, 0.0};
    p.s_inf = asymptotic_entropy(markov.occupation);
    p.s_rem = remained_entropy(markov.occupation);
    for (double t : times) p.coherence.push_back(distillable_coherence(bath_evolved_state(ic, t)));
    p.m_inf = mixedness(gibbs_state(markov.occupation, bath.system_frequency).matrix);
    p.visibility = 1.0 / markov.thermal_factor();
    return p;
}

}  // namespace

int cmd_coeffs(const RunConfig& config, std::ostream& csv) {
    const auto times = config.grid.points(50.0 / config.bath.cutoff);
    const auto tc = transient_coefficients(config.bath, times);
    const auto limit = transient_limits(config.bath);

    CsvWriter w(csv, "coeffs", config.to_toml());
    w.comment("stationary columns are the t -> infinity limits in the transient normalization");
    w.header({"t", "delta", "gamma", "delta_plus_gamma", "delta_minus_gamma", "stationary_delta",
              "stationary_gamma"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double row[] = {times[i], tc.delta[i], tc.gamma[i], tc.delta[i] + tc.gamma[i],
                              tc.delta[i] - tc.gamma[i], limit.delta, limit.gamma};
        w.row(row);
    }
    return kExitOk;
}

int cmd_evolve(const RunConfig& config, std::ostream& csv) {
    const auto markov = config.markov();
    const auto coeffs = LindbladCoefficients::from_markov(markov);
    const auto times = config.grid.points(default_evolve_stop(markov));
    const double rate = coeffs.emission_rate();
    const double max_step = rate > 0.0 ? config.step_factor / rate : INFINITY;

    std::vector<std::size_t> index;
    const auto grid = refined_grid(times, max_step, index);
    const auto rho0 = prepare_after_bs1(config.phase);
    const auto numeric = evolve_rk4(rho0, CoefficientSource::constant(coeffs), grid);

    Trajectory sampled;
    sampled.times = times;
    for (std::size_t i : index) sampled.states.push_back(numeric.states[i]);
    auto series = thermo_series(sampled, config.bath.system_frequency);
    const double s0 = von_neumann_entropy(rho0);

    CsvWriter w(csv, "evolve", config.to_toml());
    w.comment("state between the beamsplitters; coherence is the distillable coherence C_d");
    w.header({"t", "eta", "rho11_re", "rho12_re", "rho12_im", "rho22_re", "entropy", "entropy_change",
              "coherence", "mixedness", "heat_rate", "numeric_vs_analytic_maxerr"});
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& rho = sampled.states[i];
        const auto exact = evolve_analytic(rho0, markov, times[i]);
        const double err = (rho.matrix() - exact.matrix()).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        const double row[] = {times[i],
                              decoherence_factor(markov, times[i]),
                              rho(0, 0).real(),
                              rho(0, 1).real(),
                              rho(0, 1).imag(),
                              rho(1, 1).real(),
                              series.entropy[i],
                              series.entropy[i] - s0,
                              series.distillable_coherence[i],
                              series.mixedness[i],
                              series.heat_rate[i],
                              err};
        w.row(row);
    }
    if (worst > kEvolveCrossCheck)
        throw CrossCheckError("RK4 and analytic solutions differ by " + format_number(worst) +
                              " (limit " + format_number(kEvolveCrossCheck) + ")");
    return kExitOk;
}

int cmd_interfere(const RunConfig& config, std::ostream& csv, const std::string& svg_base) {
    std::vector<InterferometerConfig> setups;
    for (double phi : config.phases) {
        setups.push_back(config.interferometer(phi));
        setups.back().validate();
    }

    CsvWriter w(csv, "interfere", config.to_toml());
    for (double t : config.snapshots)
        for (const auto& ic : setups)
            w.comment("visibility snapshot_t=" + format_number(t) + " phase_phi=" + format_number(ic.phase) +
                      " v=" + format_number(fringe_visibility(ic, t)));
    w.header({"snapshot_t", "axis", "coordinate", "density", "phase_phi"});

    for (std::size_t k = 0; k < config.snapshots.size(); ++k) {
        const double t = config.snapshots[k];
        std::vector<SvgPanel> panels;
        SvgPanel xs{"X, t = " + short_number(t) + " s", "X", {}};
        SvgPanel ps{"P, t = " + short_number(t) + " s", "P", {}};
        for (const auto& ic : setups) {
            const auto x = position_distribution(ic, t, position_grid(ic));
            const auto p = momentum_distribution(ic, t, momentum_grid(ic));
            for (const auto* d : {&x, &p}) {
                const char* axis = d == &x ? "X" : "P";
                for (std::size_t i = 0; i < d->abscissa.size(); ++i)
                    w.row({format_number(t), axis, format_number(d->abscissa[i]),
                           format_number(d->density[i]), format_number(ic.phase)});
            }
            const std::string label = "phi = " + short_number(ic.phase);
            xs.series.push_back({label, x.abscissa, x.density});
            ps.series.push_back({label, p.abscissa, p.density});
        }
        if (!svg_base.empty()) {
            panels.push_back(std::move(xs));
            panels.push_back(std::move(ps));
            const std::string path = svg_base + "_snapshot" + std::to_string(k) + ".svg";
            std::ofstream svg(path);
            if (!svg) throw ConfigError("output.out", "cannot write '" + path + "'");
            std::ostringstream header;
            header << "mzbath " << MZBATH_VERSION << "\ncommand: interfere\n" << config.to_toml();
            write_svg(svg, "Pointer distributions at t = " + short_number(t) + " s", panels, 2, header.str());
        }
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& csv) {
    const auto values = config.sweep.points();
    std::vector<std::future<SweepPoint>> jobs;
    jobs.reserve(values.size());
    for (double v : values)
        jobs.push_back(std::async(std::launch::async, [&config, v] { return sweep_point(config, v); }));
    std::vector<SweepPoint> points;
    for (auto& j : jobs) points.push_back(j.get());
    std::stable_sort(points.begin(), points.end(),
                     [](const SweepPoint& a, const SweepPoint& b) { return a.value < b.value; });

    CsvWriter w(csv, "sweep", config.to_toml());
    std::vector<std::string> columns{"sweep_value", "n_bar", "S_inf", "S_rem"};
    if (config.sweep.axis == SweepAxis::time) {
        columns.push_back("C_d");
    } else {
        for (double t : config.eval_times) columns.push_back("C_d_at_" + short_number(t));
    }
    columns.push_back("M_inf");
    columns.push_back("residual_visibility");
    w.header(columns);
    for (const auto& p : points) {
        std::vector<double> row{p.value, p.occupation, p.s_inf, p.s_rem};
        row.insert(row.end(), p.coherence.begin(), p.coherence.end());
        row.push_back(p.m_inf);
        row.push_back(p.visibility);
        w.row(row);
    }
    return kExitOk;
}

int cmd_selftest(const RunConfig& config, std::ostream* csv, std::ostream& table, bool tamper) {
    const auto report = run_acceptance({config.seed, tamper});
    print_acceptance_table(report, table);
    if (csv) {
        CsvWriter w(*csv, "selftest", config.to_toml());
        write_acceptance_csv(report, w);
    }
    return report.passed() ? kExitOk : kExitSelftestFailed;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& out,
                std::ostream& err, bool tamper) {
    try {
        if (config.svg && config.out.empty()) throw ConfigError("output.svg", "SVG output needs --out");
        std::ofstream file;
        if (!config.out.empty()) {
            file.open(config.out);
            if (!file) throw ConfigError("output.out", "cannot write '" + config.out + "'");
        }
        std::ostream& csv = config.out.empty() ? out : file;

        int code = kExitOk;
        if (command == "coeffs") {
            code = cmd_coeffs(config, csv);
        } else if (command == "evolve") {
            code = cmd_evolve(config, csv);
        } else if (command == "interfere") {
            std::string base;
            if (config.svg) base = std::filesystem::path(config.out).replace_extension().string();
            code = cmd_interfere(config, csv, base);
        } else if (command == "sweep") {
            code = cmd_sweep(config, csv);
        } else if (command == "selftest") {
            std::ostringstream sink;
            code = cmd_selftest(config, config.out.empty() ? nullptr : &csv, config.quiet ? sink : out, tamper);
        } else {
            throw ConfigError("command", "unknown subcommand '" + command + "'");
        }
        if (!config.out.empty() && !config.quiet && command != "selftest")
            err << "wrote " << config.out << "\n";
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CrossCheckError& e) {
        err << "cross-check failed: " << e.what() << "\n";
        return kExitCrossCheck;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace mzbath
