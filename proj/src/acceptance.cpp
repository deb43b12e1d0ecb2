#include "mzbath/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mzbath/bath.hpp"
#include "mzbath/dynamics.hpp"
#include "mzbath/interferometer.hpp"
#include "mzbath/output.hpp"
#include "mzbath/qmath.hpp"
#include "mzbath/thermo.hpp"

namespace mzbath {

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances pinned by the acceptance criteria.
constexpr double kRk4Tolerance = 1e-8;
constexpr double kRk4SecondsPerCombination = 1.0;
constexpr double kEntropyFormulaTolerance = 1e-12;
constexpr double kPlateauTolerance = 1e-6;
constexpr double kHatanoSasaTolerance = 1e-10;
constexpr double kContractivityTolerance = 1e-10;
constexpr double kFringeTolerance = 1e-12;
constexpr double kNormalizationTolerance = 1e-6;
constexpr double kVisibilityTolerance = 1e-12;
constexpr double kMixednessTolerance = 1e-6;
constexpr double kHeatTolerance = 1e-12;
constexpr double kCoherenceMonotoneTolerance = 1e-10;
constexpr double kCoefficientRatioTolerance = 0.01;
constexpr double kCoefficientPositivity = 1e-12;
constexpr double kKernelOracleTolerance = 1e-6;
constexpr long kKernelOraclePanels = 1000000;
constexpr int kRandomDraws = 1000;
constexpr int kFringeConfigs = 50;
constexpr std::size_t kFringeGridPoints = 1000;

struct Context {
    std::uint64_t seed;
    bool tamper;

    double tol(double t) const { return tamper ? -1.0 : t; }
};

struct Combination {
    double phase;
    double occupation;
    double rate;
};

std::vector<Combination> oracle_combinations() {
    std::vector<Combination> out;
    for (double phi : {0.0, kPi / 4, kPi / 2})
        for (double n : {0.1, 1.0, 12.6})
            for (double rate : {1e8, std::pow(10.0, 9.5), 1e11}) out.push_back({phi, n, rate});
    return out;
}

struct Rk4Run {
    Combination combo;
    Trajectory numeric;
    Trajectory analytic;
    double seconds;
};

// Criterion 1 trajectories are reused by criteria 3 and 10.
std::vector<Rk4Run> oracle_runs() {
    std::vector<Rk4Run> runs;
    for (const auto& c : oracle_combinations()) {
        const auto start = std::chrono::steady_clock::now();
        const MarkovParameters m{c.rate, c.occupation};
        const auto coeffs = LindbladCoefficients::from_markov(m);
        const auto grid = rk4_time_grid(5.0 / m.decoherence_rate(), coeffs);
        const auto rho0 = prepare_after_bs1(c.phase);
        auto numeric = evolve_rk4(rho0, CoefficientSource::constant(coeffs), grid);
        auto analytic = evolve_analytic(rho0, m, grid);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        runs.push_back({c, std::move(numeric), std::move(analytic), elapsed.count()});
    }
    return runs;
}

std::string combo_label(const Combination& c) {
    std::ostringstream os;
    os << "phi=" << c.phase << " n=" << c.occupation << " Gamma=" << c.rate;
    return os.str();
}

DensityMatrix random_state(std::mt19937_64& rng, double max_radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double x, y, z;
    do {
        x = u(rng);
        y = u(rng);
        z = u(rng);
    } while (x * x + y * y + z * z > 1.0);
    x *= max_radius;
    y *= max_radius;
    z *= max_radius;
    Matrix2c m;
    m << 0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z);
    return DensityMatrix::from_elements(m);
}

// Entropy from Eigen's generic Hermitian eigensolver, independent of eigenvalues2.
double oracle_entropy(const Matrix2c& m) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(m, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double l = solver.eigenvalues()(i);
        if (l > 0.0) s -= l * std::log2(l);
    }
    return s;
}

InterferometerConfig interferometer(double phase, double occupation, double rate = 1e10,
                                    double omega = 1e12) {
    return InterferometerConfig::with_defaults(phase, omega, MarkovParameters{rate, occupation});
}

double late_time(const InterferometerConfig& c) { return 1e3 / c.markov.decoherence_rate(); }

CriterionResult criterion_1(const Context& ctx, const std::vector<Rk4Run>& runs) {
    CriterionResult r{1, "oracle equivalence (dynamics)", {}, {}};
    double worst = 0.0, slowest = 0.0;
    std::string worst_label;
    for (const auto& run : runs) {
        double err = 0.0;
        for (std::size_t i = 0; i < run.numeric.states.size(); ++i)
            err = std::max(err, (run.numeric.states[i].matrix() - run.analytic.states[i].matrix())
                                    .cwiseAbs()
                                    .maxCoeff());
        if (err >= worst) {
            worst = err;
            worst_label = combo_label(run.combo);
        }
        slowest = std::max(slowest, run.seconds);
    }
    r.checks.push_back({"max |RK4 - analytic| over 27 combinations", worst, ctx.tol(kRk4Tolerance)});
    r.checks.push_back({"slowest combination [s]", slowest, ctx.tol(kRk4SecondsPerCombination), false});
    r.notes.push_back("worst at " + worst_label);
    return r;
}

CriterionResult criterion_2(const Context& ctx) {
    CriterionResult r{2, "entropy closed form vs eigen oracle", {}, {}};
    std::mt19937_64 rng(ctx.seed + 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, worst_identity = 0.0;
    for (int k = 0; k < kRandomDraws; ++k) {
        const double n = 20.0 * u(rng);
        const auto c = interferometer(2.0 * kPi * u(rng), n, std::pow(10.0, 8.0 + 3.0 * u(rng)));
        const double t = 4.0 * u(rng) / c.markov.decoherence_rate();
        const double eta = decoherence_factor(c.markov, t);
        const double f = 2.0 * n + 1.0;
        const double identity = (1.0 - eta * eta) * (1.0 - eta * eta) / (f * f) + eta * eta;
        worst_identity = std::max(worst_identity, std::abs(entropy_radicand(eta, n) - identity));
        const double oracle = oracle_entropy(pipeline_state(c, t).matrix());
        worst = std::max(worst, std::abs(entropy_closed_form(eta, n) - oracle));
    }
    r.checks.push_back({"max |closed form - oracle|", worst, ctx.tol(kEntropyFormulaTolerance)});
    r.checks.push_back({"max |radicand - identity|", worst_identity, ctx.tol(kEntropyFormulaTolerance)});
    return r;
}

CriterionResult criterion_3(const Context& ctx, const std::vector<Rk4Run>& runs) {
    CriterionResult r{3, "second law and entropy plateau", {}, {}};
    double worst_drop = 0.0;
    for (const auto& run : runs) {
        const auto report = second_law_check(run.numeric);
        worst_drop = std::max(worst_drop, -report.min_entropy_change);
    }
    r.checks.push_back({"max entropy decrease", std::max(0.0, worst_drop), ctx.tol(kSecondLawTolerance)});

    double plateau = 0.0;
    for (double n : {0.1, 1.0, 12.6, 1e6}) {
        const auto c = interferometer(kPi / 3, n);
        const double t = 40.0 / c.markov.decoherence_rate();
        plateau = std::max(plateau, std::abs(von_neumann_entropy(pipeline_state(c, t)) - asymptotic_entropy(n)));
    }
    r.checks.push_back({"max |S(40/rate) - S_inf|", plateau, ctx.tol(kPlateauTolerance)});
    r.checks.push_back({"|S_inf(n=1e6) - 1|", std::abs(asymptotic_entropy(1e6) - 1.0), ctx.tol(kPlateauTolerance)});
    return r;
}

CriterionResult criterion_4(const Context& ctx) {
    CriterionResult r{4, "Hatano-Sasa inequality", {}, {}};
    std::mt19937_64 rng(ctx.seed + 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < kRandomDraws; ++k) {
        const double n = 1e-3 + 20.0 * u(rng);
        const MarkovParameters m{1e10, n};
        const auto rho0 = random_state(rng, 1.0);
        const auto rhot = evolve_analytic(rho0, m, 5.0 * u(rng) / m.decoherence_rate());
        const double change = von_neumann_entropy(rhot) - von_neumann_entropy(rho0);
        const double bound = hatano_sasa_bound(rho0, rhot, gibbs_state(n, 1e12));
        worst = std::max(worst, bound - change);
    }
    r.checks.push_back({"max (bound - dS)", std::max(0.0, worst), ctx.tol(kHatanoSasaTolerance)});
    return r;
}

CriterionResult criterion_5(const Context& ctx) {
    CriterionResult r{5, "relative entropy contractivity", {}, {}};
    std::mt19937_64 rng(ctx.seed + 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < kRandomDraws; ++k) {
        const double n = 1e-3 + 20.0 * u(rng);
        const MarkovParameters m{1e10, n};
        const auto rho = random_state(rng, 1.0);
        const auto sigma = random_state(rng, 0.999);
        const double t = 3.0 * u(rng) / m.decoherence_rate();
        const double before = relative_entropy(rho, sigma);
        const double after = relative_entropy(evolve_analytic(rho, m, t), evolve_analytic(sigma, m, t));
        worst = std::max(worst, after - before);
    }
    r.checks.push_back({"max (S[M rho||M sigma] - S[rho||sigma])", std::max(0.0, worst),
                        ctx.tol(kContractivityTolerance)});
    return r;
}

CriterionResult criterion_6(const Context& ctx) {
    CriterionResult r{6, "fringe formula and normalization", {}, {}};
    std::mt19937_64 rng(ctx.seed + 6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, worst_norm = 0.0;
    for (int k = 0; k < kFringeConfigs; ++k) {
        const double omega = std::pow(10.0, 10.0 + 4.0 * u(rng));
        auto c = interferometer(2.0 * kPi * u(rng), 15.0 * u(rng), 1e9, omega);
        c.path_difference *= 1.0 + u(rng);
        const double t = 2.0 * u(rng) / c.markov.decoherence_rate();
        std::vector<double> grid(kFringeGridPoints);
        const double half = 8.0 * std::sqrt(omega);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        const auto closed = momentum_distribution(c, t, grid);
        const auto composed = momentum_distribution_compositional(c, t, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(closed.density[i] - composed.density[i]));
        worst_norm = std::max(worst_norm, std::abs(trapezoid(closed) - 1.0) - c.pointer_overlap());
    }
    r.checks.push_back({"max |closed - compositional|", worst, ctx.tol(kFringeTolerance)});
    r.checks.push_back({"max (|area - 1| - overlap)", std::max(0.0, worst_norm), ctx.tol(kNormalizationTolerance)});
    return r;
}

CriterionResult criterion_7(const Context& ctx) {
    CriterionResult r{7, "detector limits", {}, {}};
    double start = 0.0, mixed = 0.0;
    for (double n : {0.1, 1.0, 12.6}) {
        const auto c = interferometer(0.0, n);
        const auto p = detector_probabilities(pipeline_state(c, 0.0));
        start = std::max(start, std::abs(p.d1 - 0.0) + std::abs(p.d2 - 1.0));
        for (double phi : {0.0, kPi / 4, kPi / 2, 2.0}) {
            const auto ci = interferometer(phi, n);
            const auto q = detector_probabilities(pipeline_state(ci, late_time(ci)));
            mixed = std::max(mixed, std::abs(q.d1 - 0.5) + std::abs(q.d2 - 0.5));
        }
    }
    r.checks.push_back({"t=0, phi=0: |(d1, d2) - (0, 1)|", start, ctx.tol(0.0)});
    r.checks.push_back({"eta=0: |(d1, d2) - (1/2, 1/2)|", mixed, ctx.tol(0.0)});
    return r;
}

CriterionResult criterion_8(const Context& ctx) {
    CriterionResult r{8, "residual visibility", {}, {}};
    double residual = 0.0, initial = 0.0;
    for (double n : {0.0, 0.1, 1.0, 12.6, 1e3}) {
        const auto c = interferometer(0.0, n);
        residual = std::max(residual, std::abs(fringe_visibility(c, late_time(c)) - 1.0 / (2.0 * n + 1.0)));
        initial = std::max(initial, std::abs(fringe_visibility(interferometer(kPi / 2, n), 0.0) - 1.0));
    }
    r.checks.push_back({"phi=0, eta=0: |v - 1/(2n+1)|", residual, ctx.tol(kVisibilityTolerance)});
    r.checks.push_back({"phi=pi/2, t=0: |v - 1|", initial, ctx.tol(kVisibilityTolerance)});
    return r;
}

CriterionResult criterion_9(const Context& ctx) {
    CriterionResult r{9, "mixedness limits", {}, {}};
    const auto cold = interferometer(kPi / 4, 0.0);
    const auto hot = interferometer(kPi / 4, 1e6);
    r.checks.push_back({"M(eta=0, n=0)", std::abs(mixedness(pipeline_state(cold, late_time(cold)))),
                        ctx.tol(1e-12)});
    r.checks.push_back({"|M(eta=0, n=1e6) - 0.5|",
                        std::abs(mixedness(pipeline_state(hot, late_time(hot))) - 0.5),
                        ctx.tol(kMixednessTolerance)});
    return r;
}

CriterionResult criterion_10(const Context& ctx, const std::vector<Rk4Run>& runs) {
    CriterionResult r{10, "zero heat and constant quadratures", {}, {}};
    double worst = 0.0;
    for (const auto& run : runs)
        for (double h : heat_rate(run.numeric, 1e12)) worst = std::max(worst, std::abs(h));
    r.checks.push_back({"max |dQ/dt|", worst, ctx.tol(kHeatTolerance)});
    double quad = 0.0;
    for (double omega : {1e10, 1e12, 3.7e13}) {
        const auto q = quadratures(omega);
        quad = std::max(quad, std::abs(q.position_sq - 1.0 / (2.0 * omega)) / (1.0 / (2.0 * omega)) +
                                  std::abs(q.momentum_sq - omega / 2.0) / (omega / 2.0));
    }
    r.checks.push_back({"quadratures - (1/2Omega, Omega/2), relative", quad, ctx.tol(0.0)});
    return r;
}

CriterionResult criterion_11(const Context& ctx) {
    CriterionResult r{11, "coherence decay and ordering", {}, {}};
    double rise = 0.0;
    for (const auto& combo : oracle_combinations()) {
        const auto c = interferometer(combo.phase, combo.occupation, combo.rate);
        const double t_end = 5.0 / c.markov.decoherence_rate();
        double prev = INFINITY;
        for (int i = 0; i <= 200; ++i) {
            const double cd = distillable_coherence(bath_evolved_state(c, t_end * i / 200.0));
            if (i > 0) rise = std::max(rise, cd - prev);
            prev = cd;
        }
    }
    r.checks.push_back({"max C_d increase between samples", std::max(0.0, rise), ctx.tol(kCoherenceMonotoneTolerance)});
    double misordered = 0.0;
    for (double t : {1e-12, 1e-11, 5e-11, 1e-10}) {
        for (double phi : {0.0, kPi / 2}) {
            const double cold = distillable_coherence(bath_evolved_state(interferometer(phi, 0.1), t));
            const double hot = distillable_coherence(bath_evolved_state(interferometer(phi, 12.6), t));
            if (!(cold > hot)) misordered += 1.0;
        }
    }
    r.checks.push_back({"times where C_d(n=0.1) <= C_d(n=12.6)", misordered, ctx.tol(0.0)});
    return r;
}

BathParameters bath_for(double cutoff_ratio, double half_beta_omega) {
    BathParameters b;
    b.system_frequency = 1e12;
    b.cutoff = cutoff_ratio * b.system_frequency;
    b.coupling = 0.1;
    b.temperature = b.system_frequency / (2.0 * half_beta_omega * kBoltzmannOverHbar);
    return b;
}

// Midpoint-rule evaluation of the frequency integrals, independent of the adaptive quadrature.
template <class F>
double midpoint(F&& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    long double sum = 0.0L;
    for (long i = 0; i < n; ++i) sum += f(a + (static_cast<double>(i) + 0.5) * h);
    return static_cast<double>(sum * h);
}

CriterionResult criterion_12(const Context& ctx) {
    CriterionResult r{12, "transient coefficients", {}, {}};
    for (double ratio : {1.0, 10.0, 100.0}) {
        for (double x : {0.1, 0.5, 1.0}) {
            const auto b = bath_for(ratio, x);
            const std::vector<double> times{0.0, 50.0 / b.cutoff};
            const auto tc = transient_coefficients(b, times);
            const double err = std::abs(tc.delta.back() / tc.gamma.back() / thermal_coth(b) - 1.0);
            std::ostringstream label;
            label << "r=" << ratio << " Omega/2kT=" << x << ": |(Delta/gamma)/coth - 1| at t=50/Lambda";
            r.checks.push_back({label.str(), err, ctx.tol(kCoefficientRatioTolerance)});
            if (ratio > 1.0) {
                // not gating: the same ratio once both 1/Lambda and 1/Omega transients have passed
                const std::vector<double> later{50.0 / std::min(b.cutoff, b.system_frequency)};
                const auto tl = transient_coefficients(b, later);
                std::ostringstream note;
                note << "info: r=" << ratio << " Omega/2kT=" << x
                     << " at t=50/min(Lambda, Omega): |(Delta/gamma)/coth - 1| = "
                     << std::abs(tl.delta[0] / tl.gamma[0] / thermal_coth(b) - 1.0);
                r.notes.push_back(note.str());
            }
        }
    }

    {
        const auto b = bath_for(10.0, 0.1);
        std::vector<double> times;
        for (int i = 0; i <= 40; ++i) times.push_back(50.0 / b.cutoff * i / 40.0);
        const auto tc = transient_coefficients(b, times);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double scale = std::abs(tc.delta[i]);
            const double low = std::min(tc.delta[i] + tc.gamma[i], tc.delta[i] - tc.gamma[i]);
            if (low < 0.0) worst = std::max(worst, scale > 0.0 ? -low / scale : INFINITY);
        }
        r.checks.push_back({"r=10 Omega/2kT=0.1: max -(Delta +- gamma)/Delta", worst, ctx.tol(kCoefficientPositivity)});
    }

    {
        const auto b = bath_for(10.0, 0.1);
        const double kt = b.thermal_frequency();
        const double top = kFrequencyCutoffFactor * b.cutoff;
        double worst = 0.0;
        for (double s : {0.2, 0.7, 1.5, 3.0, 6.0}) {
            const double tau = s / b.cutoff;
            const double noise = midpoint(
                [&](double w) { return 2.0 * spectral_density(w, b) / std::tanh(w / (2.0 * kt)) * std::cos(w * tau); },
                0.0, top, kKernelOraclePanels);
            const double diss = midpoint(
                [&](double w) { return 2.0 * spectral_density(w, b) * std::sin(w * tau); }, 0.0, top,
                kKernelOraclePanels);
            worst = std::max(worst, std::abs(noise_kernel(tau, b) / noise - 1.0));
            worst = std::max(worst, std::abs(dissipation_kernel(tau, b) / diss - 1.0));
        }
        r.checks.push_back({"kernels vs midpoint oracle, max relative error", worst, ctx.tol(kKernelOracleTolerance)});
    }
    return r;
}

CriterionResult criterion_13(const Context& ctx) {
    CriterionResult r{13, "remained entropy sweep", {}, {}};
    double prev_rem = -INFINITY, prev_vis = -INFINITY;
    double violations = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double ratio = std::pow(10.0, 8.0 + 4.0 * i / 19.0);
        const double n = mean_occupation(BathParameters::from_ratios(1e12, ratio, 10.0, 0.1));
        const double rem = remained_entropy(n);
        const double vis = 1.0 / (2.0 * n + 1.0);
        if (!(rem > prev_rem)) violations += 1.0;
        if (!(vis > prev_vis)) violations += 1.0;
        prev_rem = rem;
        prev_vis = vis;
    }
    r.checks.push_back({"non-increasing steps of S_rem or 1/(2n+1)", violations, ctx.tol(0.0)});
    return r;
}

std::vector<CriterionResult> run_core(const Context& ctx) {
    const auto runs = oracle_runs();
    std::vector<CriterionResult> out;
    out.push_back(criterion_1(ctx, runs));
    out.push_back(criterion_2(ctx));
    out.push_back(criterion_3(ctx, runs));
    out.push_back(criterion_4(ctx));
    out.push_back(criterion_5(ctx));
    out.push_back(criterion_6(ctx));
    out.push_back(criterion_7(ctx));
    out.push_back(criterion_8(ctx));
    out.push_back(criterion_9(ctx));
    out.push_back(criterion_10(ctx, runs));
    out.push_back(criterion_11(ctx));
    out.push_back(criterion_12(ctx));
    out.push_back(criterion_13(ctx));
    return out;
}

std::string csv_of(const std::vector<CriterionResult>& criteria) {
    std::ostringstream os;
    CsvWriter w(os, "selftest", "");
    write_acceptance_csv(AcceptanceReport{criteria}, w);
    return os.str();
}

}  // namespace

bool CriterionResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

const AcceptanceCheck* CriterionResult::worst() const {
    const AcceptanceCheck* best = nullptr;
    double best_score = -INFINITY;
    for (const auto& c : checks) {
        double score = c.passed() ? (c.tolerance > 0.0 ? c.value / c.tolerance : 0.0) : INFINITY;
        if (!best || score > best_score) {
            best = &c;
            best_score = score;
        }
        if (!c.passed()) break;
    }
    return best;
}

bool AcceptanceReport::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed(); });
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
    const Context ctx{options.seed, options.tamper_tolerance};
    AcceptanceReport report{run_core(ctx)};

    CriterionResult det{14, "determinism", {}, {}};
    const bool same = csv_of(report.criteria) == csv_of(run_core(ctx));
    det.checks.push_back({"CSV artifacts differing between two seeded runs", same ? 0.0 : 1.0, ctx.tol(0.0)});
    report.criteria.push_back(std::move(det));
    return report;
}

void write_acceptance_csv(const AcceptanceReport& report, CsvWriter& out) {
    out.header({"criterion", "name", "check", "value", "tolerance", "passed"});
    for (const auto& c : report.criteria) {
        for (const auto& check : c.checks) {
            out.row({std::to_string(c.id), c.name, check.label,
                     check.deterministic ? format_number(check.value) : "",
                     format_number(check.tolerance), check.passed() ? "true" : "false"});
        }
    }
}

namespace {

std::string brief(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
}

}  // namespace

void print_acceptance_table(const AcceptanceReport& report, std::ostream& out) {
    for (const auto& c : report.criteria) {
        const auto* w = c.worst();
        out << (c.passed() ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  "
            << std::left << std::setw(40) << c.name << std::right;
        if (w) out << "  " << w->label << ": " << brief(w->value) << " (tol " << brief(w->tolerance) << ")";
        out << "\n";
        for (const auto& check : c.checks)
            if (!check.passed() && &check != w)
                out << "        also failed: " << check.label << ": " << brief(check.value)
                    << " (tol " << brief(check.tolerance) << ")\n";
        for (const auto& note : c.notes) out << "        " << note << "\n";
    }
}

}  // namespace mzbath
