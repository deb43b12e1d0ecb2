#include "mzbath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mzbath/errors.hpp"

namespace mzbath {

LindbladCoefficients LindbladCoefficients::from_markov(const MarkovParameters& markov) {
    return {markov.rate * markov.thermal_factor(), markov.rate};
}

CoefficientSource CoefficientSource::constant(LindbladCoefficients coeffs) {
    return CoefficientSource([coeffs](double) { return coeffs; });
}

CoefficientSource CoefficientSource::interpolated(TransientCoefficients table) {
    if (table.times.empty() || table.times.size() != table.delta.size() ||
        table.times.size() != table.gamma.size())
        throw DomainError("interpolated coefficients: series lengths differ or are empty");
    return CoefficientSource([table = std::move(table)](double t) {
        const auto& ts = table.times;
        if (t <= ts.front()) return LindbladCoefficients{table.delta.front(), table.gamma.front()};
        if (t >= ts.back()) return LindbladCoefficients{table.delta.back(), table.gamma.back()};
        const auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
        const std::size_t lo = hi - 1;
        const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return LindbladCoefficients{(1.0 - w) * table.delta[lo] + w * table.delta[hi],
                                    (1.0 - w) * table.gamma[lo] + w * table.gamma[hi]};
    });
}

Matrix2c lindblad_rhs(const Matrix2c& rho, const LindbladCoefficients& c) {
    // With a = |0><1|: the emission bracket is [[-2 p1, r01], [r10, 2 p1]] and the
    // absorption bracket is [[2 p0, r01], [r10, -2 p0]].
    const double down = 0.5 * c.emission_rate();
    const double up = 0.5 * c.absorption_rate();
    const Complex p0 = rho(0, 0);
    const Complex p1 = rho(1, 1);
    Matrix2c out;
    out(0, 0) = 2.0 * down * p1 - 2.0 * up * p0;
    out(1, 1) = -out(0, 0);
    out(0, 1) = -(down + up) * rho(0, 1);
    out(1, 0) = -(down + up) * rho(1, 0);
    return out;
}

Matrix2c lindblad_rhs(const DensityMatrix& rho, const LindbladCoefficients& coeffs) {
    return lindblad_rhs(rho.matrix(), coeffs);
}

std::vector<double> rk4_time_grid(double t_end, const LindbladCoefficients& coeffs,
                                  double step_factor) {
    if (!(t_end >= 0.0)) throw DomainError("rk4_time_grid: t_end must be >= 0");
    const double rate = coeffs.emission_rate();
    std::size_t steps = 1;
    if (rate > 0.0) steps = static_cast<std::size_t>(std::ceil(t_end * rate / step_factor));
    steps = std::max<std::size_t>(steps, 1);
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        grid[i] = t_end * static_cast<double>(i) / static_cast<double>(steps);
    grid.back() = t_end;
    return grid;
}

Trajectory evolve_rk4(const DensityMatrix& rho0, const CoefficientSource& coeffs,
                      std::span<const double> times) {
    if (times.empty()) throw DomainError("evolve_rk4: empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw DomainError("evolve_rk4: time grid must be strictly increasing");

    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    std::vector<Matrix2c> raw;
    raw.reserve(times.size());
    raw.push_back(rho0.matrix());

    Matrix2c rho = rho0.matrix();
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double t = times[i];
        const double h = times[i + 1] - t;
        const auto c0 = coeffs(t);
        const auto cm = coeffs(t + 0.5 * h);
        const auto c1 = coeffs(t + h);
        for (const auto& c : {c0, cm, c1}) {
            if (!c.lindblad_type()) traj.lindblad_violation = true;
            const double rate = std::abs(c.emission_rate());
            if (rate > 0.0 && h > kMaxStepFactor / rate) {
                std::ostringstream os;
                os << "evolve_rk4: step " << h << " s at t = " << t << " exceeds 0.01/(Delta+gamma) = "
                   << kMaxStepFactor / rate << " s";
                throw StepSizeError(os.str());
            }
        }
        const Matrix2c k1 = lindblad_rhs(rho, c0);
        const Matrix2c k2 = lindblad_rhs(Matrix2c(rho + 0.5 * h * k1), cm);
        const Matrix2c k3 = lindblad_rhs(Matrix2c(rho + 0.5 * h * k2), cm);
        const Matrix2c k4 = lindblad_rhs(Matrix2c(rho + h * k3), c1);
        rho = hermitize(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

        const double lowest = hermitian_eigenvalues(rho).lower / rho.trace().real();
        if (!(lowest >= -kTrajectoryPositivity)) {
            std::ostringstream os;
            os << "evolve_rk4: eigenvalue " << lowest << " at t = " << times[i + 1];
            throw PositivityError(os.str());
        }
        raw.push_back(rho);
    }

    traj.states.reserve(raw.size());
    for (const auto& m : raw) {
        const double tr = m.trace().real();
        traj.trace_drift = std::max(traj.trace_drift, std::abs(tr - 1.0));
        Matrix2c normalized = m / tr;
        // Clamp eigenvalue dust in (-1e-9, 0) so the stored state validates.
        const auto ev = hermitian_eigenvalues(normalized);
        if (ev.lower < 0.0) {
            const double shift = -ev.lower;
            normalized = (normalized + shift * Matrix2c::Identity()) / (1.0 + 2.0 * shift);
        }
        traj.states.push_back(DensityMatrix::from_elements(normalized));
    }
    return traj;
}

double decoherence_factor(const MarkovParameters& markov, double t) {
    if (!(t >= 0.0)) throw DomainError("decoherence_factor: t must be >= 0");
    const double eta = std::exp(-markov.decoherence_rate() * t);
    return eta < 1e-300 ? 0.0 : eta;
}

DensityMatrix evolve_analytic(const DensityMatrix& rho0, const MarkovParameters& markov, double t) {
    const double eta = decoherence_factor(markov, t);
    if (eta == 1.0) return rho0;
    const double eta2 = eta * eta;
    const double excited_inf = markov.occupation / markov.thermal_factor();
    const double excited = excited_inf + (rho0.population(1) - excited_inf) * eta2;
    Matrix2c m;
    m(1, 1) = excited;
    m(0, 0) = 1.0 - excited;
    m(0, 1) = eta * rho0.coherence();
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix::from_elements(m);
}

Trajectory evolve_analytic(const DensityMatrix& rho0, const MarkovParameters& markov,
                           std::span<const double> times) {
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    for (double t : times) traj.states.push_back(evolve_analytic(rho0, markov, t));
    return traj;
}

GibbsState gibbs_state(double occupation, double system_frequency) {
    if (!(occupation >= 0.0) || !std::isfinite(occupation))
        throw DomainError("gibbs_state: occupation must be finite and >= 0");
    const double denom = 2.0 * occupation + 1.0;
    const double excited = occupation / denom;
    const auto matrix = DensityMatrix::diagonal(1.0 - excited, excited);
    if (occupation == 0.0)
        return {occupation, matrix, std::numeric_limits<double>::infinity(), 0.5 * system_frequency};
    // exp(beta Omega) = (n + 1) / n
    const double beta = std::log1p(1.0 / occupation) / system_frequency;
    // Z = exp(-beta Omega/2) (1 + exp(-beta Omega)) = exp(-beta Omega/2) (2n+1)/(n+1)
    const double free_energy =
        0.5 * system_frequency - std::log(denom / (occupation + 1.0)) / beta;
    return {occupation, matrix, beta, free_energy};
}

}  // namespace mzbath
