#include "mzbath/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mzbath/errors.hpp"

namespace mzbath {

double entropy_radicand(double eta, double occupation) {
    const double f = 2.0 * occupation + 1.0;
    const double eta2 = eta * eta;
    return (1.0 - eta2 * (2.0 - eta2 - f * f)) / (f * f);
}

double entropy_closed_form(double eta, double occupation) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("entropy_closed_form: eta must lie in [0, 1]");
    if (!(occupation >= 0.0)) throw DomainError("entropy_closed_form: occupation must be >= 0");
    const double radicand = entropy_radicand(eta, occupation);
    if (radicand > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "entropy_closed_form: radicand " << radicand << " exceeds 1";
        throw DomainError(os.str());
    }
    const double half_root = 0.5 * std::sqrt(std::clamp(radicand, 0.0, 1.0));
    return entropy_term(0.5 + half_root) + entropy_term(0.5 - half_root);
}

double asymptotic_entropy(double occupation) {
    if (!(occupation >= 0.0)) throw DomainError("asymptotic_entropy: occupation must be >= 0");
    const double f = 2.0 * occupation + 1.0;
    return entropy_term((occupation + 1.0) / f) + entropy_term(occupation / f);
}

double remained_entropy(double occupation) { return 1.0 - asymptotic_entropy(occupation); }

double hatano_sasa_bound(const DensityMatrix& rho0, const DensityMatrix& rhot,
                         const GibbsState& fixed_point) {
    const double xi0 = fixed_point.matrix.population(0);
    const double xi1 = fixed_point.matrix.population(1);
    if (!(xi0 > 0.0 && xi1 > 0.0))
        throw SupportError("hatano_sasa_bound: fixed point has a zero eigenvalue");
    // xi is diagonal, so only the population changes enter the trace.
    const double d0 = rhot.population(0) - rho0.population(0);
    const double d1 = rhot.population(1) - rho0.population(1);
    return -(d0 * std::log2(xi0) + d1 * std::log2(xi1));
}

SecondLawReport second_law_check(const Trajectory& trajectory) {
    SecondLawReport report;
    if (trajectory.states.empty()) return report;
    const double s0 = von_neumann_entropy(trajectory.states.front());
    for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
        const double change = von_neumann_entropy(trajectory.states[i]) - s0;
        report.min_entropy_change = std::min(report.min_entropy_change, change);
        if (change < -kSecondLawTolerance && !report.first_violation) {
            report.passed = false;
            report.first_violation = i;
        }
    }
    return report;
}

Quadratures quadratures(double system_frequency) {
    return {1.0 / (2.0 * system_frequency), 0.5 * system_frequency};
}

double internal_energy(double system_frequency) {
    const auto q = quadratures(system_frequency);
    return 0.5 * q.momentum_sq + 0.5 * system_frequency * system_frequency * q.position_sq;
}

std::vector<double> heat_rate(const Trajectory& trajectory, double system_frequency) {
    const auto& t = trajectory.times;
    const std::size_t n = t.size();
    std::vector<double> rate(n, 0.0);
    // quadratures are state-independent in the two-level truncation
    const auto q = quadratures(system_frequency);
    const std::vector<double> x2(n, q.position_sq), p2(n, q.momentum_sq);
    if (n < 2) return rate;
    const double w2 = system_frequency * system_frequency;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
        const double dt = t[hi] - t[lo];
        rate[i] = 0.5 * w2 * (x2[hi] - x2[lo]) / dt + 0.5 * (p2[hi] - p2[lo]) / dt;
    }
    return rate;
}

ThermoSeries thermo_series(const Trajectory& trajectory, double system_frequency) {
    ThermoSeries s;
    s.times = trajectory.times;
    const std::size_t n = trajectory.states.size();
    s.entropy.reserve(n);
    s.entropy_change.reserve(n);
    s.distillable_coherence.reserve(n);
    s.mixedness.reserve(n);
    for (const auto& rho : trajectory.states) {
        s.entropy.push_back(von_neumann_entropy(rho));
        s.entropy_change.push_back(s.entropy.back() - s.entropy.front());
        s.distillable_coherence.push_back(distillable_coherence(rho));
        s.mixedness.push_back(mixedness(rho));
    }
    s.heat_rate = heat_rate(trajectory, system_frequency);
    return s;
}

}  // namespace mzbath
