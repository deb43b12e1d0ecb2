// thermo.hpp - entropy bookkeeping, second-law checks and heat along trajectories

#pragma once

#include <optional>
#include <vector>

#include "mzbath/dynamics.hpp"
#include "mzbath/qmath.hpp"

namespace mzbath {

/// Per-sample thermodynamic series over a trajectory's states. Entropy change is
/// measured from the first sample.
struct ThermoSeries {
    std::vector<double> times;
    std::vector<double> entropy;
    std::vector<double> entropy_change;
    std::vector<double> distillable_coherence;
    std::vector<double> mixedness;
    std::vector<double> heat_rate;
};

/// Entropy of the interferometer state from its eigenvalues
///   1/2 +- 1/2 sqrt((1 - eta^2 (2 - eta^2 - (2n+1)^2)) / (2n+1)^2).
/// Throws DomainError if the radicand exceeds 1 by more than 1e-12.
double entropy_closed_form(double eta, double occupation);

/// The radicand above; algebraically eta^2 + (1 - eta^2)^2 / (2n+1)^2.
double entropy_radicand(double eta, double occupation);

/// Entropy of the thermalized state diag((n+1)/(2n+1), n/(2n+1)).
double asymptotic_entropy(double occupation);

/// 1 - asymptotic_entropy: distance of the thermalized state from complete mixing.
double remained_entropy(double occupation);

/// -Tr[(rho_t - rho_0) log2 xi] with xi the Gibbs fixed point.
/// Throws SupportError when xi has a zero eigenvalue (n = 0).
double hatano_sasa_bound(const DensityMatrix& rho0, const DensityMatrix& rhot,
                         const GibbsState& fixed_point);

struct SecondLawReport {
    bool passed{true};
    std::optional<std::size_t> first_violation;
    double min_entropy_change{0.0};
};

inline constexpr double kSecondLawTolerance = 1e-12;

/// S(t) - S(t0) >= -1e-12 at every sample.
SecondLawReport second_law_check(const Trajectory& trajectory);

struct Quadratures {
    double position_sq;  // <X^2> = 1/(2 Omega)
    double momentum_sq;  // <P^2> = Omega/2
};

/// In the truncated algebra X^2 = (a a^+ + a^+ a)/(2 Omega) and
/// P^2 = Omega (a a^+ + a^+ a)/2 are both proportional to the identity.
Quadratures quadratures(double system_frequency);

/// <P^2>/2 + Omega^2 <X^2>/2
double internal_energy(double system_frequency);

/// dQ/dt = Omega^2/2 d<X^2>/dt + 1/2 d<P^2>/dt by finite differences along the trajectory.
std::vector<double> heat_rate(const Trajectory& trajectory, double system_frequency);

ThermoSeries thermo_series(const Trajectory& trajectory, double system_frequency);

}  // namespace mzbath
