// interferometer.hpp - Mach-Zehnder pipeline: BS1 -> thermal bath -> BS2 -> pointer readout

#pragma once

#include <span>
#include <vector>

#include "mzbath/bath.hpp"
#include "mzbath/qmath.hpp"

namespace mzbath {

/// Omega d^2 lower bound; keeps the pointer overlap exp(-Omega d^2/4) <= 1e-12.
inline constexpr double kMinFringeSeparation = 110.5;
/// x0 sqrt(2 Omega) lower bound for well-separated position peaks.
inline constexpr double kMinPointerSeparation = 8.0;
inline constexpr double kDefaultFringeSeparation = 120.0;

struct InterferometerConfig {
    double phase{0.0};               // phi, rad
    double path_difference{0.0};     // d, conjugate to P
    double system_frequency{1e12};   // Omega, s^-1
    double pointer_separation{0.0};  // x0
    MarkovParameters markov;

    /// d with Omega d^2 = 120 and x0 = 8 / sqrt(2 Omega).
    static InterferometerConfig with_defaults(double phase, double system_frequency,
                                              MarkovParameters markov);

    /// Throws ConfigError when a separation bound fails.
    void validate() const;

    /// exp(-Omega d^2 / 4)
    double pointer_overlap() const;
};

struct DetectorProbabilities {
    double d1;
    double d2;
};

struct DistributionSamples {
    std::vector<double> abscissa;
    std::vector<double> density;
};

/// (e^{i phi}|0> + i|1>)/sqrt(2) as a density matrix.
DensityMatrix prepare_after_bs1(double phase);

/// U rho U^dagger with U = (1/sqrt 2)[[1, i], [i, 1]].
DensityMatrix apply_bs2(const DensityMatrix& rho);

/// prepare_after_bs1 -> evolve_analytic -> apply_bs2
DensityMatrix pipeline_state(const InterferometerConfig& config, double t);

/// State between the beamsplitters, after the bath interaction.
DensityMatrix bath_evolved_state(const InterferometerConfig& config, double t);

DetectorProbabilities detector_probabilities(const DensityMatrix& final_state);

/// Pointer wavefunctions <P|0> = G(P) e^{-iPd/2}, <P|1> = G(P) e^{+iPd/2}.
Vector2c momentum_pointer(double p, const InterferometerConfig& config);

/// Gaussian envelope G(P)^2 = (1/(Omega pi))^{1/2} exp(-P^2/Omega).
double momentum_envelope(double p, double system_frequency);

/// Closed-form fringe pattern
///   Pr(P) = G^2 [1 + (eta^2-1)/(2n+1) sin(Pd) + eta sin(phi) cos(Pd)].
DistributionSamples momentum_distribution(const InterferometerConfig& config, double t,
                                          std::span<const double> grid);

/// <P|rho|P> built from the pipeline state and the pointer wavefunctions.
DistributionSamples momentum_distribution_compositional(const InterferometerConfig& config,
                                                        double t, std::span<const double> grid);

/// rho_00 g^2(X - x0) + rho_11 g^2(X + x0), g^2(x) = sqrt(Omega/pi) exp(-Omega x^2).
DistributionSamples position_distribution(const InterferometerConfig& config, double t,
                                          std::span<const double> grid);

/// Fringe coefficients (A, B) of 1 + A sin(Pd) + B cos(Pd).
struct FringeCoefficients {
    double sine;
    double cosine;
};
FringeCoefficients fringe_coefficients(const InterferometerConfig& config, double t);

/// sqrt(A^2 + B^2), clamped to [0, 1].
double fringe_visibility(const InterferometerConfig& config, double t);

/// Symmetric grid over [-8 sqrt(Omega), 8 sqrt(Omega)] with spacing pi / (16 d),
/// so every fringe extremum at Pd = k pi/2 is a sample.
std::vector<double> momentum_grid(const InterferometerConfig& config);

/// Uniform grid covering both pointer peaks with 8 widths of margin.
std::vector<double> position_grid(const InterferometerConfig& config, std::size_t count = 801);

double trapezoid(const DistributionSamples& samples);

}  // namespace mzbath
