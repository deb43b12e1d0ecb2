// bath.hpp - Ohmic Lorentz-Drude bath and the master-equation coefficients it induces
//
// Units: hbar = 1, frequencies and rates in s^-1, times in s, temperature in K.

#pragma once

#include <span>
#include <vector>

namespace mzbath {

/// k_B / hbar in s^-1 K^-1; converts a temperature to the thermal frequency kT.
inline constexpr double kBoltzmannOverHbar = 1.30920e11;

struct BathParameters {
    double temperature{100.0};       // K, >= 0
    double cutoff{1e13};             // Lambda, s^-1, > 0
    double coupling{0.1};            // gamma_0, dimensionless, >= 0
    double system_frequency{1e12};   // Omega, s^-1, > 0

    /// Throws DomainError naming the offending field.
    void validate() const;

    /// r = Lambda / Omega
    double cutoff_ratio() const { return cutoff / system_frequency; }
    /// kT in s^-1
    double thermal_frequency() const { return kBoltzmannOverHbar * temperature; }

    /// Bath at system frequency `omega` whose temperature gives Omega/T = omega_over_t.
    static BathParameters from_ratios(double omega, double omega_over_t, double cutoff_ratio,
                                      double coupling);
};

struct MarkovParameters {
    double rate{0.0};        // Gamma, s^-1
    double occupation{0.0};  // n-bar

    /// 2 n-bar + 1
    double thermal_factor() const { return 2.0 * occupation + 1.0; }
    /// Gamma (2 n-bar + 1), the coherence decay rate
    double decoherence_rate() const { return rate * thermal_factor(); }
};

struct StationaryCoefficients {
    double delta;  // diffusion, s^-1
    double gamma;  // damping, s^-1
};

/// Delta(t), gamma(t) sampled on a time grid. Raw quadrature values in the
/// normalization of spectral_density (linear in gamma_0).
struct TransientCoefficients {
    std::vector<double> times;
    std::vector<double> delta;
    std::vector<double> gamma;
};

/// J(w) = (2 gamma_0 w / pi) Lambda^2 / (Lambda^2 + w^2). Throws DomainError for w < 0.
double spectral_density(double omega, const BathParameters& bath);

/// coth(Omega / 2kT), equal to 1 at T = 0.
double thermal_coth(const BathParameters& bath);

/// Bose-Einstein occupation at the system frequency; 0 at T = 0.
double mean_occupation(const BathParameters& bath);

MarkovParameters markov_parameters(const BathParameters& bath);

/// Long-time limits of Delta(t), gamma(t) to second order in the coupling.
StationaryCoefficients stationary_coefficients(const BathParameters& bath);

/// t -> infinity limits of transient_coefficients, in their normalization:
/// gamma = pi J(Omega), Delta = pi J(Omega) coth(Omega / 2kT).
StationaryCoefficients transient_limits(const BathParameters& bath);

/// Frequency integrals of the continuum bath are truncated at kFrequencyCutoffFactor * Lambda.
inline constexpr double kFrequencyCutoffFactor = 50.0;
inline constexpr double kQuadratureTolerance = 1e-10;

/// kappa(tau) = 2 int_0^{50 Lambda} J(w) coth(w / 2kT) cos(w tau) dw, in s^-2.
/// Throws QuadratureError if the adaptive integral misses its tolerance.
double noise_kernel(double tau, const BathParameters& bath);

/// mu(tau) = 2 int_0^{50 Lambda} J(w) sin(w tau) dw, in s^-2.
double dissipation_kernel(double tau, const BathParameters& bath);

/// Delta(t) = int_0^t kappa(tau) cos(Omega tau) dtau, gamma(t) = int_0^t mu(tau) sin(Omega tau) dtau
/// on a strictly increasing grid with times[0] >= 0. The tau integral is done in closed
/// form, leaving one oscillatory frequency integral per time.
TransientCoefficients transient_coefficients(const BathParameters& bath,
                                             std::span<const double> times);

}  // namespace mzbath
