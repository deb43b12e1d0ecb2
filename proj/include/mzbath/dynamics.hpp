// dynamics.hpp - two-level Lindblad generator, RK4 and closed-form propagators
//
// The oscillator is truncated to {|0>, |1>} with a = |0><1|, so a^2 = 0 and the
// secular master equation closes on 2x2 matrices:
//
//   d rho/dt = -(Delta+gamma)/2 [a^+a rho - 2 a rho a^+ + rho a^+a]
//              -(Delta-gamma)/2 [a a^+ rho - 2 a^+ rho a + rho a a^+]

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mzbath/bath.hpp"
#include "mzbath/qmath.hpp"

namespace mzbath {

struct LindbladCoefficients {
    double delta{0.0};
    double gamma{0.0};

    /// Delta = Gamma (2 n-bar + 1), gamma = Gamma
    static LindbladCoefficients from_markov(const MarkovParameters& markov);

    double emission_rate() const { return delta + gamma; }    // 2 Gamma (n+1) for Markov
    double absorption_rate() const { return delta - gamma; }  // 2 Gamma n for Markov
    /// Delta +- gamma >= 0
    bool lindblad_type() const { return emission_rate() >= 0.0 && absorption_rate() >= 0.0; }
};

/// Time-indexed coefficient provider for evolve_rk4.
class CoefficientSource {
  public:
    static CoefficientSource constant(LindbladCoefficients coeffs);
    /// Linear interpolation between grid points, held constant outside the grid.
    static CoefficientSource interpolated(TransientCoefficients table);

    LindbladCoefficients operator()(double t) const { return fn_(t); }

  private:
    explicit CoefficientSource(std::function<LindbladCoefficients(double)> fn) : fn_(std::move(fn)) {}
    std::function<LindbladCoefficients(double)> fn_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    double trace_drift{0.0};         // max |Tr - 1| before renormalization
    bool lindblad_violation{false};  // some sampled coefficients had Delta +- gamma < 0
};

/// Right-hand side of the master equation on a raw 2x2 matrix.
Matrix2c lindblad_rhs(const Matrix2c& rho, const LindbladCoefficients& coeffs);
Matrix2c lindblad_rhs(const DensityMatrix& rho, const LindbladCoefficients& coeffs);

/// Largest step allowed by evolve_rk4: 0.01 / (Delta + gamma).
inline constexpr double kMaxStepFactor = 0.01;
inline constexpr double kDefaultStepFactor = 0.005;
inline constexpr double kTrajectoryPositivity = 1e-9;

/// Uniform grid on [0, t_end] with step <= step_factor / (Delta + gamma).
std::vector<double> rk4_time_grid(double t_end, const LindbladCoefficients& coeffs,
                                  double step_factor = kDefaultStepFactor);

/// Classical fixed-step RK4, one step per grid interval. Each state is hermitized
/// and checked; traces are renormalized at the end of the run.
///
/// Throws StepSizeError if a step exceeds 0.01/(Delta+gamma) and PositivityError
/// if an eigenvalue drops below -1e-9.
Trajectory evolve_rk4(const DensityMatrix& rho0, const CoefficientSource& coeffs,
                      std::span<const double> times);

/// eta = exp(-Gamma t (2 n-bar + 1)), flushed to 0 below 1e-300.
double decoherence_factor(const MarkovParameters& markov, double t);

/// Closed-form solution of the Markovian equation: coherences scale by eta and the
/// excited population relaxes to n/(2n+1) with factor eta^2.
DensityMatrix evolve_analytic(const DensityMatrix& rho0, const MarkovParameters& markov, double t);

Trajectory evolve_analytic(const DensityMatrix& rho0, const MarkovParameters& markov,
                           std::span<const double> times);

struct GibbsState {
    double occupation;
    DensityMatrix matrix;        // diag((n+1)/(2n+1), n/(2n+1))
    double inverse_temperature;  // beta, s (hbar = 1); +inf at n = 0
    double free_energy;          // F, s^-1, with level energies Omega/2 and 3 Omega/2
};

GibbsState gibbs_state(double occupation, double system_frequency);

}  // namespace mzbath
