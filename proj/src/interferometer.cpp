#include "mzbath/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mzbath/dynamics.hpp"
#include "mzbath/errors.hpp"

namespace mzbath {

namespace {

void check_time(double t) {
    if (!(t >= 0.0)) throw DomainError("interferometer: t must be >= 0");
}

}  // namespace

InterferometerConfig InterferometerConfig::with_defaults(double phase, double system_frequency,
                                                         MarkovParameters markov) {
    InterferometerConfig c;
    c.phase = phase;
    c.system_frequency = system_frequency;
    c.path_difference = std::sqrt(kDefaultFringeSeparation / system_frequency);
    c.pointer_separation = kMinPointerSeparation / std::sqrt(2.0 * system_frequency);
    c.markov = markov;
    return c;
}

void InterferometerConfig::validate() const {
    if (!(std::isfinite(system_frequency) && system_frequency > 0.0))
        throw ConfigError("system_frequency", "must be finite and > 0");
    if (!std::isfinite(phase)) throw ConfigError("phase", "must be finite");
    const double fringe = system_frequency * path_difference * path_difference;
    if (!(fringe >= kMinFringeSeparation)) {
        std::ostringstream os;
        os << "Omega*d^2 = " << fringe << " is below " << kMinFringeSeparation
           << "; pointer overlap would exceed 1e-12";
        throw ConfigError("path_difference", os.str());
    }
    const double peaks = pointer_separation * std::sqrt(2.0 * system_frequency);
    if (!(peaks >= kMinPointerSeparation * (1.0 - 1e-12))) {
        std::ostringstream os;
        os << "x0*sqrt(2*Omega) = " << peaks << " is below " << kMinPointerSeparation;
        throw ConfigError("pointer_separation", os.str());
    }
    if (!(markov.rate >= 0.0) || !(markov.occupation >= 0.0))
        throw ConfigError("markov", "rate and occupation must be >= 0");
}

double InterferometerConfig::pointer_overlap() const {
    return std::exp(-0.25 * system_frequency * path_difference * path_difference);
}

DensityMatrix prepare_after_bs1(double phase) {
    const Complex i(0.0, 1.0);
    const Complex c = -0.5 * i * std::polar(1.0, phase);
    Matrix2c m;
    m << 0.5, c, std::conj(c), 0.5;
    return DensityMatrix::from_elements(m);
}

DensityMatrix apply_bs2(const DensityMatrix& rho) {
    // Expanded U rho U^dagger; keeps the t = 0 and eta = 0 detector limits exact.
    const Matrix2c& r = rho.matrix();
    const double half_trace = 0.5 * (r(0, 0).real() + r(1, 1).real());
    const double im = r(0, 1).imag();
    const double half_gap = 0.5 * (r(0, 0).real() - r(1, 1).real());
    Matrix2c m;
    m(0, 0) = half_trace + im;
    m(1, 1) = half_trace - im;
    m(0, 1) = Complex(r(0, 1).real(), -half_gap);
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix::from_elements(m);
}

DensityMatrix bath_evolved_state(const InterferometerConfig& config, double t) {
    check_time(t);
    return evolve_analytic(prepare_after_bs1(config.phase), config.markov, t);
}

DensityMatrix pipeline_state(const InterferometerConfig& config, double t) {
    return apply_bs2(bath_evolved_state(config, t));
}

DetectorProbabilities detector_probabilities(const DensityMatrix& final_state) {
    return {final_state.population(0), final_state.population(1)};
}

double momentum_envelope(double p, double system_frequency) {
    return std::sqrt(1.0 / (system_frequency * std::numbers::pi)) *
           std::exp(-p * p / system_frequency);
}

Vector2c momentum_pointer(double p, const InterferometerConfig& config) {
    const double g = std::sqrt(momentum_envelope(p, config.system_frequency));
    const double half = 0.5 * p * config.path_difference;
    return Vector2c(std::polar(g, -half), std::polar(g, half));
}

FringeCoefficients fringe_coefficients(const InterferometerConfig& config, double t) {
    const double eta = decoherence_factor(config.markov, t);
    return {(eta * eta - 1.0) / config.markov.thermal_factor(), eta * std::sin(config.phase)};
}

DistributionSamples momentum_distribution(const InterferometerConfig& config, double t,
                                          std::span<const double> grid) {
    config.validate();
    check_time(t);
    const auto f = fringe_coefficients(config, t);
    DistributionSamples out{{grid.begin(), grid.end()}, {}};
    out.density.reserve(grid.size());
    for (double p : grid) {
        const double pd = p * config.path_difference;
        const double factor = 1.0 + f.sine * std::sin(pd) + f.cosine * std::cos(pd);
        out.density.push_back(std::max(0.0, momentum_envelope(p, config.system_frequency) * factor));
    }
    return out;
}

DistributionSamples momentum_distribution_compositional(const InterferometerConfig& config,
                                                        double t, std::span<const double> grid) {
    config.validate();
    const auto rho = pipeline_state(config, t);
    DistributionSamples out{{grid.begin(), grid.end()}, {}};
    out.density.reserve(grid.size());
    for (double p : grid) {
        const Vector2c psi = momentum_pointer(p, config);
        const double value = (psi.transpose() * rho.matrix() * psi.conjugate())(0, 0).real();
        out.density.push_back(std::max(0.0, value));
    }
    return out;
}

DistributionSamples position_distribution(const InterferometerConfig& config, double t,
                                          std::span<const double> grid) {
    config.validate();
    const auto probs = detector_probabilities(pipeline_state(config, t));
    const double omega = config.system_frequency;
    const double norm = std::sqrt(omega / std::numbers::pi);
    auto g2 = [&](double x) { return norm * std::exp(-omega * x * x); };
    DistributionSamples out{{grid.begin(), grid.end()}, {}};
    out.density.reserve(grid.size());
    for (double x : grid) {
        out.density.push_back(probs.d1 * g2(x - config.pointer_separation) +
                              probs.d2 * g2(x + config.pointer_separation));
    }
    return out;
}

double fringe_visibility(const InterferometerConfig& config, double t) {
    const auto f = fringe_coefficients(config, t);
    return std::clamp(std::hypot(f.sine, f.cosine), 0.0, 1.0);
}

std::vector<double> momentum_grid(const InterferometerConfig& config) {
    const double half_width = 8.0 * std::sqrt(config.system_frequency);
    const double spacing = std::numbers::pi / (16.0 * config.path_difference);
    const auto k_max = static_cast<long>(std::ceil(half_width / spacing));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(2 * k_max + 1));
    for (long k = -k_max; k <= k_max; ++k) grid.push_back(static_cast<double>(k) * spacing);
    return grid;
}

std::vector<double> position_grid(const InterferometerConfig& config, std::size_t count) {
    const double width = 1.0 / std::sqrt(2.0 * config.system_frequency);
    const double half_span = config.pointer_separation + 8.0 * width;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = -half_span + 2.0 * half_span * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

double trapezoid(const DistributionSamples& samples) {
    const auto& x = samples.abscissa;
    const auto& y = samples.density;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) sum += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
    return sum;
}

}  // namespace mzbath
