#include "mzbath/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mzbath/errors.hpp"
#include "quadrature.hpp"

namespace mzbath {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw DomainError(std::string(field) + ": " + what);
}

// Kernel integrals are evaluated in units of the cutoff: u = w / Lambda, s = Lambda tau.
struct ScaledBath {
    double prefactor;  // 2 gamma_0 / pi
    double theta;      // Lambda / 2kT, +inf at T = 0
    double omega;      // Omega / Lambda = 1/r

    explicit ScaledBath(const BathParameters& bath)
        : prefactor(2.0 * bath.coupling / std::numbers::pi),
          theta(bath.temperature > 0.0 ? bath.cutoff / (2.0 * bath.thermal_frequency())
                                       : INFINITY),
          omega(1.0 / bath.cutoff_ratio()) {}

    // u coth(theta u), continuous at u = 0
    double u_coth(double u) const {
        if (std::isinf(theta)) return u;
        const double x = theta * u;
        if (x < 1e-6) return (1.0 + x * x / 3.0) / theta;
        return u / std::tanh(x);
    }
    double noise_weight(double u) const { return prefactor * u_coth(u) / (1.0 + u * u); }
    double dissipation_weight(double u) const { return prefactor * u / (1.0 + u * u); }
};

constexpr double kInnerTolerance = 1e-12;

// Breakpoints for int_0^{cut} f(u) trig(u s) du at the zeros of the trig factor,
// so every segment has a sign-definite oscillatory part.
std::vector<double> frequency_breakpoints(double s, bool cosine, const ScaledBath& sb) {
    const double cut = kFrequencyCutoffFactor;
    std::vector<double> pts{1.0};
    if (std::isfinite(sb.theta) && sb.theta > 0.0) pts.push_back(1.0 / sb.theta);
    if (s > 0.0) {
        const double period = std::numbers::pi / s;
        for (double k = cosine ? 0.5 : 1.0;; k += 1.0) {
            const double u = k * period;
            if (u >= cut) break;
            pts.push_back(u);
        }
    }
    return detail::make_breakpoints(0.0, cut, std::move(pts));
}

double scaled_noise_kernel(double s, const ScaledBath& sb) {
    const auto bp = frequency_breakpoints(s, true, sb);
    const auto r = detail::integrate_adaptive<31>(
        [&](double u) { return sb.noise_weight(u) * std::cos(u * s); }, bp, kInnerTolerance);
    if (!r.converged) {
        std::ostringstream os;
        os << "noise kernel quadrature did not converge at Lambda*tau = " << s
           << " (error " << r.error << ", L1 " << r.l1 << ")";
        throw QuadratureError(os.str());
    }
    return r.value;
}

double scaled_dissipation_kernel(double s, const ScaledBath& sb) {
    if (s == 0.0) return 0.0;
    const auto bp = frequency_breakpoints(s, false, sb);
    const auto r = detail::integrate_adaptive<31>(
        [&](double u) { return sb.dissipation_weight(u) * std::sin(u * s); }, bp,
        kInnerTolerance);
    if (!r.converged) {
        std::ostringstream os;
        os << "dissipation kernel quadrature did not converge at Lambda*tau = " << s;
        throw QuadratureError(os.str());
    }
    return r.value;
}

}  // namespace

void BathParameters::validate() const {
    require(std::isfinite(temperature) && temperature >= 0.0, "temperature",
            "must be finite and >= 0");
    require(std::isfinite(cutoff) && cutoff > 0.0, "cutoff", "must be finite and > 0");
    require(std::isfinite(coupling) && coupling >= 0.0, "coupling", "must be finite and >= 0");
    require(std::isfinite(system_frequency) && system_frequency > 0.0, "system_frequency",
            "must be finite and > 0");
    const double r = cutoff_ratio();
    require(std::isfinite(r) && r > 0.0, "cutoff", "cutoff / system_frequency must be finite");
}

BathParameters BathParameters::from_ratios(double omega, double omega_over_t, double cutoff_ratio,
                                           double coupling) {
    BathParameters b;
    b.system_frequency = omega;
    b.temperature = omega / omega_over_t;
    b.cutoff = cutoff_ratio * omega;
    b.coupling = coupling;
    return b;
}

double spectral_density(double omega, const BathParameters& bath) {
    if (!(omega >= 0.0)) throw DomainError("spectral_density: frequency must be >= 0");
    const double l2 = bath.cutoff * bath.cutoff;
    return 2.0 * bath.coupling * omega / std::numbers::pi * l2 / (l2 + omega * omega);
}

double thermal_coth(const BathParameters& bath) {
    if (bath.temperature == 0.0) return 1.0;
    return 1.0 / std::tanh(bath.system_frequency / (2.0 * bath.thermal_frequency()));
}

double mean_occupation(const BathParameters& bath) {
    if (bath.temperature == 0.0) return 0.0;
    const double x = bath.system_frequency / bath.thermal_frequency();
    return 1.0 / std::expm1(x);
}

MarkovParameters markov_parameters(const BathParameters& bath) {
    const double r = bath.cutoff_ratio();
    const double rate =
        bath.coupling * bath.coupling * bath.system_frequency * (r * r / (1.0 + r * r));
    return {rate, mean_occupation(bath)};
}

StationaryCoefficients stationary_coefficients(const BathParameters& bath) {
    const double gamma = markov_parameters(bath).rate;
    return {gamma * thermal_coth(bath), gamma};
}

StationaryCoefficients transient_limits(const BathParameters& bath) {
    const double gamma = std::numbers::pi * spectral_density(bath.system_frequency, bath);
    return {gamma * thermal_coth(bath), gamma};
}

double noise_kernel(double tau, const BathParameters& bath) {
    if (!(tau >= 0.0)) throw DomainError("noise_kernel: tau must be >= 0");
    const ScaledBath sb(bath);
    return 2.0 * bath.cutoff * bath.cutoff * scaled_noise_kernel(bath.cutoff * tau, sb);
}

double dissipation_kernel(double tau, const BathParameters& bath) {
    if (!(tau >= 0.0)) throw DomainError("dissipation_kernel: tau must be >= 0");
    const ScaledBath sb(bath);
    return 2.0 * bath.cutoff * bath.cutoff * scaled_dissipation_kernel(bath.cutoff * tau, sb);
}

TransientCoefficients transient_coefficients(const BathParameters& bath,
                                             std::span<const double> times) {
    bath.validate();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || (i == 0 && times[i] < 0.0) ||
            (i > 0 && !(times[i] > times[i - 1])))
            throw DomainError("transient_coefficients: times must be finite, >= 0 and strictly increasing");
    }

    const ScaledBath sb(bath);
    const double w = sb.omega;
    const double cut = kFrequencyCutoffFactor;

    // int_0^s cos(u s') cos(w s') ds' and int_0^s sin(u s') sin(w s') ds'
    // = (sinc_s(u - w) +- sinc_s(u + w)) / 2, with sinc_s(x) = sin(x s) / x.
    //
    // The range is cut into half periods [k pi/s, (k+1) pi/s] integrated in the local
    // variable v = u - k pi/s, so sin(u s) = (-1)^k sin(v s) carries no rounding from the
    // large phase k pi.
    auto integrate = [&](double s, bool noise) {
        const double period = std::numbers::pi / s;
        const double cws = std::cos(w * s), sws = std::sin(w * s);
        std::vector<double> features{1.0, w};
        if (std::isfinite(sb.theta) && sb.theta > 0.0) features.push_back(1.0 / sb.theta);

        std::vector<detail::Piece> pieces;
        for (long k = 0;; ++k) {
            const double origin = static_cast<double>(k) * period;
            if (origin >= cut) break;
            const double len = std::min(period, cut - origin);
            std::vector<double> cuts{0.0, len};
            for (double x : features)
                if (x > origin && x < origin + len) cuts.push_back(x - origin);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back({origin, cuts[i], cuts[i + 1], k});
        }

        auto f = [&](const detail::Piece& p, double v) {
            const double u = p.origin + v;
            const double parity = (p.tag % 2) ? -1.0 : 1.0;
            const double su = parity * std::sin(v * s), cu = parity * std::cos(v * s);
            auto sinc = [&](double x, double sin_xs) {
                const double xs = x * s;
                if (std::abs(xs) < 1e-4) return s * (1.0 - xs * xs / 6.0);
                return sin_xs / x;
            };
            // small phases are evaluated directly, large ones from the exact decomposition
            const double xm = (p.origin - w) + v;
            const double minus = sinc(xm, std::abs(xm * s) < 100.0 ? std::sin(xm * s) : su * cws - cu * sws);
            const double xp = u + w;
            const double plus = sinc(xp, std::abs(xp * s) < 100.0 ? std::sin(xp * s) : su * cws + cu * sws);
            return noise ? sb.noise_weight(u) * (minus + plus) : sb.dissipation_weight(u) * (minus - plus);
        };
        const auto r = detail::integrate_pieces<31>(f, pieces, kQuadratureTolerance, 4000 + 2 * pieces.size());
        if (!r.converged) {
            std::ostringstream os;
            os << (noise ? "Delta" : "gamma") << " quadrature did not converge at Lambda*t = " << s
               << " (error " << r.error << ", L1 " << r.l1 << ")";
            throw QuadratureError(os.str());
        }
        return r.value;
    };

    TransientCoefficients out;
    out.times.assign(times.begin(), times.end());
    for (double t : times) {
        const double s = bath.cutoff * t;
        out.delta.push_back(s > 0.0 ? bath.cutoff * integrate(s, true) : 0.0);
        out.gamma.push_back(s > 0.0 ? bath.cutoff * integrate(s, false) : 0.0);
    }
    return out;
}

}  // namespace mzbath
