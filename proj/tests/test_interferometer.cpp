#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mzbath/dynamics.hpp"
#include "mzbath/errors.hpp"
#include "mzbath/interferometer.hpp"
#include "test_support.hpp"

using namespace mzbath;
using testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

InterferometerConfig config_with(double phi, double n, double omega = 1e12, double rate = 1e10) {
    return InterferometerConfig::with_defaults(phi, omega, MarkovParameters{rate, n});
}

// time at which eta takes the given value
double time_for_eta(const InterferometerConfig& c, double eta) {
    return -std::log(eta) / c.markov.decoherence_rate();
}

double late(const InterferometerConfig& c) { return 1e3 / c.markov.decoherence_rate(); }

}  // namespace

TEST_CASE("state after the first beamsplitter") {
    Matrix2c expected;
    expected << 0.5, -0.5 * I, 0.5 * I, 0.5;
    CHECK(max_abs_diff(prepare_after_bs1(0.0).matrix(), expected) == 0.0);

    expected << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_abs_diff(prepare_after_bs1(kPi / 2).matrix(), expected) <= 1e-16);

    for (double phi : {-2.0, 0.3, 1.7, 4.0}) {
        const auto ev = eigenvalues2(prepare_after_bs1(phi));
        CHECK(ev.upper == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(mixedness(prepare_after_bs1(phi))) <= 1e-15);
    }
}

TEST_CASE("second beamsplitter") {
    CHECK(apply_bs2(DensityMatrix::maximally_mixed()) == DensityMatrix::maximally_mixed());

    // U^2 = i * swap, so two passes swap the ports
    const auto twice = apply_bs2(apply_bs2(DensityMatrix::basis_state(0)));
    CHECK(max_abs_diff(twice.matrix(), DensityMatrix::basis_state(1).matrix()) <= 1e-16);

    // agrees with the explicit matrix product
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2c u;
    u << s, s * I, s * I, s;
    std::mt19937_64 rng(41);
    for (int k = 0; k < 1000; ++k) {
        const auto rho = testing::random_density_matrix(rng);
        const auto out = apply_bs2(rho);
        REQUIRE(max_abs_diff(out.matrix(), u * rho.matrix() * u.adjoint()) <= 1e-15);
        const auto a = eigenvalues2(rho), b = eigenvalues2(out);
        REQUIRE(std::abs(a.upper - b.upper) <= 1e-14);
        REQUIRE(std::abs(mixedness(rho) - mixedness(out)) <= 1e-14);
    }
}

TEST_CASE("pipeline state matches the measurement-basis formula") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const auto c = config_with(2.0 * kPi * u(rng), 20.0 * u(rng));
        const double t = 3.0 * u(rng) / c.markov.decoherence_rate();
        const double eta = decoherence_factor(c.markov, t);
        const double f = c.markov.thermal_factor();
        const auto rho = pipeline_state(c, t);
        REQUIRE(std::abs(rho.population(0) - 0.5 * (1.0 - eta * std::cos(c.phase))) <= 1e-14);
        REQUIRE(std::abs(rho.population(1) - 0.5 * (1.0 + eta * std::cos(c.phase))) <= 1e-14);
        // off-diagonal is the conjugate of the printed form i q + eta sin(phi)/2
        const Complex printed = I * (1.0 - eta * eta) / (2.0 * f) + 0.5 * eta * std::sin(c.phase);
        REQUIRE(std::abs(rho(0, 1) - std::conj(printed)) <= 1e-14);
        // brute-force eigenvalue oracle
        const auto ev = testing::generic_eigenvalues(rho.matrix());
        const double radius = 0.5 * std::sqrt(eta * eta + std::pow((1.0 - eta * eta) / f, 2));
        REQUIRE(std::abs(ev[0] - (0.5 + radius)) <= 1e-14);
        REQUIRE(std::abs(eigenvalues2(rho).upper - (0.5 + radius)) <= 1e-14);
    }
}

TEST_CASE("detector probabilities") {
    const auto c0 = config_with(0.0, 1.0);
    const auto p = detector_probabilities(pipeline_state(c0, 0.0));
    CHECK(p.d1 == 0.0);
    CHECK(p.d2 == 1.0);

    const auto q = detector_probabilities(pipeline_state(c0, late(c0)));
    CHECK(q.d1 == 0.5);
    CHECK(q.d2 == 0.5);

    const auto cpi = config_with(kPi, 1.0);
    const auto r = detector_probabilities(pipeline_state(cpi, 0.0));
    CHECK(r.d1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.d2 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("momentum distribution special cases") {
    const auto grid = momentum_grid(config_with(0.0, 1.0));
    {
        const auto c = config_with(0.0, 1.0);
        const auto d = momentum_distribution(c, 0.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            REQUIRE(d.density[i] == doctest::Approx(momentum_envelope(grid[i], c.system_frequency)).epsilon(1e-14));
    }
    {
        const auto c = config_with(kPi / 2, 1.0);
        const auto d = momentum_distribution(c, 0.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double env = momentum_envelope(grid[i], c.system_frequency);
            REQUIRE(std::abs(d.density[i] - env * (1.0 + std::cos(grid[i] * c.path_difference))) <= 1e-14 * env + 1e-300);
        }
    }
    for (double phi : {0.0, 1.0, 2.0}) {
        const auto c = config_with(phi, 3.0);
        const auto d = momentum_distribution(c, late(c), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double env = momentum_envelope(grid[i], c.system_frequency);
            const double expected = env * (1.0 - std::sin(grid[i] * c.path_difference) / 7.0);
            REQUIRE(std::abs(d.density[i] - expected) <= 1e-14 * env + 1e-300);
        }
    }
}

TEST_CASE("closed-form and compositional momentum distributions agree") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double omega = std::pow(10.0, 10.0 + 4.0 * u(rng));
        auto c = config_with(2.0 * kPi * u(rng), 15.0 * u(rng), omega, 1e9);
        c.path_difference *= 1.0 + u(rng);
        const double t = 2.0 * u(rng) / c.markov.decoherence_rate();
        std::vector<double> grid(1000);
        const double half = 8.0 * std::sqrt(omega);
        for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -half + 2.0 * half * i / 999.0;
        const auto a = momentum_distribution(c, t, grid);
        const auto b = momentum_distribution_compositional(c, t, grid);
        const double peak = momentum_envelope(0.0, omega);
        for (std::size_t i = 0; i < grid.size(); ++i)
            REQUIRE(std::abs(a.density[i] - b.density[i]) <= 1e-12 * peak);
        const double area = trapezoid(a);
        REQUIRE(std::abs(area - 1.0) <= 1e-6 + c.pointer_overlap());
        for (double v : a.density) REQUIRE(v >= 0.0);
    }
}

TEST_CASE("separation invariants are enforced") {
    auto c = config_with(0.0, 1.0);
    c.path_difference = std::sqrt(100.0 / c.system_frequency);
    const std::vector<double> grid{0.0};
    CHECK_THROWS_AS(momentum_distribution(c, 0.0, grid), ConfigError);
    c = config_with(0.0, 1.0);
    c.pointer_separation *= 0.5;
    CHECK_THROWS_AS(position_distribution(c, 0.0, grid), ConfigError);
    try {
        c.validate();
    } catch (const ConfigError& e) {
        CHECK(e.field == "pointer_separation");
    }
}

TEST_CASE("position distribution") {
    const auto c = config_with(0.0, 2.0);
    const auto grid = position_grid(c);
    const auto start = position_distribution(c, 0.0, grid);
    CHECK(std::abs(trapezoid(start) - 1.0) <= 1e-9);
    const auto peak = std::max_element(start.density.begin(), start.density.end()) - start.density.begin();
    CHECK(grid[static_cast<std::size_t>(peak)] == doctest::Approx(-c.pointer_separation).epsilon(1e-2));
    // nothing near +x0
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] > 0.0) REQUIRE(start.density[i] <= 1e-12 * start.density[static_cast<std::size_t>(peak)]);

    const auto end = position_distribution(c, late(c), grid);
    CHECK(std::abs(trapezoid(end) - 1.0) <= 1e-9);
    const auto n = grid.size();
    for (std::size_t i = 0; i < n; ++i) REQUIRE(end.density[i] == doctest::Approx(end.density[n - 1 - i]).epsilon(1e-9));

    // peak weights equal detector probabilities
    const auto cp = config_with(0.8, 1.0);
    const double t = time_for_eta(cp, 0.4);
    const auto probs = detector_probabilities(pipeline_state(cp, t));
    const auto d = position_distribution(cp, t, grid);
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double area = 0.5 * (grid[i + 1] - grid[i]) * (d.density[i] + d.density[i + 1]);
        (grid[i] < 0.0 ? left : right) += area;
    }
    CHECK(right == doctest::Approx(probs.d1).epsilon(1e-9));
    CHECK(left == doctest::Approx(probs.d2).epsilon(1e-9));
}

TEST_CASE("fringe visibility") {
    CHECK(fringe_visibility(config_with(kPi / 2, 1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fringe_visibility(config_with(0.0, 1.0), 0.0) == 0.0);
    for (double n : {0.1, 1.0, 12.6}) {
        for (double phi : {0.0, 1.0, 3.0}) {
            const auto c = config_with(phi, n);
            CHECK(fringe_visibility(c, late(c)) == doctest::Approx(1.0 / (2.0 * n + 1.0)).epsilon(1e-14));
        }
    }
    // max/min of the envelope-normalized fringe factor on a dense grid
    const auto c = config_with(0.7, 0.5);
    const double t = time_for_eta(c, 0.6);
    const auto f = fringe_coefficients(c, t);
    double hi = -1e300, lo = 1e300;
    for (int i = 0; i <= 200000; ++i) {
        const double x = 2.0 * kPi * i / 200000.0;
        const double v = 1.0 + f.sine * std::sin(x) + f.cosine * std::cos(x);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    CHECK(fringe_visibility(c, t) == doctest::Approx((hi - lo) / (hi + lo)).epsilon(1e-9));
}

TEST_CASE("visibility at phi = 0 grows toward the residual fringe amplitude") {
    const auto c = config_with(0.0, 2.0);
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = 10.0 * i / 400.0 / c.markov.decoherence_rate();
        const double v = fringe_visibility(c, t);
        REQUIRE(v >= prev - 1e-12);
        REQUIRE(v <= 1.0 / 5.0 + 1e-12);
        prev = v;
    }
}

TEST_CASE("momentum grid hits fringe extrema") {
    const auto c = config_with(kPi / 2, 1.0);
    const auto grid = momentum_grid(c);
    const auto d = momentum_distribution(c, 0.0, grid);
    double hi = 0.0, lo = 1e300;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double factor = d.density[i] / momentum_envelope(grid[i], c.system_frequency);
        hi = std::max(hi, factor);
        lo = std::min(lo, factor);
    }
    CHECK(std::abs((hi - lo) / (hi + lo) - 1.0) <= 1e-9);
}
