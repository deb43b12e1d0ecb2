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
using testing::random_density_matrix;

namespace {

// The initial interferometer state written out by hand.
DensityMatrix initial_state(double phi) {
    const Complex i(0.0, 1.0);
    Matrix2c m;
    m << 0.5, -0.5 * i * std::exp(i * phi), 0.5 * i * std::exp(-i * phi), 0.5;
    return DensityMatrix::from_elements(m);
}

// Bath-evolved interferometer state as an explicit formula in eta and n.
Matrix2c evolved_formula(double phi, double eta, double n) {
    const Complex i(0.0, 1.0);
    const double f = 2.0 * n + 1.0;
    Matrix2c m;
    m << (2.0 * (n + 1.0) - eta * eta) / (2.0 * f), -0.5 * i * eta * std::exp(i * phi),
        0.5 * i * eta * std::exp(-i * phi), (2.0 * n + eta * eta) / (2.0 * f);
    return m;
}

}  // namespace

TEST_CASE("Markov coefficient mapping") {
    const MarkovParameters m{3.0e9, 2.5};
    const auto c = LindbladCoefficients::from_markov(m);
    CHECK(c.emission_rate() == doctest::Approx(2.0 * m.rate * (m.occupation + 1.0)).epsilon(1e-12));
    CHECK(c.absorption_rate() == doctest::Approx(2.0 * m.rate * m.occupation).epsilon(1e-12));
    CHECK(c.lindblad_type());
    CHECK_FALSE(LindbladCoefficients{1.0, 2.0}.lindblad_type());
}

TEST_CASE("lindblad_rhs") {
    const auto rho = initial_state(0.3);
    CHECK(lindblad_rhs(rho, {0.0, 0.0}).isZero(0.0));

    const MarkovParameters m{1e9, 1.3};
    const auto c = LindbladCoefficients::from_markov(m);
    const auto gibbs = gibbs_state(m.occupation, 1e12);
    CHECK(lindblad_rhs(gibbs.matrix, c).cwiseAbs().maxCoeff() <= 1e-14 * m.rate);

    std::mt19937_64 rng(23);
    for (int k = 0; k < 1000; ++k) {
        const auto d = lindblad_rhs(random_density_matrix(rng), c);
        REQUIRE(std::abs(d.trace()) <= 1e-14 * m.rate);
        REQUIRE(max_abs_diff(d, d.adjoint()) <= 1e-14 * m.rate);
    }
}

TEST_CASE("lindblad_rhs matches a finite difference of the analytic propagator at t = 0") {
    const MarkovParameters m{1.0, 0.7};  // unit rate keeps the step dimensionless
    const auto c = LindbladCoefficients::from_markov(m);
    for (double phi : {0.0, 0.9, std::numbers::pi / 2}) {
        const auto rho = initial_state(phi);
        const double h = 1e-5;
        const Matrix2c fd = (evolve_analytic(rho, m, 2 * h).matrix() * -1.0 +
                             evolve_analytic(rho, m, h).matrix() * 4.0 - 3.0 * rho.matrix()) /
                            (2.0 * h);
        CHECK(max_abs_diff(fd, lindblad_rhs(rho, c)) <= 1e-8);
        // coherence decays at Gamma (2n + 1)
        CHECK(std::abs(lindblad_rhs(rho, c)(0, 1) + m.decoherence_rate() * rho(0, 1)) <= 1e-15);
    }
}

TEST_CASE("decoherence factor") {
    const MarkovParameters m{2.0, 1.0};
    CHECK(decoherence_factor(m, 0.0) == 1.0);
    CHECK(decoherence_factor(m, std::log(2.0) / m.decoherence_rate()) == doctest::Approx(0.5).epsilon(1e-15));
    // exponent ~ -3894: flushed to zero
    CHECK(decoherence_factor({9.901e9, 12.60}, 1.5e-8) == 0.0);
    CHECK_THROWS_AS(decoherence_factor(m, -1.0), DomainError);
}

TEST_CASE("analytic propagator") {
    const MarkovParameters m{5e9, 2.0};
    for (double phi : {0.0, 1.1, 2.5}) {
        const auto rho0 = initial_state(phi);
        CHECK(evolve_analytic(rho0, m, 0.0) == rho0);
        for (double t : {1e-12, 3e-11, 2e-10}) {
            const double eta = decoherence_factor(m, t);
            CHECK(max_abs_diff(evolve_analytic(rho0, m, t).matrix(), evolved_formula(phi, eta, m.occupation)) <=
                  1e-14);
        }
        const auto late = evolve_analytic(rho0, m, 1.0);
        CHECK(late == gibbs_state(m.occupation, 1e12).matrix);
    }
}

TEST_CASE("analytic propagator is a semigroup") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const MarkovParameters m{1.0, 5.0 * u(rng)};
        const auto rho = random_density_matrix(rng);
        const double t1 = u(rng) / m.decoherence_rate();
        const double t2 = 2.0 * u(rng) / m.decoherence_rate();
        const auto two_step = evolve_analytic(evolve_analytic(rho, m, t1), m, t2);
        REQUIRE(max_abs_diff(two_step.matrix(), evolve_analytic(rho, m, t1 + t2).matrix()) <= 1e-12);
    }
}

TEST_CASE("analytic map contracts relative entropy") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const MarkovParameters m{1.0, 0.05 + 10.0 * u(rng)};
        const auto rho = random_density_matrix(rng, 0.999);
        const auto sigma = random_density_matrix(rng, 0.999);
        const double t = 3.0 * u(rng) / m.decoherence_rate();
        const double before = relative_entropy(rho, sigma);
        const double after = relative_entropy(evolve_analytic(rho, m, t), evolve_analytic(sigma, m, t));
        REQUIRE(after <= before + 1e-10);
    }
}

TEST_CASE("every state relaxes to the Gibbs state") {
    std::mt19937_64 rng(37);
    for (double n : {0.1, 1.0, 12.6}) {
        const MarkovParameters m{1e10, n};
        const auto target = gibbs_state(n, 1e12).matrix;
        for (int k = 0; k < 200; ++k) {
            const auto rho = evolve_analytic(random_density_matrix(rng), m, 40.0 / m.decoherence_rate());
            REQUIRE(max_abs_diff(rho.matrix(), target.matrix()) <= 1e-8);
        }
    }
}

TEST_CASE("RK4 with zero coefficients is constant") {
    const auto rho0 = initial_state(0.7);
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0};
    const auto traj = evolve_rk4(rho0, CoefficientSource::constant({0.0, 0.0}), times);
    for (const auto& s : traj.states) CHECK(s == rho0);
}

TEST_CASE("RK4 reproduces the analytic propagator") {
    for (double n : {0.1, 1.0, 12.6}) {
        const MarkovParameters m{1e9, n};
        const auto c = LindbladCoefficients::from_markov(m);
        const auto grid = rk4_time_grid(5.0 / m.decoherence_rate(), c);
        const auto rho0 = initial_state(std::numbers::pi / 4);
        const auto traj = evolve_rk4(rho0, CoefficientSource::constant(c), grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, max_abs_diff(traj.states[i].matrix(),
                                                 evolve_analytic(rho0, m, grid[i]).matrix()));
            REQUIRE(std::abs(traj.states[i].trace() - 1.0) <= 1e-9);
        }
        CHECK(worst <= 1e-8);
        CHECK(traj.trace_drift <= 1e-9);
        CHECK_FALSE(traj.lindblad_violation);
    }
}

TEST_CASE("RK4 keeps the Gibbs state stationary") {
    const MarkovParameters m{1e9, 2.0};
    const auto c = LindbladCoefficients::from_markov(m);
    const auto gibbs = gibbs_state(m.occupation, 1e12).matrix;
    const auto grid = rk4_time_grid(5.0 / m.decoherence_rate(), c);
    const auto traj = evolve_rk4(gibbs, CoefficientSource::constant(c), grid);
    for (const auto& s : traj.states) REQUIRE(max_abs_diff(s.matrix(), gibbs.matrix()) <= 1e-10);
}

TEST_CASE("RK4 rejects oversized steps") {
    const MarkovParameters m{1e9, 1.0};
    const auto c = LindbladCoefficients::from_markov(m);
    const double h = 0.02 / c.emission_rate();
    const std::vector<double> times{0.0, h};
    CHECK_THROWS_AS(evolve_rk4(initial_state(0.0), CoefficientSource::constant(c), times), StepSizeError);
}

TEST_CASE("RK4 flags coefficient sets that break the Lindblad condition") {
    // Delta < gamma: absorption rate negative
    const LindbladCoefficients c{0.5, 1.0};
    const auto grid = rk4_time_grid(0.1, c);
    const auto traj = evolve_rk4(DensityMatrix::basis_state(1), CoefficientSource::constant(c), grid);
    CHECK(traj.lindblad_violation);
}

TEST_CASE("RK4 reports a positivity breakdown") {
    // Negative absorption pushes the ground population beyond 1.
    const LindbladCoefficients c{-1.0, 1.5};
    const auto grid = rk4_time_grid(5.0, {1.0, 1.5});
    CHECK_THROWS_AS(evolve_rk4(DensityMatrix::basis_state(0), CoefficientSource::constant(c), grid),
                    PositivityError);
}

TEST_CASE("interpolated coefficient source") {
    TransientCoefficients table{{0.0, 1.0, 3.0}, {0.0, 2.0, 4.0}, {0.0, 1.0, 1.0}};
    const auto src = CoefficientSource::interpolated(table);
    CHECK(src(0.5).delta == doctest::Approx(1.0));
    CHECK(src(2.0).delta == doctest::Approx(3.0));
    CHECK(src(2.0).gamma == doctest::Approx(1.0));
    CHECK(src(10.0).delta == 4.0);
    CHECK(src(-1.0).delta == 0.0);
    CHECK_THROWS_AS(CoefficientSource::interpolated({{0.0}, {}, {}}), DomainError);
}

TEST_CASE("RK4 with constant interpolated coefficients matches the Markov run") {
    const MarkovParameters m{1e9, 1.0};
    const auto c = LindbladCoefficients::from_markov(m);
    const auto grid = rk4_time_grid(3.0 / m.decoherence_rate(), c);
    TransientCoefficients table{{0.0, grid.back()}, {c.delta, c.delta}, {c.gamma, c.gamma}};
    const auto a = evolve_rk4(initial_state(0.2), CoefficientSource::constant(c), grid);
    const auto b = evolve_rk4(initial_state(0.2), CoefficientSource::interpolated(table), grid);
    CHECK(max_abs_diff(a.states.back().matrix(), b.states.back().matrix()) <= 1e-15);
}

TEST_CASE("Gibbs state") {
    const auto cold = gibbs_state(0.0, 1e12);
    CHECK(cold.matrix == DensityMatrix::diagonal(1.0, 0.0));
    CHECK(std::isinf(cold.inverse_temperature));
    CHECK(cold.free_energy == 0.5e12);

    const auto one = gibbs_state(1.0, 1e12);
    CHECK(one.matrix.population(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(one.matrix.population(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // Boltzmann weights exp(-beta (E - F)) reproduce the populations
    const double e0 = 0.5e12, e1 = 1.5e12;
    CHECK(std::exp(-one.inverse_temperature * (e0 - one.free_energy)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::exp(-one.inverse_temperature * (e1 - one.free_energy)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto hot = gibbs_state(1e6, 1e12);
    CHECK(std::abs(hot.matrix.population(0) - 0.5) <= 1e-6);
    CHECK(std::abs(hot.matrix.population(1) - 0.5) <= 1e-6);

    CHECK_THROWS_AS(gibbs_state(-1.0, 1e12), DomainError);
}
