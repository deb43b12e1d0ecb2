#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mzbath/errors.hpp"
#include "mzbath/interferometer.hpp"
#include "mzbath/thermo.hpp"
#include "test_support.hpp"

using namespace mzbath;

namespace {

InterferometerConfig config_with(double phi, double n, double rate = 1e10) {
    return InterferometerConfig::with_defaults(phi, 1e12, MarkovParameters{rate, n});
}

Trajectory pipeline_trajectory(const InterferometerConfig& c, double span_factor, int samples) {
    Trajectory traj;
    for (int i = 0; i <= samples; ++i) {
        const double t = span_factor * i / samples / c.markov.decoherence_rate();
        traj.times.push_back(t);
        traj.states.push_back(bath_evolved_state(c, t));
    }
    return traj;
}

}  // namespace

TEST_CASE("closed-form entropy") {
    CHECK(entropy_closed_form(1.0, 3.0) == 0.0);
    CHECK(entropy_closed_form(0.0, 1.0) == doctest::Approx(0.9182958340544896).epsilon(1e-13));
    CHECK(std::abs(entropy_closed_form(0.0, 1e6) - 1.0) <= 1e-6);
    CHECK_THROWS_AS(entropy_closed_form(1.5, 1.0), DomainError);
    CHECK_THROWS_AS(entropy_closed_form(0.5, -1.0), DomainError);
}

TEST_CASE("closed-form entropy matches the eigen oracle and is phase independent") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double n = 20.0 * u(rng);
        const auto c = config_with(2.0 * std::numbers::pi * u(rng), n, 1e8 + 1e11 * u(rng));
        const double t = 4.0 * u(rng) / c.markov.decoherence_rate();
        const double eta = decoherence_factor(c.markov, t);
        const double f = 2.0 * n + 1.0;
        const double identity = eta * eta + std::pow((1.0 - eta * eta) / f, 2);
        REQUIRE(std::abs(entropy_radicand(eta, n) - identity) <= 1e-14);
        const double oracle = testing::generic_entropy(pipeline_state(c, t).matrix());
        REQUIRE(std::abs(entropy_closed_form(eta, n) - oracle) <= 1e-12);
    }
}

TEST_CASE("asymptotic and remained entropy") {
    CHECK(asymptotic_entropy(0.0) == 0.0);
    CHECK(asymptotic_entropy(1.0) == doctest::Approx(0.9182958340544896).epsilon(1e-14));
    CHECK(std::abs(asymptotic_entropy(1e6) - 1.0) <= 1e-6);
    CHECK(remained_entropy(0.0) == 1.0);
    CHECK(remained_entropy(1.0) == doctest::Approx(0.08170416594551044).epsilon(1e-12));
    CHECK(remained_entropy(1e8) <= 1e-12);

    double prev_s = -1.0, prev_r = 2.0;
    for (double n = 1e-3; n < 1e3; n *= 1.3) {
        REQUIRE(std::abs(asymptotic_entropy(n) - entropy_closed_form(0.0, n)) <= 1e-14);
        REQUIRE(asymptotic_entropy(n) > prev_s);
        REQUIRE(remained_entropy(n) < prev_r);
        REQUIRE(remained_entropy(n) + asymptotic_entropy(n) == 1.0);
        prev_s = asymptotic_entropy(n);
        prev_r = remained_entropy(n);
    }
}

TEST_CASE("Hatano-Sasa bound") {
    const auto gibbs = gibbs_state(2.0, 1e12);
    const auto rho = prepare_after_bs1(0.4);
    CHECK(hatano_sasa_bound(rho, rho, gibbs) == 0.0);

    // populations unchanged (pure dephasing): bound vanishes
    Matrix2c dephased = rho.matrix();
    dephased(0, 1) *= 0.3;
    dephased(1, 0) *= 0.3;
    CHECK(hatano_sasa_bound(rho, DensityMatrix::from_elements(dephased), gibbs) == 0.0);

    CHECK_THROWS_AS(hatano_sasa_bound(rho, rho, gibbs_state(0.0, 1e12)), SupportError);

    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double n = 0.01 + 15.0 * u(rng);
        const MarkovParameters m{1e10, n};
        const auto rho0 = prepare_after_bs1(2.0 * std::numbers::pi * u(rng));
        const auto rhot = evolve_analytic(rho0, m, 5.0 * u(rng) / m.decoherence_rate());
        const double change = von_neumann_entropy(rhot) - von_neumann_entropy(rho0);
        REQUIRE(change >= hatano_sasa_bound(rho0, rhot, gibbs_state(n, 1e12)) - 1e-10);
    }
}

TEST_CASE("second-law check") {
    for (double phi : {0.0, 0.8, std::numbers::pi / 2}) {
        for (double n : {0.1, 1.0, 12.6}) {
            const auto r = second_law_check(pipeline_trajectory(config_with(phi, n), 10.0, 200));
            CHECK(r.passed);
            CHECK_FALSE(r.first_violation.has_value());
        }
    }
    Trajectory flat;
    for (int i = 0; i < 5; ++i) {
        flat.times.push_back(i);
        flat.states.push_back(DensityMatrix::diagonal(0.3, 0.7));
    }
    CHECK(second_law_check(flat).passed);

    auto reversed = pipeline_trajectory(config_with(std::numbers::pi / 2, 1.0), 10.0, 50);
    std::reverse(reversed.states.begin(), reversed.states.end());
    const auto r = second_law_check(reversed);
    CHECK_FALSE(r.passed);
    REQUIRE(r.first_violation.has_value());
    CHECK(*r.first_violation > 0);
}

TEST_CASE("quadratures and heat") {
    const auto q = quadratures(1e12);
    CHECK(q.position_sq == 5e-13);
    CHECK(q.momentum_sq == 5e11);
    CHECK(internal_energy(1e12) == 0.5e12);

    const auto traj = pipeline_trajectory(config_with(0.5, 2.0), 20.0, 100);
    for (double h : heat_rate(traj, 1e12)) CHECK(std::abs(h) <= 1e-12);
}

TEST_CASE("thermo series along the interferometer") {
    const double n = 1.0;
    const auto c = config_with(std::numbers::pi / 4, n);
    const auto traj = pipeline_trajectory(c, 40.0, 400);
    const auto s = thermo_series(traj, c.system_frequency);
    REQUIRE(s.entropy.size() == traj.states.size());
    CHECK(s.entropy.front() == doctest::Approx(0.0).epsilon(1e-15));
    for (std::size_t i = 0; i < s.entropy.size(); ++i) {
        REQUIRE(s.entropy_change[i] == s.entropy[i] - s.entropy[0]);
        REQUIRE(s.entropy_change[i] >= -1e-12);
        if (i > 0) REQUIRE(s.distillable_coherence[i] <= s.distillable_coherence[i - 1] + 1e-10);
    }
    CHECK(std::abs(s.entropy_change.back() - asymptotic_entropy(n)) <= 1e-6);
}

TEST_CASE("colder baths keep more coherence") {
    for (double t_units : {0.05, 0.3, 1.0}) {
        const double t = t_units / 1e10;
        const auto cold = config_with(0.0, 0.1);
        const auto hot = config_with(0.0, 12.6);
        CHECK(distillable_coherence(bath_evolved_state(cold, t)) >
              distillable_coherence(bath_evolved_state(hot, t)));
    }
}
