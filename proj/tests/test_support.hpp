// test_support.hpp - random state generators and independent oracles for the unit tests

#pragma once

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "mzbath/qmath.hpp"

namespace mzbath::testing {

/// Uniform point in the Bloch ball mapped to a density matrix.
inline DensityMatrix random_density_matrix(std::mt19937_64& rng, double max_radius = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double x, y, z;
    do {
        x = u(rng);
        y = u(rng);
        z = u(rng);
    } while (x * x + y * y + z * z > 1.0);
    x *= max_radius;
    y *= max_radius;
    z *= max_radius;
    Matrix2c m;
    m << 0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z);
    return DensityMatrix::from_elements(m);
}

/// Eigenvalues from Eigen's generic Hermitian solver, descending.
inline std::array<double, 2> generic_eigenvalues(const Matrix2c& m) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(m, Eigen::EigenvaluesOnly);
    const auto ev = solver.eigenvalues();
    return {ev(1), ev(0)};
}

/// -sum lambda log2 lambda using the generic solver.
inline double generic_entropy(const Matrix2c& m) {
    double s = 0.0;
    for (double l : generic_eigenvalues(m))
        if (l > 0.0) s -= l * std::log2(l);
    return s;
}

inline double max_abs_diff(const Matrix2c& a, const Matrix2c& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Midpoint rule with n panels on [a, b].
template <class F>
double midpoint_sum(F&& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    long double sum = 0.0L;
    for (long i = 0; i < n; ++i) sum += f(a + (static_cast<double>(i) + 0.5) * h);
    return static_cast<double>(sum * h);
}

}  // namespace mzbath::testing
