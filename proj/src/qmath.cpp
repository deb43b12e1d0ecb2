#include "mzbath/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mzbath/errors.hpp"

namespace mzbath {

Matrix2c hermitize(const Matrix2c& a) {
    Matrix2c h;
    h(0, 0) = Complex(a(0, 0).real(), 0.0);
    h(1, 1) = Complex(a(1, 1).real(), 0.0);
    h(0, 1) = 0.5 * (a(0, 1) + std::conj(a(1, 0)));
    h(1, 0) = std::conj(h(0, 1));
    return h;
}

Eigenvalues2 hermitian_eigenvalues(const Matrix2c& a) {
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double half_gap = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double radius = std::hypot(half_gap, std::abs(a(0, 1)));
    return {mean + radius, mean - radius};
}

DensityMatrix DensityMatrix::from_elements(const Matrix2c& elements) {
    const Matrix2c h = hermitize(elements);
    const double tr = h(0, 0).real() + h(1, 1).real();
    if (!std::isfinite(tr) || std::abs(tr - 1.0) > tol::kTrace) {
        std::ostringstream os;
        os << "density matrix trace " << tr << " differs from 1";
        throw TraceError(os.str());
    }
    const auto ev = hermitian_eigenvalues(h);
    if (!(ev.lower >= -tol::kPositivity)) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << ev.lower;
        throw PositivityError(os.str());
    }
    return DensityMatrix(h);
}

DensityMatrix DensityMatrix::diagonal(double p0, double p1) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = p0;
    m(1, 1) = p1;
    return from_elements(m);
}

DensityMatrix DensityMatrix::maximally_mixed() { return diagonal(0.5, 0.5); }

DensityMatrix DensityMatrix::basis_state(int k) {
    return k == 0 ? diagonal(1.0, 0.0) : diagonal(0.0, 1.0);
}

DensityMatrix new_density_matrix(const Matrix2c& elements) {
    return DensityMatrix::from_elements(elements);
}

Eigenvalues2 eigenvalues2(const DensityMatrix& rho) {
    const Matrix2c& m = rho.matrix();
    const double half_gap = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const double radius = std::min(0.5, std::hypot(half_gap, std::abs(m(0, 1))));
    const double upper = 0.5 + radius;
    return {upper, std::max(0.0, 0.5 - radius)};
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho) {
    const Matrix2c& m = rho.matrix();
    const auto ev = eigenvalues2(rho);
    SpectralDecomposition out{{ev.upper, ev.lower}, Matrix2c::Identity()};

    const Complex b = m(0, 1);
    if (std::abs(b) == 0.0) {
        if (m(1, 1).real() > m(0, 0).real()) {
            out.eigenvectors.col(0) = Vector2c(0.0, 1.0);
            out.eigenvectors.col(1) = Vector2c(1.0, 0.0);
        }
        return out;
    }
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    for (int k = 0; k < 2; ++k) {
        const double lambda = out.eigenvalues[k];
        // (H - lambda) v = 0 admits v = (b, lambda - a) and (lambda - d, conj b);
        // pick the better-conditioned one.
        Vector2c v1(b, lambda - a);
        Vector2c v2(lambda - d, std::conj(b));
        Vector2c v = v1.norm() >= v2.norm() ? v1 : v2;
        out.eigenvectors.col(k) = v / v.norm();
    }
    return out;
}

double entropy_term(double p) {
    if (p <= 0.0) return 0.0;
    return -p * std::log2(p);
}

double binary_entropy(double p) { return entropy_term(p) + entropy_term(1.0 - p); }

double von_neumann_entropy(const DensityMatrix& rho) {
    const auto ev = eigenvalues2(rho);
    return entropy_term(ev.upper) + entropy_term(ev.lower);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho == sigma) return 0.0;
    const auto sd = spectral_decomposition(sigma);
    double cross = 0.0;  // Tr[rho log2 sigma]
    for (int k = 0; k < 2; ++k) {
        const Vector2c w = sd.eigenvectors.col(k);
        const double weight = (w.adjoint() * rho.matrix() * w)(0, 0).real();
        const double mu = sd.eigenvalues[k];
        if (mu < tol::kSupportEigen) {
            if (weight >= tol::kSupportWeight) {
                std::ostringstream os;
                os << "relative entropy undefined: rho has weight " << weight
                   << " on a null direction of sigma";
                throw SupportError(os.str());
            }
            continue;
        }
        cross += weight * std::log2(mu);
    }
    return -von_neumann_entropy(rho) - cross;
}

DensityMatrix dephase(const DensityMatrix& rho) {
    return DensityMatrix::diagonal(rho.population(0), rho.population(1));
}

double distillable_coherence(const DensityMatrix& rho) {
    return entropy_term(rho.population(0)) + entropy_term(rho.population(1)) - von_neumann_entropy(rho);
}

double mixedness(const DensityMatrix& rho) {
    const Matrix2c& m = rho.matrix();
    const double purity = m(0, 0).real() * m(0, 0).real() + m(1, 1).real() * m(1, 1).real() +
                          2.0 * std::norm(m(0, 1));
    return 1.0 - purity;
}

}  // namespace mzbath
