// qmath.hpp - two-level density matrices and quantum-information measures
//
// All entropies are in bits (log base 2), so the maximally mixed qubit has S = 1.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace mzbath {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

namespace tol {
inline constexpr double kTrace = 1e-12;
inline constexpr double kPositivity = 1e-12;
inline constexpr double kSupportEigen = 1e-15;
inline constexpr double kSupportWeight = 1e-12;
}  // namespace tol

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix.
///
/// Construction hermitizes the input as (A + A^dagger)/2 and then validates
/// trace and positivity. Instances are immutable.
class DensityMatrix {
  public:
    static constexpr int kDim = 2;

    /// Throws TraceError or PositivityError.
    static DensityMatrix from_elements(const Matrix2c& elements);
    static DensityMatrix diagonal(double p0, double p1);
    static DensityMatrix maximally_mixed();
    /// |k><k| for k in {0, 1}
    static DensityMatrix basis_state(int k);

    const Matrix2c& matrix() const noexcept { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }
    double population(int i) const { return m_(i, i).real(); }
    /// <0|rho|1>
    Complex coherence() const { return m_(0, 1); }
    double trace() const { return m_(0, 0).real() + m_(1, 1).real(); }

    friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) { return a.m_ == b.m_; }

  private:
    explicit DensityMatrix(const Matrix2c& m) : m_(m) {}
    Matrix2c m_;
};

/// Validating constructor; same as DensityMatrix::from_elements.
DensityMatrix new_density_matrix(const Matrix2c& elements);

/// (A + A^dagger)/2
Matrix2c hermitize(const Matrix2c& a);

struct Eigenvalues2 {
    double upper;
    double lower;
};

/// Closed-form eigenvalues of a 2x2 Hermitian matrix, upper >= lower.
Eigenvalues2 hermitian_eigenvalues(const Matrix2c& a);

/// Eigenvalues of a density matrix, clamped into [0, 1]; upper + lower = 1.
Eigenvalues2 eigenvalues2(const DensityMatrix& rho);

struct SpectralDecomposition {
    std::array<double, 2> eigenvalues;  // descending
    Matrix2c eigenvectors;              // column k pairs with eigenvalues[k]
};

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho);

/// -p log2 p with 0 log 0 := 0; tiny negative p is treated as 0.
double entropy_term(double p);

/// Shannon entropy of the distribution (p, 1 - p), in bits.
double binary_entropy(double p);

double von_neumann_entropy(const DensityMatrix& rho);

/// Tr[rho log2 rho - rho log2 sigma]. Throws SupportError when supp(rho) is
/// not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Projection onto the diagonal of the computational basis.
DensityMatrix dephase(const DensityMatrix& rho);

/// S(dephase(rho)) - S(rho)
double distillable_coherence(const DensityMatrix& rho);

/// 1 - Tr[rho^2]
double mixedness(const DensityMatrix& rho);

}  // namespace mzbath
