#pragma once

#include <array>
#include <span>
#include <vector>

#include "ptcross/core.hpp"
#include "ptcross/model.hpp"
#include "ptcross/spectral.hpp"

namespace ptcross {

enum class MetricParametrization {
    Nullspace,     // Frobenius-orthonormal basis of the constraint null space
    EliminationT,  // coordinates t1..t4 = first-row elements
    SpectralKappa, // weights of |Xi_j><Xi_j|
};

/// A linear family of Hermitian solutions of H^dagger Theta = Theta H.
struct MetricFamily {
    std::vector<Matrix> basis;
    MetricParametrization parametrization = MetricParametrization::Nullspace;

    [[nodiscard]] int family_dim() const { return static_cast<int>(basis.size()); }
    /// sum_k coords[k] * basis[k]
    [[nodiscard]] Matrix combine(std::span<const double> coords) const;
};

struct SignatureReport {
    int n_plus = 0;
    int n_zero = 0;
    int n_minus = 0;
    bool positive_definite = false;
    double min_eigenvalue = 0.0;
};

/// Frobenius norm of H^dagger Theta - Theta H.
double constraint_residual(const Matrix& h, const Matrix& theta);

/// constraint_residual <= rel_tol * |H|_F * |Theta|_F
bool satisfies_constraint(const Matrix& h, const Matrix& theta, double rel_tol = 1e-10);

/// All Hermitian Theta with H^dagger Theta = Theta H.
///
/// The constraint is flattened into a real 2 dim^2 x dim^2 system over the
/// Hermitian matrices; singular values at or below tol * sigma_max span the
/// null space.
MetricFamily solve_metric_space(const Matrix& h, double tol = 1e-10);

/// Theta = sum_j kappa_j |Xi_j><Xi_j| over unit-norm eigenvectors of H^dagger.
/// Throws DomainError if the spectrum is not real, H is not diagonalizable,
/// or some kappa is not positive.
Matrix metric_from_left_eigenvectors(const Matrix& h, std::span<const double> kappas, double tol = 1e-9);

/// Same construction from a decomposition computed elsewhere.
Matrix metric_from_decomposition(const Eigendecomposition& eig, std::span<const double> kappas);

/// The family sum_j kappa_j |Xi_j><Xi_j| with one basis element per eigenvector.
MetricFamily spectral_family(const Matrix& h, double tol = 1e-9);

/// Closed-form solution parametrized by its first row t = (t1, t2, t3, t4).
/// Requires real couplings with alpha != -1 and beta != -1.
Matrix closed_form_theta(const ModelParams& p, const std::array<double, 4>& t);

/// closed_form_theta at the four unit coordinate vectors.
MetricFamily elimination_family(const ModelParams& p);

/// diag((1+a)(1+b)/(1-b), 1+a, 1-a, (1-a)(1-b)/(1+b)) * t1.
/// Requires real couplings with beta != +-1.
Matrix diagonal_metric(const ModelParams& p, double t1 = 1.0);

/// Inertia with eigenvalues counted as zero within tol * max|entry|.
/// Throws Error for a non-Hermitian argument.
SignatureReport signature(const Matrix& theta, double tol = 1e-10);

/// <phi| Theta |psi>
Complex inner_product_S(const Vector& phi, const Vector& psi, const Matrix& theta);

/// Principal square root of a Hermitian positive-definite matrix.
Matrix metric_sqrt(const Matrix& theta);

/// Omega H Omega^{-1} with Omega = metric_sqrt(theta). Hermitian whenever
/// theta is a valid metric for H.
Matrix hermitize(const Matrix& h, const Matrix& theta);

/// Relative Frobenius residual of the least-squares projection of theta onto
/// span(basis), computed over the real space of Hermitian matrices.
double span_residual(const Matrix& theta, std::span<const Matrix> basis);

} // namespace ptcross
