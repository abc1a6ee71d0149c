#pragma once

#include <array>

#include "ptcross/core.hpp"

namespace ptcross {

/// A point of the two-parameter model.
///
/// The couplings (alpha, beta) and the shifted variables A = 1 - alpha^2,
/// B = 1 - beta^2 describe the same point; C = A + 4B. A and B are kept real,
/// so each coupling is either real or purely imaginary. Constructing from
/// (A, B) uses the principal square root: alpha >= 0 for A <= 1 and
/// alpha = i sqrt(A - 1) for A > 1.
struct ModelParams {
    Complex alpha;
    Complex beta;
    double A = 1.0;
    double B = 1.0;

    [[nodiscard]] double C() const { return A + 4.0 * B; }

    [[nodiscard]] bool real_couplings() const { return alpha.imag() == 0.0 && beta.imag() == 0.0; }

    static ModelParams from_couplings(double alpha, double beta);
    // Each coupling must be real or purely imaginary so that A and B stay real.
    static ModelParams from_couplings(Complex alpha, Complex beta);
    static ModelParams from_AB(double A, double B);
};

/// The 4x4 tridiagonal Hamiltonian: zero diagonal, superdiagonal
/// (-1+beta, -1+alpha, -1+beta), subdiagonal (-1-beta, -1-alpha, -1-beta).
Matrix build_hamiltonian(const ModelParams& p);

/// Antidiagonal unit matrix of the given dimension.
Matrix build_parity(int dim);

/// max-entry norm of P H P - H^T, with P = build_parity(H.rows()).
double pt_residual(const Matrix& h);

/// Coefficients of E^4 + (alpha^2 - 3 + 2 beta^2) E^2 + (1 - beta^2)^2,
/// highest power first.
std::array<double, 5> secular_coefficients(const ModelParams& p);

/// Horner evaluation of a quartic given highest power first.
Complex evaluate_quartic(const std::array<double, 5>& coeffs, Complex x);

/// Energies (s1 sqrt(A) + s2 sqrt(C)) / 2 with principal square roots, in the
/// order (s1, s2) = (+,+), (+,-), (-,+), (-,-).
std::array<Complex, 4> closed_form_energies(const ModelParams& p);

/// One level E = 4n + 2 - 2 q alpha + c^2 of the regularized harmonic
/// oscillator. q is the quasi-parity (+1 or -1).
struct HOLevel {
    int n = 0;
    int q = 1;
    double alpha = 0.0;
    double c = 1.0;
};

double ho_energy(const HOLevel& level);

/// Whether E(m, +1) == E(n, -1) at the given coupling, i.e. alpha == m - n.
bool ho_crossing(int m, int n, double alpha, double c = 1.0);

} // namespace ptcross
