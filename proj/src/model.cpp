#include "ptcross/model.hpp"

#include <cmath>

namespace ptcross {

void require_square_finite(const Matrix& m, const std::string& what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw Error(what + ": expected a non-empty square matrix");
    }
    if (!m.allFinite()) {
        throw Error(what + ": matrix has non-finite entries");
    }
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

namespace {

// alpha^2 must be real: alpha real or purely imaginary.
double shifted_variable(Complex coupling, const char* name) {
    if (!std::isfinite(coupling.real()) || !std::isfinite(coupling.imag())) {
        throw Error(std::string("non-finite coupling ") + name);
    }
    if (coupling.real() != 0.0 && coupling.imag() != 0.0) {
        throw DomainError(std::string("coupling ") + name + " must be real or purely imaginary");
    }
    return 1.0 - (coupling * coupling).real();
}

Complex principal_coupling(double shifted) {
    return std::sqrt(Complex(1.0 - shifted, 0.0));
}

} // namespace

ModelParams ModelParams::from_couplings(double alpha, double beta) {
    return from_couplings(Complex(alpha, 0.0), Complex(beta, 0.0));
}

ModelParams ModelParams::from_couplings(Complex alpha, Complex beta) {
    ModelParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.A = shifted_variable(alpha, "alpha");
    p.B = shifted_variable(beta, "beta");
    return p;
}

ModelParams ModelParams::from_AB(double A, double B) {
    if (!std::isfinite(A) || !std::isfinite(B)) {
        throw Error("non-finite (A, B)");
    }
    ModelParams p;
    p.A = A;
    p.B = B;
    p.alpha = principal_coupling(A);
    p.beta = principal_coupling(B);
    return p;
}

Matrix build_hamiltonian(const ModelParams& p) {
    const Complex one(1.0, 0.0);
    Matrix h = Matrix::Zero(4, 4);
    h(0, 1) = -one + p.beta;
    h(1, 2) = -one + p.alpha;
    h(2, 3) = -one + p.beta;
    h(1, 0) = -one - p.beta;
    h(2, 1) = -one - p.alpha;
    h(3, 2) = -one - p.beta;
    return h;
}

Matrix build_parity(int dim) {
    if (dim < 1) {
        throw Error("parity dimension must be positive");
    }
    Matrix p = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        p(i, dim - 1 - i) = 1.0;
    }
    return p;
}

double pt_residual(const Matrix& h) {
    require_square_finite(h, "pt_residual");
    const Matrix parity = build_parity(static_cast<int>(h.rows()));
    return max_abs(parity * h * parity - h.transpose());
}

std::array<double, 5> secular_coefficients(const ModelParams& p) {
    // alpha^2 - 3 + 2 beta^2 = -A - 2B and (1 - beta^2)^2 = B^2, written in A, B
    // so that the coefficients carry no rounding from the couplings.
    return {1.0, 0.0, -p.A - 2.0 * p.B, 0.0, p.B * p.B};
}

Complex evaluate_quartic(const std::array<double, 5>& coeffs, Complex x) {
    Complex acc(0.0, 0.0);
    for (double c : coeffs) {
        acc = acc * x + c;
    }
    return acc;
}

std::array<Complex, 4> closed_form_energies(const ModelParams& p) {
    const Complex root_a = std::sqrt(Complex(p.A, 0.0));
    const Complex root_c = std::sqrt(Complex(p.C(), 0.0));
    return {
        0.5 * (root_a + root_c),
        0.5 * (root_a - root_c),
        0.5 * (-root_a + root_c),
        0.5 * (-root_a - root_c),
    };
}

double ho_energy(const HOLevel& level) {
    if (level.q != 1 && level.q != -1) {
        throw DomainError("quasi-parity q must be +1 or -1");
    }
    if (level.n < 0) {
        throw DomainError("radial quantum number n must be non-negative");
    }
    return 4.0 * level.n + 2.0 - 2.0 * level.q * level.alpha + level.c * level.c;
}

bool ho_crossing(int m, int n, double alpha, double c) {
    const double e_plus = ho_energy({m, 1, alpha, c});
    const double e_minus = ho_energy({n, -1, alpha, c});
    return e_plus == e_minus;
}

} // namespace ptcross
