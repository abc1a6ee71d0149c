#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptcross/model.hpp"

using namespace ptcross;

TEST_CASE("hamiltonian at vanishing couplings is the plain tridiagonal Laplacian") {
    const Matrix h = build_hamiltonian(ModelParams::from_couplings(0.0, 0.0));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double expected = std::abs(i - j) == 1 ? -1.0 : 0.0;
            CHECK(h(i, j) == Complex(expected, 0.0));
        }
    }
}

TEST_CASE("hamiltonian at beta = 1 has the degenerate form") {
    const Matrix h = build_hamiltonian(ModelParams::from_couplings(0.5, 1.0));
    CHECK(h.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h(1, 0) == Complex(-2.0, 0.0));
    CHECK(h(3, 2) == Complex(-2.0, 0.0));
    CHECK(h(1, 2) == Complex(-0.5, 0.0));
    CHECK(h(2, 1) == Complex(-1.5, 0.0));
    CHECK(h(2, 3) == Complex(0.0, 0.0));
}

TEST_CASE("imaginary couplings make the hamiltonian Hermitian") {
    const ModelParams p = ModelParams::from_AB(2.0, 2.0);
    CHECK(p.alpha == Complex(0.0, 1.0));
    CHECK(p.beta == Complex(0.0, 1.0));
    const Matrix h = build_hamiltonian(p);
    CHECK(max_abs(h - h.adjoint()) == 0.0);
}

TEST_CASE("entries are real exactly when both couplings are real") {
    CHECK(build_hamiltonian(ModelParams::from_AB(0.3, 0.7)).imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(build_hamiltonian(ModelParams::from_AB(1.3, 0.7)).imag().cwiseAbs().maxCoeff() > 0.0);
    CHECK(build_hamiltonian(ModelParams::from_AB(0.3, 1.7)).imag().cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("ModelParams invariants") {
    for (int k = 0; k < 200; ++k) {
        const double a = oracle::uniform(-2.0, 3.0);
        const double b = oracle::uniform(-2.0, 3.0);
        const ModelParams p = ModelParams::from_AB(a, b);
        CHECK(p.C() == a + 4.0 * b);
        CHECK((p.alpha.imag() == 0.0) == (a <= 1.0));
        CHECK((p.beta.imag() == 0.0) == (b <= 1.0));
        // Round trip through the couplings reproduces alpha^2 and beta^2.
        const ModelParams q = ModelParams::from_couplings(p.alpha, p.beta);
        CHECK(std::abs(q.alpha * q.alpha - p.alpha * p.alpha) < 1e-14);
        CHECK(q.A == doctest::Approx(a).epsilon(1e-12));
        CHECK(q.B == doctest::Approx(b).epsilon(1e-12));
        if (a <= 1.0) {
            CHECK(p.alpha.real() >= 0.0);
        }
    }
    CHECK_THROWS_AS(ModelParams::from_couplings(Complex(0.5, 0.5), Complex(0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(ModelParams::from_AB(std::nan(""), 0.0), Error);
}

TEST_CASE("parity is the antidiagonal involution") {
    CHECK(build_parity(1)(0, 0) == Complex(1.0, 0.0));
    const Matrix p4 = build_parity(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(p4(i, j) == Complex(i + j == 3 ? 1.0 : 0.0, 0.0));
        }
    }
    for (int n = 1; n <= 9; ++n) {
        const Matrix p = build_parity(n);
        CHECK(max_abs(p * p - Matrix::Identity(n, n)) == 0.0);
    }
    CHECK_THROWS_AS(build_parity(0), Error);
}

TEST_CASE("PT residual") {
    for (int k = 0; k < 100; ++k) {
        const auto p = ModelParams::from_couplings(oracle::uniform(-3, 3), oracle::uniform(-3, 3));
        CHECK(pt_residual(build_hamiltonian(p)) == 0.0);
    }
    // Imaginary couplings keep the identity too: T is plain transposition.
    CHECK(pt_residual(build_hamiltonian(ModelParams::from_AB(2.5, 1.5))) == 0.0);

    Matrix d = Matrix::Zero(4, 4);
    d.diagonal() << 1.0, 2.0, 3.0, 4.0;
    CHECK(pt_residual(d) == doctest::Approx(3.0));
    CHECK(pt_residual(build_parity(4)) == 0.0);
    CHECK_THROWS_AS(pt_residual(Matrix::Zero(3, 4)), Error);
}

TEST_CASE("secular coefficients") {
    using Coeffs = std::array<double, 5>;
    CHECK(secular_coefficients(ModelParams::from_couplings(0.0, 0.0)) == Coeffs{1, 0, -3, 0, 1});
    CHECK(secular_coefficients(ModelParams::from_couplings(0.3, 1.0))[4] == 0.0);
    CHECK(secular_coefficients(ModelParams::from_couplings(1.0, 1.0)) == Coeffs{1, 0, 0, 0, 0});

    // Agrees with the characteristic polynomial of the matrix.
    for (int k = 0; k < 50; ++k) {
        const double a = oracle::uniform(-1.5, 1.5);
        const double b = oracle::uniform(-1.5, 1.5);
        const auto c = secular_coefficients(ModelParams::from_couplings(a, b));
        CHECK(c[2] == doctest::Approx(a * a - 3.0 + 2.0 * b * b).epsilon(1e-12));
        CHECK(c[4] == doctest::Approx(1.0 - 2.0 * b * b + b * b * b * b).epsilon(1e-12));
    }
}

TEST_CASE("closed-form energies") {
    SUBCASE("zero couplings match a dense eigensolve") {
        const ModelParams p = ModelParams::from_AB(1.0, 1.0);
        const auto e = closed_form_energies(p);
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        const double small = (std::sqrt(5.0) - 1.0) / 2.0;
        CHECK(e[0].real() == doctest::Approx(golden));
        CHECK(e[1].real() == doctest::Approx(-small));
        CHECK(e[2].real() == doctest::Approx(small));
        CHECK(e[3].real() == doctest::Approx(-golden));
        CHECK(oracle::greedy_distance({e.begin(), e.end()}, oracle::eigenvalues(build_hamiltonian(p))) < 1e-12);
    }
    SUBCASE("quadruple degeneracy") {
        for (const Complex& z : closed_form_energies(ModelParams::from_AB(0.0, 0.0))) {
            CHECK(z == Complex(0.0, 0.0));
        }
    }
    SUBCASE("negative A gives two complex-conjugate pairs") {
        const auto e = closed_form_energies(ModelParams::from_AB(-0.5, 1.0));
        for (const Complex& z : e) {
            CHECK(std::abs(z.imag()) == doctest::Approx(0.5 * std::sqrt(0.5)));
        }
        CHECK(std::abs(e[0] - std::conj(e[2])) < 1e-15);
        CHECK(std::abs(e[1] - std::conj(e[3])) < 1e-15);
    }
}

TEST_CASE("spectral properties of the closed form") {
    for (int k = 0; k < 500; ++k) {
        const ModelParams p = ModelParams::from_AB(oracle::uniform(-2, 3), oracle::uniform(-2, 3));
        const auto e = closed_form_energies(p);
        const auto coeffs = secular_coefficients(p);
        for (const Complex& z : e) {
            CHECK(std::abs(evaluate_quartic(coeffs, z)) < 1e-9);
        }
        // E -> -E symmetry of the multiset.
        std::vector<Complex> neg;
        for (const Complex& z : e) {
            neg.push_back(-z);
        }
        CHECK(oracle::greedy_distance({e.begin(), e.end()}, neg) < 1e-14);
    }
}

TEST_CASE("reality boundary: all energies real iff A >= 0 and C >= 0") {
    const double band = 1e-6;
    for (int i = 0; i <= 60; ++i) {
        for (int j = 0; j <= 60; ++j) {
            const double a = -2.0 + 5.0 * i / 60.0 + 1e-3;
            const double b = -2.0 + 5.0 * j / 60.0 + 2e-3;
            const ModelParams p = ModelParams::from_AB(a, b);
            if (std::abs(a) < band || std::abs(p.C()) < band) {
                continue;
            }
            bool real = true;
            for (const Complex& z : closed_form_energies(p)) {
                real = real && z.imag() == 0.0;
            }
            CHECK(real == (a >= 0.0 && p.C() >= 0.0));
        }
    }
}

TEST_CASE("harmonic oscillator energies") {
    CHECK(ho_energy({0, 1, 0.0, 0.0}) == 2.0);
    CHECK(ho_energy({1, -1, 0.5, 1.0}) == 8.0);
    CHECK(ho_energy({0, 1, 2.0, 0.0}) == -2.0);
    CHECK(HOLevel{}.c == 1.0);
    CHECK_THROWS_AS(ho_energy({0, 0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(ho_energy({0, 2, 0.0, 1.0}), DomainError);
}

TEST_CASE("harmonic oscillator crossings") {
    CHECK(ho_crossing(3, 1, 2.0));
    CHECK_FALSE(ho_crossing(3, 1, 1.5));
    CHECK(ho_crossing(0, 0, 0.0));
    CHECK(ho_crossing(1, 4, -3.0, 0.3));
}
