#include "ptcross/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ptcross {

namespace {

// Orthonormal real coordinates on the Hermitian matrices under the Frobenius
// inner product: diagonal entries, then sqrt(2) Re and sqrt(2) Im of each
// strictly upper entry.
Eigen::VectorXd hermitian_coordinates(const Matrix& m) {
    const Eigen::Index n = m.rows();
    Eigen::VectorXd x(n * n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        x(k++) = m(i, i).real();
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            // Average the two triangles so a slightly non-Hermitian input
            // maps to its Hermitian part.
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            x(k++) = std::numbers::sqrt2 * z.real();
            x(k++) = std::numbers::sqrt2 * z.imag();
        }
    }
    return x;
}

Matrix hermitian_from_coordinates(const Eigen::VectorXd& x, Eigen::Index n) {
    Matrix m = Matrix::Zero(n, n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = x(k++);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double re = x(k++) / std::numbers::sqrt2;
            const double im = x(k++) / std::numbers::sqrt2;
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
        }
    }
    return m;
}

void require_real_couplings(const ModelParams& p, const char* what) {
    if (!p.real_couplings()) {
        throw DomainError(std::string(what) + ": requires real alpha and beta");
    }
}

} // namespace

Matrix MetricFamily::combine(std::span<const double> coords) const {
    if (coords.size() != basis.size() || basis.empty()) {
        throw Error("MetricFamily::combine: expected " + std::to_string(basis.size()) + " coordinates");
    }
    Matrix out = Matrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        out += coords[k] * basis[k];
    }
    return out;
}

double constraint_residual(const Matrix& h, const Matrix& theta) {
    if (h.rows() != theta.rows() || h.cols() != theta.cols()) {
        throw Error("constraint_residual: dimension mismatch");
    }
    return (h.adjoint() * theta - theta * h).norm();
}

bool satisfies_constraint(const Matrix& h, const Matrix& theta, double rel_tol) {
    return constraint_residual(h, theta) <= rel_tol * h.norm() * theta.norm();
}

MetricFamily solve_metric_space(const Matrix& h, double tol) {
    require_square_finite(h, "solve_metric_space");
    const Eigen::Index n = h.rows();
    const Eigen::Index unknowns = n * n;
    const Matrix h_dag = h.adjoint();

    // Column k holds the real and imaginary parts of L(E_k), L(X) = H^dag X - X H.
    Eigen::MatrixXd system(2 * unknowns, unknowns);
    for (Eigen::Index k = 0; k < unknowns; ++k) {
        const Matrix e = hermitian_from_coordinates(Eigen::VectorXd::Unit(unknowns, k), n);
        const Matrix image = h_dag * e - e * h;
        const Eigen::Map<const Eigen::VectorXcd> flat(image.data(), unknowns);
        system.col(k).head(unknowns) = flat.real();
        system.col(k).tail(unknowns) = flat.imag();
    }

    const Eigen::BDCSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double threshold = tol * sv(0);

    MetricFamily family;
    family.parametrization = MetricParametrization::Nullspace;
    for (Eigen::Index k = 0; k < unknowns; ++k) {
        if (sv(k) > threshold && sv(0) > 0.0) {
            continue;
        }
        Eigen::VectorXd v = svd.matrixV().col(k);
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        if (v(big) < 0.0) {
            v = -v;
        }
        family.basis.push_back(hermitian_from_coordinates(v, n));
    }
    return family;
}

Matrix metric_from_decomposition(const Eigendecomposition& eig, std::span<const double> kappas) {
    const Eigen::Index n = eig.left.rows();
    if (static_cast<Eigen::Index>(kappas.size()) != n) {
        throw DomainError("metric: expected " + std::to_string(n) + " kappa weights");
    }
    if (std::any_of(kappas.begin(), kappas.end(), [](double k) { return !(k > 0.0) || !std::isfinite(k); })) {
        throw DomainError("metric: kappa weights must be positive and finite");
    }
    if (!eig.spectrum.all_real()) {
        throw DomainError("no real-spectrum metric: spectrum is not real");
    }
    if (!eig.spectrum.diagonalizable()) {
        throw DomainError("no real-spectrum metric: matrix is not diagonalizable");
    }
    Matrix theta = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vector xi = eig.left.col(j).normalized();
        theta += kappas[static_cast<std::size_t>(j)] * (xi * xi.adjoint());
    }
    return theta;
}

Matrix metric_from_left_eigenvectors(const Matrix& h, std::span<const double> kappas, double tol) {
    return metric_from_decomposition(eigendecompose(h, tol), kappas);
}

MetricFamily spectral_family(const Matrix& h, double tol) {
    const Eigendecomposition eig = eigendecompose(h, tol);
    if (!eig.spectrum.all_real() || !eig.spectrum.diagonalizable()) {
        throw DomainError("no real-spectrum metric: spectrum is not real or matrix is defective");
    }
    MetricFamily family;
    family.parametrization = MetricParametrization::SpectralKappa;
    for (Eigen::Index j = 0; j < h.rows(); ++j) {
        const Vector xi = eig.left.col(j).normalized();
        family.basis.push_back(xi * xi.adjoint());
    }
    return family;
}

Matrix closed_form_theta(const ModelParams& p, const std::array<double, 4>& t) {
    require_real_couplings(p, "closed_form_theta");
    const double a = p.alpha.real();
    const double b = p.beta.real();
    if (1.0 + a == 0.0 || 1.0 + b == 0.0) {
        throw DomainError("elimination formulas singular at alpha = -1 or beta = -1");
    }
    const auto [t1, t2, t3, t4] = t;
    const double pb = 1.0 + b;
    const double pa = 1.0 + a;

    Eigen::Matrix4d th = Eigen::Matrix4d::Zero();
    th(0, 0) = t1;
    th(0, 1) = t2;
    th(0, 2) = t3;
    th(0, 3) = t4;
    th(1, 1) = (t1 * (1.0 - b) + t3 * (1.0 + a)) / pb;
    th(1, 2) = (t2 * (1.0 - a) + t4 * (1.0 + b)) / pb;
    th(1, 3) = -t3 * (b - 1.0) / pb;
    th(2, 2) = (-t1 + t1 * b - t3 - t3 * a) * (a - 1.0) / (pb * pa);
    th(2, 3) = t2 * (a - 1.0) * (b - 1.0) / (pb * pa);
    th(3, 3) = -t1 * (b - 1.0) * (b - 1.0) * (a - 1.0) / (pb * pb * pa);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) {
            th(i, j) = th(j, i);
        }
    }
    return th.cast<Complex>();
}

MetricFamily elimination_family(const ModelParams& p) {
    MetricFamily family;
    family.parametrization = MetricParametrization::EliminationT;
    for (std::size_t k = 0; k < 4; ++k) {
        std::array<double, 4> t{};
        t[k] = 1.0;
        family.basis.push_back(closed_form_theta(p, t));
    }
    return family;
}

Matrix diagonal_metric(const ModelParams& p, double t1) {
    require_real_couplings(p, "diagonal_metric");
    const double a = p.alpha.real();
    const double b = p.beta.real();
    if (b == 1.0 || b == -1.0) {
        throw DomainError("singular normalization of the diagonal metric at beta = +-1");
    }
    Eigen::Vector4d d;
    d << (1.0 + a) * (1.0 + b) / (1.0 - b), 1.0 + a, 1.0 - a, (1.0 - a) * (1.0 - b) / (1.0 + b);
    return (t1 * d).cast<Complex>().asDiagonal();
}

SignatureReport signature(const Matrix& theta, double tol) {
    require_square_finite(theta, "signature");
    const double scale = max_abs(theta);
    if (!is_hermitian(theta, tol * std::max(1.0, scale))) {
        throw Error("signature: matrix is not Hermitian");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(theta, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    const double spectral_scale = ev.cwiseAbs().maxCoeff();
    const double threshold = tol * spectral_scale;

    SignatureReport r;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > threshold) {
            ++r.n_plus;
        } else if (ev(i) < -threshold) {
            ++r.n_minus;
        } else {
            ++r.n_zero;
        }
    }
    r.min_eigenvalue = ev.minCoeff();
    r.positive_definite = r.n_plus == ev.size() && r.min_eigenvalue > threshold;
    return r;
}

Complex inner_product_S(const Vector& phi, const Vector& psi, const Matrix& theta) {
    if (phi.size() != psi.size() || theta.rows() != phi.size() || theta.cols() != phi.size()) {
        throw Error("inner_product_S: dimension mismatch");
    }
    return phi.dot(theta * psi);
}

Matrix metric_sqrt(const Matrix& theta) {
    const SignatureReport sig = signature(theta, 1e-10);
    if (!sig.positive_definite) {
        throw DomainError("metric_sqrt: matrix is not positive definite");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(theta);
    return solver.operatorSqrt();
}

Matrix hermitize(const Matrix& h, const Matrix& theta) {
    if (h.rows() != theta.rows()) {
        throw Error("hermitize: dimension mismatch");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(theta);
    if (!signature(theta, 1e-10).positive_definite) {
        throw DomainError("hermitize: metric is not positive definite");
    }
    return solver.operatorSqrt() * h * solver.operatorInverseSqrt();
}

double span_residual(const Matrix& theta, std::span<const Matrix> basis) {
    const Eigen::VectorXd target = hermitian_coordinates(theta);
    const double target_norm = target.norm();
    if (target_norm == 0.0) {
        return 0.0;
    }
    if (basis.empty()) {
        return 1.0;
    }
    Eigen::MatrixXd cols(target.size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].rows() != theta.rows()) {
            throw Error("span_residual: dimension mismatch");
        }
        cols.col(static_cast<Eigen::Index>(k)) = hermitian_coordinates(basis[k]);
    }
    const Eigen::VectorXd coeffs = cols.colPivHouseholderQr().solve(target);
    return (target - cols * coeffs).norm() / target_norm;
}

} // namespace ptcross
