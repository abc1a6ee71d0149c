#include "ptcross/unfolding.hpp"

#include <algorithm>
#include <cmath>

#include "ptcross/model.hpp"
#include "ptcross/spectral.hpp"

namespace ptcross {

Matrix perturbed_hamiltonian(double alpha, double gamma) {
    return build_hamiltonian(ModelParams::from_couplings(alpha, 1.0 - gamma));
}

std::array<Complex, 2> perturbed_small_eigenvalues(double alpha, double gamma) {
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2;
    const double g2 = gamma * gamma;
    const Complex inner(a4 - 8.0 * a2 * gamma + 4.0 * a2 * g2 - 2.0 * a2 - 4.0 * g2 + 8.0 * gamma + 1.0, 0.0);
    const Complex s = 2.0 - 2.0 * a2 + 8.0 * gamma - 4.0 * g2 - 2.0 * std::sqrt(inner);
    const Complex half_root = 0.5 * std::sqrt(s);
    return {half_root, -half_root};
}

double series_linear_coefficient(double alpha) {
    const double a2 = alpha * alpha;
    return 2.0 + a2 + 0.75 * a2 * a2;
}

double series_quadratic_coefficient(double alpha) {
    return 5.0 + 6.5 * alpha * alpha;
}

std::array<double, 2> taylor_small_eigenvalues(double alpha, double gamma) {
    const double e = series_linear_coefficient(alpha) * gamma - series_quadratic_coefficient(alpha) * gamma * gamma;
    return {e, -e};
}

namespace {

using Pair = std::array<Complex, 2>;

// The two eigenvalues of smallest modulus.
Pair numeric_small_pair(double alpha, double gamma) {
    const Eigen::ComplexEigenSolver<Matrix> solver(perturbed_hamiltonian(alpha, gamma), false);
    if (solver.info() != Eigen::Success) {
        throw Error("unfolding: eigensolver failed");
    }
    std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    return {ev[0], ev[1]};
}

// Reorders each pair so that index k follows one continuous branch, using a
// linear predictor from the two previous samples.
void track_branches(const std::vector<double>& gammas, std::vector<Pair>& pairs) {
    for (std::size_t s = 1; s < pairs.size(); ++s) {
        Pair predicted = pairs[s - 1];
        if (s >= 2) {
            const double step = gammas[s] - gammas[s - 1];
            const double prev_step = gammas[s - 1] - gammas[s - 2];
            for (int k = 0; k < 2; ++k) {
                const Complex slope = (pairs[s - 1][k] - pairs[s - 2][k]) / prev_step;
                predicted[k] = pairs[s - 1][k] + slope * step;
            }
        }
        const double keep = std::abs(pairs[s][0] - predicted[0]) + std::abs(pairs[s][1] - predicted[1]);
        const double swap = std::abs(pairs[s][1] - predicted[0]) + std::abs(pairs[s][0] - predicted[1]);
        if (swap < keep) {
            std::swap(pairs[s][0], pairs[s][1]);
        }
    }
    // Branch 0 rises with gamma.
    if (pairs.back()[0].real() < pairs.back()[1].real()) {
        for (auto& p : pairs) {
            std::swap(p[0], p[1]);
        }
    }
}

} // namespace

UnfoldingReport verify_unfolding(double alpha, double gamma_max, int samples) {
    if (!(std::abs(alpha) < 1.0)) {
        throw DomainError("verify_unfolding: requires |alpha| < 1");
    }
    if (samples < 5) {
        throw UsageError("verify_unfolding: needs at least 5 samples per sign");
    }
    if (!(gamma_max > 0.0) || !std::isfinite(gamma_max)) {
        throw UsageError("verify_unfolding: gamma_max must be positive");
    }

    UnfoldingReport r;
    r.alpha = alpha;
    for (int k = samples; k >= 1; --k) {
        r.gamma_samples.push_back(-gamma_max * k / samples);
    }
    for (int k = 1; k <= samples; ++k) {
        r.gamma_samples.push_back(gamma_max * k / samples);
    }

    for (double g : r.gamma_samples) {
        r.numeric_E.push_back(numeric_small_pair(alpha, g));
        r.closed_form_E.push_back(perturbed_small_eigenvalues(alpha, g));
        r.taylor_E.push_back(taylor_small_eigenvalues(alpha, g));
    }
    track_branches(r.gamma_samples, r.numeric_E);
    track_branches(r.gamma_samples, r.closed_form_E);

    constexpr double kRealTol = 1e-9;
    r.real_for_negative_gamma = true;
    r.real_for_positive_gamma = true;
    for (std::size_t s = 0; s < r.gamma_samples.size(); ++s) {
        const auto& n = r.numeric_E[s];
        const auto& c = r.closed_form_E[s];
        r.max_abs_error_closed_vs_numeric =
            std::max(r.max_abs_error_closed_vs_numeric, multiset_distance(n, c));
        const bool real = std::abs(n[0].imag()) <= kRealTol && std::abs(n[1].imag()) <= kRealTol;
        (r.gamma_samples[s] < 0.0 ? r.real_for_negative_gamma : r.real_for_positive_gamma) &= real;
    }

    // Quartic least squares in the scaled variable x = gamma / gamma_max.
    const auto m = static_cast<Eigen::Index>(r.gamma_samples.size());
    Eigen::MatrixXd vander(m, 5);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index s = 0; s < m; ++s) {
        const double x = r.gamma_samples[static_cast<std::size_t>(s)] / gamma_max;
        double pw = 1.0;
        for (Eigen::Index d = 0; d < 5; ++d) {
            vander(s, d) = pw;
            pw *= x;
        }
        rhs(s) = r.numeric_E[static_cast<std::size_t>(s)][0].real();
    }
    const auto qr = vander.colPivHouseholderQr();
    if (qr.rank() < 5) {
        throw Error("verify_unfolding: degenerate sample set for the fit");
    }
    const Eigen::VectorXd c = qr.solve(rhs);
    r.fitted_linear_coefficient = c(1) / gamma_max;
    r.fitted_quadratic_coefficient = -c(2) / (gamma_max * gamma_max);
    return r;
}

} // namespace ptcross
