#pragma once

#include <array>
#include <vector>

#include "ptcross/core.hpp"

namespace ptcross {

/// The model at beta = 1 - gamma.
Matrix perturbed_hamiltonian(double alpha, double gamma);

/// (+sqrt(S)/2, -sqrt(S)/2) with
/// S = 2 - 2a^2 + 8g - 4g^2 - 2 sqrt(a^4 - 8a^2 g + 4a^2 g^2 - 2a^2 - 4g^2 + 8g + 1),
/// principal branches throughout.
std::array<Complex, 2> perturbed_small_eigenvalues(double alpha, double gamma);

/// Two-term series +-[(2 + a^2 + 3/4 a^4) g - (5 + 13/2 a^2) g^2].
std::array<double, 2> taylor_small_eigenvalues(double alpha, double gamma);

/// First- and second-order series coefficients as functions of alpha.
double series_linear_coefficient(double alpha);
double series_quadratic_coefficient(double alpha);

/// B as a function of the shift: 1 - (1 - gamma)^2.
inline double unfolding_B(double gamma) { return 2.0 * gamma - gamma * gamma; }

struct UnfoldingReport {
    double alpha = 0.0;
    std::vector<double> gamma_samples;
    // Per sample, the two small eigenvalues tracked continuously through the
    // crossing; index 0 is the branch with positive slope.
    std::vector<std::array<Complex, 2>> numeric_E;
    std::vector<std::array<Complex, 2>> closed_form_E;
    std::vector<std::array<double, 2>> taylor_E;
    double max_abs_error_closed_vs_numeric = 0.0;
    // Least-squares fit of the positive-slope branch by a quartic in gamma.
    double fitted_linear_coefficient = 0.0;
    double fitted_quadratic_coefficient = 0.0;
    bool real_for_negative_gamma = false;
    bool real_for_positive_gamma = false;
};

/// Samples `samples` shifts on each side of the crossing,
/// gamma = +-gamma_max * k / samples for k = 1..samples.
UnfoldingReport verify_unfolding(double alpha, double gamma_max, int samples);

} // namespace ptcross
