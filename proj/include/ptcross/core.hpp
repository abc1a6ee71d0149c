#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ptcross {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (singular formula,
/// complex spectrum where a real one is required, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed request: unknown parameter, missing value, bad range.
class UsageError : public Error {
public:
    using Error::Error;
};

// Throws Error unless m is square, non-empty and finite.
void require_square_finite(const Matrix& m, const std::string& what);

/// Largest entry modulus.
double max_abs(const Matrix& m);

/// True when m equals its conjugate transpose entrywise within tol.
bool is_hermitian(const Matrix& m, double tol);

} // namespace ptcross
