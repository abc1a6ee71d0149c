#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ptcross/core.hpp"
#include "ptcross/model.hpp"

namespace ptcross {

enum class Reality {
    AllReal,
    ComplexPairs,
    AllImaginaryRealPart,
};

const char* to_string(Reality r);

/// Eigenvalues grouped within the cluster radius.
struct Cluster {
    Complex value;  // mean of the members
    int algebraic = 0;
    int geometric = 0;
};

struct Spectrum {
    std::vector<Complex> eigenvalues;  // sorted by real part, then imaginary part
    std::vector<Cluster> clusters;
    Reality reality = Reality::AllReal;
    double tol_used = 0.0;

    [[nodiscard]] bool all_real() const { return reality == Reality::AllReal; }
    [[nodiscard]] bool diagonalizable() const;
};

struct SpectralOptions {
    // Eigenvalues closer than cluster_radius_rel * max(1, |M|_2) are merged,
    // unless an absolute cluster_radius is given.
    double cluster_radius_rel = 1e-7;
    std::optional<double> cluster_radius;
    // Singular values at or below rank_rel_tol * sigma_max count as zero.
    double rank_rel_tol = 1e-9;
};

/// Eigenvalues with right eigenvectors (columns of `right`, M v = lambda v)
/// and left eigenvectors (columns of `left`, M^dagger u = conj(lambda) u).
///
/// Columns are unit-norm and aligned with spectrum.eigenvalues. Vectors of a
/// cluster span the null space of M - mu I at the cluster mean mu; a defective
/// cluster has fewer independent vectors than members and the missing columns
/// repeat the available ones.
struct Eigendecomposition {
    Spectrum spectrum;
    Matrix right;
    Matrix left;
};

/// Dense eigenanalysis for dim <= 64. `tol` is the absolute threshold on
/// |Im lambda| used for the reality verdict.
Eigendecomposition eigendecompose(const Matrix& m, double tol, const SpectralOptions& opts = {});

bool is_diagonalizable(const Matrix& m, double tol, const SpectralOptions& opts = {});

/// Number of singular values above rel_tol * sigma_max (zero for a zero matrix).
int numerical_rank(const Matrix& m, double rel_tol);

/// Eigenvalues sorted lexicographically by (real, imaginary).
std::vector<Complex> sorted_by_real(std::vector<Complex> values);

/// Permutation pi minimizing max |a_i - b_pi(i)|; exhaustive for up to 8
/// elements, lexicographic sort order beyond that.
std::vector<std::size_t> best_matching(std::span<const Complex> a, std::span<const Complex> b);

/// Smallest achievable max |a_i - b_pi(i)| over all pairings pi of two
/// equally sized multisets. Exhaustive for up to 8 elements.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

enum class EPKind {
    DoubleRoot,
    QuadrupleRoot,
};

const char* to_string(EPKind k);

struct EPLocation {
    double parameter = 0.0;
    double residual = 0.0;  // |discriminant| at the located point
    EPKind kind = EPKind::DoubleRoot;
};

/// Discriminant 16 q (p^2 - 4q)^2 of the secular quartic E^4 + p E^2 + q.
double quartic_discriminant(const ModelParams& p);

/// Signed square root 4 (1 - beta^2)(p^2 - 4q) of the quartic discriminant.
/// Changes sign across each of the lines A = 0, B = 0 and C = 0.
double signed_discriminant_root(const ModelParams& p);

using ParamPath = std::function<ModelParams(double)>;

/// Locates a zero of the quartic discriminant along path(s), s in [lo, hi].
///
/// The segment is sampled on a uniform grid to bracket every sign change of
/// the signed discriminant root; each bracket is refined by bisection and
/// the root nearest the segment midpoint is returned. Zeros sitting exactly on
/// an endpoint are used only when no interior zero exists.
EPLocation find_ep_on_segment(const ParamPath& path, double lo, double hi, double tol);

} // namespace ptcross
