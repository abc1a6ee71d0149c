#pragma once

#include <optional>
#include <vector>

#include "ptcross/core.hpp"
#include "ptcross/model.hpp"

namespace ptcross {

enum class NamedRegion {
    D2,
    D3,
    D5,
    D6,
    Boundary,
    Broken,
};

const char* to_string(NamedRegion r);

/// Predicates of one point of the (A, B) plane.
///
/// Only D3 (Hermitian), D5 (real and crypto-Hermitian), Boundary and Broken
/// (A < 0 or C < 0) are ever assigned; other points carry no name.
struct DomainLabel {
    bool hermitian = false;
    bool real_matrix = false;
    bool spectrum_real = false;
    bool diagonalizable = false;
    bool crypto_hermitian = false;
    bool ep_boundary = false;
    std::optional<NamedRegion> named_region;

    friend bool operator==(const DomainLabel&, const DomainLabel&) = default;
};

/// Every threshold used while classifying, echoed with scan output.
struct DomainTolerances {
    double tol = 1e-8;           // half-width of the EP bands in A, B, C
    double reality_tol = 5e-5;   // |Im E| threshold, 0.5 * sqrt(tol)
    double cluster_radius_rel = 1e-7;
    double rank_rel_tol = 1e-9;
    double metric_tol = 1e-10;   // positive-definiteness threshold

    static DomainTolerances from_band(double tol);
};

/// Classifies (A, B) by direct computation.
///
/// Points within `tol` of an EP line (A = 0, C = 0, or B = 0 with A > 0) are
/// flagged ep_boundary and their spectral predicates are evaluated on the
/// line itself. Elsewhere the spectrum is real when every |Im E| is at most
/// 0.5 sqrt(tol), which is the image of the same band under the square-root
/// branch points. crypto_hermitian is decided by building a metric from the
/// left eigenvectors and testing it for positive definiteness.
DomainLabel classify_point(double A, double B, double tol = 1e-8);
DomainLabel classify_point(double A, double B, const DomainTolerances& tols);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Labels at cell centers, row-major with A fastest.
struct ScanGrid {
    Interval A_range;
    Interval B_range;
    int nA = 0;
    int nB = 0;
    std::vector<DomainLabel> cells;
    DomainTolerances tolerances;

    [[nodiscard]] double A_center(int i) const;
    [[nodiscard]] double B_center(int j) const;
    [[nodiscard]] const DomainLabel& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nA + i]; }
};

/// threads = 0 uses the hardware concurrency. The result does not depend on it.
ScanGrid scan_grid(Interval A_range, Interval B_range, int nA, int nB, double tol = 1e-8, unsigned threads = 0);

enum class SweepAxis {
    A,
    B,
    Diagonal,  // A = B
};

const char* to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(const std::string& s);

struct FixedAxis {
    SweepAxis axis = SweepAxis::A;
    double value = 0.0;
};

struct SweepRow {
    double parameter = 0.0;
    double A = 0.0;
    double B = 0.0;
    std::array<Complex, 4> energies;  // closed form, sorted by real part
    bool all_real = false;
};

struct SweepTable {
    std::optional<FixedAxis> fixed;
    SweepAxis varying = SweepAxis::B;
    Interval range;
    int steps = 0;
    double tol = 1e-8;
    std::vector<SweepRow> rows;
};

/// Closed-form spectrum along a line of the (A, B) plane. A and B sweeps need
/// the other coordinate fixed; a diagonal sweep takes no fixed axis.
SweepTable sweep_spectrum(std::optional<FixedAxis> fixed, SweepAxis varying, Interval range, int steps,
                          double tol = 1e-8);

} // namespace ptcross
