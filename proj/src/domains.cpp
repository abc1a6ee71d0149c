#include "ptcross/domains.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ptcross/metric.hpp"
#include "ptcross/spectral.hpp"

namespace ptcross {

const char* to_string(NamedRegion r) {
    switch (r) {
    case NamedRegion::D2: return "D2";
    case NamedRegion::D3: return "D3";
    case NamedRegion::D5: return "D5";
    case NamedRegion::D6: return "D6";
    case NamedRegion::Boundary: return "Boundary";
    case NamedRegion::Broken: return "Broken";
    }
    return "?";
}

const char* to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::A: return "A";
    case SweepAxis::B: return "B";
    case SweepAxis::Diagonal: return "diagonal";
    }
    return "?";
}

SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "A") return SweepAxis::A;
    if (s == "B") return SweepAxis::B;
    if (s == "diagonal" || s == "AB") return SweepAxis::Diagonal;
    throw UsageError("unknown axis '" + s + "' (expected A, B or diagonal)");
}

DomainTolerances DomainTolerances::from_band(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw UsageError("domain tolerance must be positive");
    }
    DomainTolerances t;
    t.tol = tol;
    t.reality_tol = 0.5 * std::sqrt(tol);
    return t;
}

DomainLabel classify_point(double A, double B, double tol) {
    return classify_point(A, B, DomainTolerances::from_band(tol));
}

DomainLabel classify_point(double A, double B, const DomainTolerances& tols) {
    const double tol = tols.tol;
    const ModelParams p = ModelParams::from_AB(A, B);
    const Matrix h = build_hamiltonian(p);

    DomainLabel label;
    label.hermitian = is_hermitian(h, tol);
    label.real_matrix = h.imag().cwiseAbs().maxCoeff() <= tol;

    const bool near_a = std::abs(A) <= tol;
    const bool near_c = std::abs(p.C()) <= tol;
    const bool near_b = std::abs(B) <= tol && A > tol;
    label.ep_boundary = near_a || near_c || near_b;

    // Inside an EP band the spectral predicates are taken on the line itself.
    double a_eval = A;
    double b_eval = B;
    if (near_a) {
        a_eval = 0.0;
    }
    if (near_b) {
        b_eval = 0.0;
    }
    if (near_c) {
        b_eval = -a_eval / 4.0;
    }
    const Matrix h_eval = label.ep_boundary ? build_hamiltonian(ModelParams::from_AB(a_eval, b_eval)) : h;

    SpectralOptions opts;
    opts.cluster_radius_rel = tols.cluster_radius_rel;
    opts.rank_rel_tol = tols.rank_rel_tol;
    if (!label.ep_boundary) {
        // Off the bands, pairs split by more than the band width are distinct.
        opts.cluster_radius = tol;
    }
    const Eigendecomposition eig = eigendecompose(h_eval, tols.reality_tol, opts);
    label.spectrum_real = eig.spectrum.all_real();
    label.diagonalizable = eig.spectrum.diagonalizable();

    if (label.spectrum_real && label.diagonalizable) {
        const std::vector<double> ones(static_cast<std::size_t>(h.rows()), 1.0);
        const Matrix theta = metric_from_decomposition(eig, ones);
        label.crypto_hermitian = signature(theta, tols.metric_tol).positive_definite;
    }

    if (label.ep_boundary) {
        label.named_region = NamedRegion::Boundary;
    } else if (A < -tol || p.C() < -tol) {
        label.named_region = NamedRegion::Broken;
    } else if (label.hermitian) {
        label.named_region = NamedRegion::D3;
    } else if (label.real_matrix && label.crypto_hermitian) {
        label.named_region = NamedRegion::D5;
    }
    return label;
}

double ScanGrid::A_center(int i) const {
    return A_range.lo + (i + 0.5) * (A_range.hi - A_range.lo) / nA;
}

double ScanGrid::B_center(int j) const {
    return B_range.lo + (j + 0.5) * (B_range.hi - B_range.lo) / nB;
}

namespace {

void require_interval(const Interval& r, const char* name) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
        throw UsageError(std::string("invalid ") + name + " range: need finite lo < hi");
    }
}

} // namespace

ScanGrid scan_grid(Interval A_range, Interval B_range, int nA, int nB, double tol, unsigned threads) {
    require_interval(A_range, "A");
    require_interval(B_range, "B");
    if (nA < 2 || nB < 2) {
        throw UsageError("scan resolution must be at least 2 x 2");
    }
    ScanGrid grid;
    grid.A_range = A_range;
    grid.B_range = B_range;
    grid.nA = nA;
    grid.nB = nB;
    grid.tolerances = DomainTolerances::from_band(tol);
    grid.cells.resize(static_cast<std::size_t>(nA) * static_cast<std::size_t>(nB));

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(nB));

    // Rows are interleaved across workers; each cell is written exactly once.
    auto work = [&grid](unsigned first, unsigned stride) {
        for (int j = static_cast<int>(first); j < grid.nB; j += static_cast<int>(stride)) {
            for (int i = 0; i < grid.nA; ++i) {
                grid.cells[static_cast<std::size_t>(j) * grid.nA + i] =
                    classify_point(grid.A_center(i), grid.B_center(j), grid.tolerances);
            }
        }
    };
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
    }
    return grid;
}

SweepTable sweep_spectrum(std::optional<FixedAxis> fixed, SweepAxis varying, Interval range, int steps, double tol) {
    if (steps < 2) {
        throw UsageError("sweep needs at least 2 steps");
    }
    if (!std::isfinite(range.lo) || !std::isfinite(range.hi)) {
        throw UsageError("sweep range must be finite");
    }
    if (varying == SweepAxis::Diagonal) {
        if (fixed) {
            throw UsageError("a diagonal sweep takes no fixed axis");
        }
    } else {
        if (!fixed) {
            throw UsageError(std::string("sweeping ") + to_string(varying) + " needs the other axis fixed");
        }
        if (fixed->axis == varying || fixed->axis == SweepAxis::Diagonal) {
            throw UsageError("the fixed axis must differ from the varying axis");
        }
    }

    SweepTable table;
    table.fixed = fixed;
    table.varying = varying;
    table.range = range;
    table.steps = steps;
    table.tol = tol;
    const double reality_tol = DomainTolerances::from_band(tol).reality_tol;

    for (int k = 0; k < steps; ++k) {
        const double s = k == steps - 1 ? range.hi : range.lo + (range.hi - range.lo) * k / (steps - 1);
        SweepRow row;
        row.parameter = s;
        switch (varying) {
        case SweepAxis::A: row.A = s; row.B = fixed->value; break;
        case SweepAxis::B: row.A = fixed->value; row.B = s; break;
        case SweepAxis::Diagonal: row.A = s; row.B = s; break;
        }
        const auto e = closed_form_energies(ModelParams::from_AB(row.A, row.B));
        const auto sorted = sorted_by_real({e.begin(), e.end()});
        std::copy(sorted.begin(), sorted.end(), row.energies.begin());
        row.all_real = std::all_of(sorted.begin(), sorted.end(),
                                   [reality_tol](Complex z) { return std::abs(z.imag()) <= reality_tol; });
        table.rows.push_back(row);
    }
    return table;
}

} // namespace ptcross
