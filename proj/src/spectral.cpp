#include "ptcross/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ptcross {

const char* to_string(Reality r) {
    switch (r) {
    case Reality::AllReal: return "AllReal";
    case Reality::ComplexPairs: return "ComplexPairs";
    case Reality::AllImaginaryRealPart: return "AllImaginaryRealPart";
    }
    return "?";
}

const char* to_string(EPKind k) {
    switch (k) {
    case EPKind::DoubleRoot: return "DoubleRoot";
    case EPKind::QuadrupleRoot: return "QuadrupleRoot";
    }
    return "?";
}

bool Spectrum::diagonalizable() const {
    return std::all_of(clusters.begin(), clusters.end(),
                       [](const Cluster& c) { return c.geometric == c.algebraic; });
}

std::vector<Complex> sorted_by_real(std::vector<Complex> values) {
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) {
            return a.real() < b.real();
        }
        return a.imag() < b.imag();
    });
    return values;
}

std::vector<std::size_t> best_matching(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw Error("best_matching: size mismatch");
    }
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (a.size() > 8) {
        auto by_value = [](std::span<const Complex> v) {
            std::vector<std::size_t> order(v.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&v](std::size_t i, std::size_t j) {
                return v[i].real() != v[j].real() ? v[i].real() < v[j].real() : v[i].imag() < v[j].imag();
            });
            return order;
        };
        const auto oa = by_value(a);
        const auto ob = by_value(b);
        for (std::size_t k = 0; k < oa.size(); ++k) {
            perm[oa[k]] = ob[k];
        }
        return perm;
    }
    std::vector<std::size_t> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size() && worst < best_cost; ++i) {
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        }
        if (worst < best_cost) {
            best_cost = worst;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
    const auto perm = best_matching(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    }
    return worst;
}

int numerical_rank(const Matrix& m, double rel_tol) {
    if (m.size() == 0) {
        return 0;
    }
    const Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double threshold = rel_tol * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) {
            ++rank;
        }
    }
    return rank;
}

namespace {

constexpr Eigen::Index kMaxDim = 64;

// Rotates v so that its largest-modulus entry is real and positive.
void fix_phase(Eigen::Ref<Vector> v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const double mag = std::abs(v(k));
    if (mag > 0.0) {
        v *= std::conj(v(k)) / mag;
    }
}

// Single-linkage grouping of sorted eigenvalues; returns a cluster id per value.
std::vector<int> cluster_ids(const std::vector<Complex>& values, double radius) {
    const std::size_t n = values.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) <= radius) {
                parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
            }
        }
    }
    // Relabel roots in order of first appearance.
    std::vector<int> ids(n, -1);
    std::vector<int> root_label(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int r = find(static_cast<int>(i));
        if (root_label[r] < 0) {
            root_label[r] = next++;
        }
        ids[i] = root_label[r];
    }
    return ids;
}

} // namespace

Eigendecomposition eigendecompose(const Matrix& m, double tol, const SpectralOptions& opts) {
    require_square_finite(m, "eigendecompose");
    if (m.rows() > kMaxDim) {
        throw DomainError("eigendecompose: dimension above 64 is not supported");
    }
    const Eigen::Index n = m.rows();
    const Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecompose: QR iteration failed to converge (dim " + std::to_string(n) + ")");
    }

    Eigendecomposition out;
    Spectrum& spec = out.spectrum;
    spec.tol_used = tol;
    spec.eigenvalues = sorted_by_real({solver.eigenvalues().begin(), solver.eigenvalues().end()});

    const double norm_m = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
    const double radius = opts.cluster_radius.value_or(opts.cluster_radius_rel * std::max(1.0, norm_m));
    const std::vector<int> ids = cluster_ids(spec.eigenvalues, radius);
    const int n_clusters = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;

    out.right = Matrix::Zero(n, n);
    out.left = Matrix::Zero(n, n);
    spec.clusters.resize(static_cast<std::size_t>(n_clusters));
    std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(n_clusters));
    for (Eigen::Index i = 0; i < n; ++i) {
        members[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])].push_back(i);
    }

    for (int c = 0; c < n_clusters; ++c) {
        const auto& idx = members[static_cast<std::size_t>(c)];
        Complex mean(0.0, 0.0);
        for (auto i : idx) {
            mean += spec.eigenvalues[static_cast<std::size_t>(i)];
        }
        mean /= static_cast<double>(idx.size());

        const Matrix shifted = m - mean * Matrix::Identity(n, n);
        const Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double threshold = opts.rank_rel_tol * std::max(sv(0), norm_m);
        int rank = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
            if (sv(k) > threshold) {
                ++rank;
            }
        }
        const int algebraic = static_cast<int>(idx.size());
        // At least one null vector exists at an eigenvalue, even if noise
        // pushes the smallest singular value over the threshold.
        const int geometric = std::clamp(static_cast<int>(n) - rank, 1, algebraic);
        spec.clusters[static_cast<std::size_t>(c)] = Cluster{mean, algebraic, geometric};

        for (std::size_t k = 0; k < idx.size(); ++k) {
            const Eigen::Index col = n - 1 - static_cast<Eigen::Index>(k % static_cast<std::size_t>(geometric));
            out.right.col(idx[k]) = svd.matrixV().col(col);
            out.left.col(idx[k]) = svd.matrixU().col(col);
            fix_phase(out.right.col(idx[k]));
            fix_phase(out.left.col(idx[k]));
        }
    }

    const bool all_real = std::all_of(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                      [tol](Complex z) { return std::abs(z.imag()) <= tol; });
    const bool all_imaginary = std::all_of(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                           [tol](Complex z) { return std::abs(z.real()) <= tol; });
    spec.reality = all_real ? Reality::AllReal
                 : all_imaginary ? Reality::AllImaginaryRealPart
                 : Reality::ComplexPairs;
    return out;
}

bool is_diagonalizable(const Matrix& m, double tol, const SpectralOptions& opts) {
    return eigendecompose(m, tol, opts).spectrum.diagonalizable();
}

double quartic_discriminant(const ModelParams& p) {
    const auto c = secular_coefficients(p);
    const double lin = c[2];
    const double q = c[4];
    const double gap = lin * lin - 4.0 * q;
    return 16.0 * q * gap * gap;
}

double signed_discriminant_root(const ModelParams& p) {
    const auto c = secular_coefficients(p);
    // The constant term is the perfect square (1 - beta^2)^2.
    const double root_q = p.B;
    const double lin = c[2];
    return 4.0 * root_q * (lin - 2.0 * root_q) * (lin + 2.0 * root_q);
}

EPLocation find_ep_on_segment(const ParamPath& path, double lo, double hi, double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw UsageError("find_ep_on_segment: need finite lo < hi");
    }
    if (!(tol > 0.0)) {
        throw UsageError("find_ep_on_segment: tolerance must be positive");
    }
    auto f = [&](double s) { return signed_discriminant_root(path(s)); };

    constexpr int kSamples = 64;
    std::vector<double> xs(kSamples + 1);
    std::vector<double> fs(kSamples + 1);
    for (int k = 0; k <= kSamples; ++k) {
        xs[k] = k == kSamples ? hi : lo + (hi - lo) * k / kSamples;
        fs[k] = f(xs[k]);
    }

    auto bisect = [&](double a, double fa, double b) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            const double fm = f(mid);
            if (fm == 0.0) {
                return mid;
            }
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
            if (b - a <= tol && std::abs(quartic_discriminant(path(0.5 * (a + b)))) <= tol) {
                break;
            }
        }
        return 0.5 * (a + b);
    };

    std::vector<double> roots;
    for (int k = 0; k < kSamples; ++k) {
        if (k > 0 && fs[k] == 0.0) {
            roots.push_back(xs[k]);
        } else if (fs[k] != 0.0 && fs[k + 1] != 0.0 && (fs[k] < 0.0) != (fs[k + 1] < 0.0)) {
            roots.push_back(bisect(xs[k], fs[k], xs[k + 1]));
        }
    }
    if (roots.empty()) {
        if (fs.front() == 0.0) {
            roots.push_back(lo);
        } else if (fs.back() == 0.0) {
            roots.push_back(hi);
        } else {
            throw DomainError("no EP bracketed on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
    }

    const double mid = 0.5 * (lo + hi);
    const double best = *std::min_element(roots.begin(), roots.end(), [mid](double a, double b) {
        return std::abs(a - mid) < std::abs(b - mid);
    });

    const ModelParams at = path(best);
    EPLocation loc;
    loc.parameter = best;
    loc.residual = std::abs(quartic_discriminant(at));
    if (loc.residual > tol) {
        throw DomainError("EP located but discriminant residual " + std::to_string(loc.residual) +
                          " exceeds tolerance");
    }
    // All four roots coincide only where A and C vanish together.
    const double quad_band = 10.0 * tol;
    loc.kind = (std::abs(at.A) <= quad_band && std::abs(at.C()) <= quad_band) ? EPKind::QuadrupleRoot
                                                                              : EPKind::DoubleRoot;
    return loc;
}

} // namespace ptcross
