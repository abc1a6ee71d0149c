#include "ptcross/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ptcross/domains.hpp"
#include "ptcross/metric.hpp"
#include "ptcross/model.hpp"
#include "ptcross/spectral.hpp"
#include "ptcross/unfolding.hpp"

namespace ptcross {

namespace {

const std::vector<Command> kCommands = {
    Command::Spectrum, Command::Metric, Command::Scan, Command::Sweep,
    Command::Unfold, Command::HO, Command::EPFind,
};

const std::vector<std::string> kPointKeys = {"A", "B", "alpha", "beta"};

} // namespace

const char* to_string(Command c) {
    switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Metric: return "metric";
    case Command::Scan: return "scan";
    case Command::Sweep: return "sweep";
    case Command::Unfold: return "unfold";
    case Command::HO: return "ho";
    case Command::EPFind: return "ep-find";
    }
    return "?";
}

Command command_from_string(const std::string& s) {
    for (Command c : kCommands) {
        if (s == to_string(c)) {
            return c;
        }
    }
    throw UsageError("unknown command '" + s + "'");
}

const std::vector<Command>& all_commands() { return kCommands; }

const std::vector<std::string>& allowed_parameters(Command c) {
    static const std::vector<std::string> spectrum = {"A", "B", "alpha", "beta", "tol"};
    static const std::vector<std::string> metric = {"A", "B", "alpha", "beta", "mode", "t1", "t2", "t3", "t4",
                                                    "kappa", "tol"};
    static const std::vector<std::string> scan = {"A-from", "A-to", "B-from", "B-to", "nA", "nB", "tol"};
    static const std::vector<std::string> sweep = {"fix", "vary", "from", "to", "steps", "tol"};
    static const std::vector<std::string> unfold = {"alpha", "gamma-max", "samples"};
    static const std::vector<std::string> ho = {"alpha", "c", "n-max"};
    static const std::vector<std::string> ep_find = {"fix", "vary", "from", "to", "tol"};
    switch (c) {
    case Command::Spectrum: return spectrum;
    case Command::Metric: return metric;
    case Command::Scan: return scan;
    case Command::Sweep: return sweep;
    case Command::Unfold: return unfold;
    case Command::HO: return ho;
    case Command::EPFind: return ep_find;
    }
    throw UsageError("unknown command");
}

namespace {

// Typed access to the raw parameter map.
class Params {
public:
    explicit Params(const RunConfig& cfg) : cfg_(cfg) {
        const auto& allowed = allowed_parameters(cfg.command);
        for (const auto& [key, value] : cfg.parameters) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                throw UsageError(std::string("unknown parameter '--") + key + "' for command " + to_string(cfg.command));
            }
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return cfg_.parameters.count(key) != 0; }

    [[nodiscard]] const std::string& text(const std::string& key) const {
        const auto it = cfg_.parameters.find(key);
        if (it == cfg_.parameters.end()) {
            throw UsageError("missing required parameter '--" + key + "'");
        }
        return it->second;
    }

    [[nodiscard]] std::string text_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? text(key) : fallback;
    }

    [[nodiscard]] double number(const std::string& key) const { return parse_number(key, text(key)); }

    [[nodiscard]] double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    [[nodiscard]] int integer_or(const std::string& key, int fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const double v = number(key);
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            throw UsageError("parameter '--" + key + "' must be an integer");
        }
        return static_cast<int>(v);
    }

    static double parse_number(const std::string& key, const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw UsageError("parameter '--" + key + "' expects a finite number, got '" + s + "'");
        }
        return v;
    }

private:
    const RunConfig& cfg_;
};

void add_header(Table& t, const RunConfig& cfg) {
    t.add_meta("tool", "ptcross");
    t.add_meta("version", PTCROSS_VERSION);
    t.add_meta("command", to_string(cfg.command));
    if (!cfg.command_line.empty()) {
        t.add_meta("command_line", cfg.command_line);
    }
}

// Either (A, B) or (alpha, beta), never a mixture.
ModelParams point_from(const Params& p, Table& t) {
    const bool ab = p.has("A") || p.has("B");
    const bool couplings = p.has("alpha") || p.has("beta");
    if (ab && couplings) {
        throw UsageError("give either --A/--B or --alpha/--beta, not both");
    }
    ModelParams point;
    if (couplings) {
        point = ModelParams::from_couplings(p.number("alpha"), p.number("beta"));
        t.add_meta("coordinates", "alpha-beta");
    } else {
        point = ModelParams::from_AB(p.number("A"), p.number("B"));
        t.add_meta("coordinates", "A-B");
    }
    t.add_meta("A", point.A);
    t.add_meta("B", point.B);
    t.add_meta("C", point.C());
    t.add_meta("alpha_re", point.alpha.real());
    t.add_meta("alpha_im", point.alpha.imag());
    t.add_meta("beta_re", point.beta.real());
    t.add_meta("beta_im", point.beta.imag());
    return point;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

FixedAxis parse_fix(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
        throw UsageError("--fix expects AXIS=VALUE, got '" + s + "'");
    }
    FixedAxis f;
    f.axis = sweep_axis_from_string(s.substr(0, eq));
    if (f.axis == SweepAxis::Diagonal) {
        throw UsageError("--fix axis must be A or B");
    }
    f.value = Params::parse_number("fix", s.substr(eq + 1));
    return f;
}

std::optional<FixedAxis> fix_for(const Params& p, SweepAxis vary) {
    if (vary == SweepAxis::Diagonal) {
        if (p.has("fix")) {
            throw UsageError("--fix is not used with --vary diagonal");
        }
        return std::nullopt;
    }
    return parse_fix(p.text("fix"));
}

void add_matrix_rows(Table& t, const Matrix& m, std::optional<int> basis_index) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::vector<Cell> row;
            if (basis_index) {
                row.emplace_back(static_cast<double>(*basis_index));
            }
            row.emplace_back(static_cast<double>(i + 1));
            row.emplace_back(static_cast<double>(j + 1));
            row.emplace_back(m(i, j).real());
            row.emplace_back(m(i, j).imag());
            t.rows.push_back(std::move(row));
        }
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(Params::parse_number(key, item));
    }
    return out;
}

Table run_spectrum(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const ModelParams point = point_from(p, t);
    const double tol = p.number_or("tol", 1e-10);
    const SpectralOptions opts;
    t.add_meta("tol", tol);
    t.add_meta("cluster_radius_rel", opts.cluster_radius_rel);
    t.add_meta("rank_rel_tol", opts.rank_rel_tol);

    const Matrix h = build_hamiltonian(point);
    const auto eig = eigendecompose(h, tol, opts);
    const auto closed = closed_form_energies(point);
    const auto closed_sorted = sorted_by_real({closed.begin(), closed.end()});
    const auto perm = best_matching(closed_sorted, eig.spectrum.eigenvalues);

    t.add_meta("reality", to_string(eig.spectrum.reality));
    t.add_meta("diagonalizable", bool_text(eig.spectrum.diagonalizable()));
    t.add_meta("pt_residual", pt_residual(h));
    t.add_meta("max_closed_vs_numeric", multiset_distance(closed_sorted, eig.spectrum.eigenvalues));

    t.columns = {"index", "re", "im", "numeric_re", "numeric_im", "algebraic_multiplicity",
                 "geometric_multiplicity"};
    for (std::size_t k = 0; k < closed_sorted.size(); ++k) {
        const Complex numeric = eig.spectrum.eigenvalues[perm[k]];
        const auto cluster = std::min_element(
            eig.spectrum.clusters.begin(), eig.spectrum.clusters.end(),
            [numeric](const Cluster& a, const Cluster& b) {
                return std::abs(a.value - numeric) < std::abs(b.value - numeric);
            });
        t.rows.push_back({static_cast<double>(k + 1), closed_sorted[k].real(), closed_sorted[k].imag(),
                          numeric.real(), numeric.imag(), static_cast<double>(cluster->algebraic),
                          static_cast<double>(cluster->geometric)});
    }
    return t;
}

void add_signature_meta(Table& t, const Matrix& h, const Matrix& theta, double tol) {
    const SignatureReport sig = signature(theta, tol);
    t.add_meta("n_plus", static_cast<double>(sig.n_plus));
    t.add_meta("n_zero", static_cast<double>(sig.n_zero));
    t.add_meta("n_minus", static_cast<double>(sig.n_minus));
    t.add_meta("positive_definite", bool_text(sig.positive_definite));
    t.add_meta("min_eigenvalue", sig.min_eigenvalue);
    const double scale = h.norm() * theta.norm();
    t.add_meta("constraint_residual_rel", scale > 0.0 ? constraint_residual(h, theta) / scale : 0.0);
}

Table run_metric(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const ModelParams point = point_from(p, t);
    const std::string mode = p.text_or("mode", "family");
    const double tol = p.number_or("tol", 1e-10);
    t.add_meta("mode", mode);
    t.add_meta("tol", tol);
    const Matrix h = build_hamiltonian(point);

    auto reject = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys) {
            if (p.has(k)) {
                throw UsageError(std::string("--") + k + " is not used in metric mode " + mode);
            }
        }
    };

    if (mode == "family") {
        reject({"t1", "t2", "t3", "t4", "kappa"});
        const MetricFamily fam = solve_metric_space(h, tol);
        t.add_meta("family_dim", static_cast<double>(fam.family_dim()));
        t.columns = {"basis", "row", "col", "re", "im"};
        for (int k = 0; k < fam.family_dim(); ++k) {
            add_matrix_rows(t, fam.basis[static_cast<std::size_t>(k)], k + 1);
        }
        return t;
    }

    Matrix theta;
    if (mode == "diagonal") {
        reject({"t2", "t3", "t4", "kappa"});
        const double t1 = p.number_or("t1", 1.0);
        t.add_meta("t1", t1);
        theta = diagonal_metric(point, t1);
    } else if (mode == "closed") {
        reject({"kappa"});
        const std::array<double, 4> coords = {p.number_or("t1", 1.0), p.number_or("t2", 0.0),
                                              p.number_or("t3", 0.0), p.number_or("t4", 0.0)};
        for (std::size_t k = 0; k < 4; ++k) {
            t.add_meta("t" + std::to_string(k + 1), coords[k]);
        }
        theta = closed_form_theta(point, coords);
    } else if (mode == "spectral") {
        reject({"t1", "t2", "t3", "t4"});
        const auto kappas = parse_list("kappa", p.text_or("kappa", "1,1,1,1"));
        std::string echo;
        for (std::size_t k = 0; k < kappas.size(); ++k) {
            echo += (k ? "," : "") + format_double(kappas[k]);
        }
        t.add_meta("kappa", echo);
        theta = metric_from_left_eigenvectors(h, kappas);
    } else {
        throw UsageError("unknown metric mode '" + mode + "' (expected family, diagonal, closed or spectral)");
    }
    add_signature_meta(t, h, theta, tol);
    t.columns = {"row", "col", "re", "im"};
    add_matrix_rows(t, theta, std::nullopt);
    return t;
}

Table run_scan(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const Interval a{p.number_or("A-from", -1.0), p.number_or("A-to", 2.0)};
    const Interval b{p.number_or("B-from", -1.0), p.number_or("B-to", 2.0)};
    const int na = p.integer_or("nA", 61);
    const int nb = p.integer_or("nB", 61);
    const double tol = p.number_or("tol", 1e-8);
    const ScanGrid grid = scan_grid(a, b, na, nb, tol);

    t.add_meta("A_from", a.lo);
    t.add_meta("A_to", a.hi);
    t.add_meta("B_from", b.lo);
    t.add_meta("B_to", b.hi);
    t.add_meta("nA", static_cast<double>(na));
    t.add_meta("nB", static_cast<double>(nb));
    t.add_meta("tol", grid.tolerances.tol);
    t.add_meta("reality_tol", grid.tolerances.reality_tol);
    t.add_meta("cluster_radius_rel", grid.tolerances.cluster_radius_rel);
    t.add_meta("rank_rel_tol", grid.tolerances.rank_rel_tol);
    t.add_meta("metric_tol", grid.tolerances.metric_tol);
    t.add_meta("ordering", "row-major, A fastest, cell centers");

    t.columns = {"i", "j", "A", "B", "hermitian", "real_matrix", "spectrum_real", "diagonalizable",
                 "crypto_hermitian", "ep_boundary", "region"};
    for (int j = 0; j < nb; ++j) {
        for (int i = 0; i < na; ++i) {
            const DomainLabel& l = grid.at(i, j);
            t.rows.push_back({static_cast<double>(i), static_cast<double>(j), grid.A_center(i), grid.B_center(j),
                              l.hermitian, l.real_matrix, l.spectrum_real, l.diagonalizable, l.crypto_hermitian,
                              l.ep_boundary, std::string(l.named_region ? to_string(*l.named_region) : "")});
        }
    }
    return t;
}

Table run_sweep(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const SweepAxis vary = sweep_axis_from_string(p.text("vary"));
    const auto fixed = fix_for(p, vary);
    const Interval range{p.number("from"), p.number("to")};
    const int steps = p.integer_or("steps", 101);
    const double tol = p.number_or("tol", 1e-8);
    const SweepTable sweep = sweep_spectrum(fixed, vary, range, steps, tol);

    t.add_meta("vary", to_string(vary));
    if (fixed) {
        t.add_meta("fix_axis", to_string(fixed->axis));
        t.add_meta("fix_value", fixed->value);
    }
    t.add_meta("from", range.lo);
    t.add_meta("to", range.hi);
    t.add_meta("steps", static_cast<double>(steps));
    t.add_meta("tol", tol);
    t.add_meta("reality_tol", DomainTolerances::from_band(tol).reality_tol);
    t.add_meta("energies", "closed form, sorted by real part then imaginary part");

    t.columns = {"parameter", "A", "B"};
    for (int k = 1; k <= 4; ++k) {
        t.columns.push_back("E" + std::to_string(k) + "_re");
        t.columns.push_back("E" + std::to_string(k) + "_im");
    }
    t.columns.emplace_back("all_real");
    for (const SweepRow& r : sweep.rows) {
        std::vector<Cell> row = {r.parameter, r.A, r.B};
        for (const Complex& e : r.energies) {
            row.emplace_back(e.real());
            row.emplace_back(e.imag());
        }
        row.emplace_back(r.all_real);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table run_unfold(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const double alpha = p.number("alpha");
    const double gamma_max = p.number_or("gamma-max", 1e-2);
    const int samples = p.integer_or("samples", 10);
    const UnfoldingReport r = verify_unfolding(alpha, gamma_max, samples);

    t.add_meta("alpha", alpha);
    t.add_meta("gamma_max", gamma_max);
    t.add_meta("samples", static_cast<double>(samples));
    t.add_meta("fit", "least squares, quartic in gamma, branch 1");
    t.add_meta("fitted_linear_coefficient", r.fitted_linear_coefficient);
    t.add_meta("fitted_quadratic_coefficient", r.fitted_quadratic_coefficient);
    t.add_meta("series_linear_coefficient", series_linear_coefficient(alpha));
    t.add_meta("series_quadratic_coefficient", series_quadratic_coefficient(alpha));
    t.add_meta("max_abs_error_closed_vs_numeric", r.max_abs_error_closed_vs_numeric);
    t.add_meta("real_for_negative_gamma", bool_text(r.real_for_negative_gamma));
    t.add_meta("real_for_positive_gamma", bool_text(r.real_for_positive_gamma));

    t.columns = {"gamma", "B",
                 "numeric_1_re", "numeric_1_im", "numeric_2_re", "numeric_2_im",
                 "closed_1_re", "closed_1_im", "closed_2_re", "closed_2_im",
                 "taylor_1", "taylor_2"};
    for (std::size_t s = 0; s < r.gamma_samples.size(); ++s) {
        const double g = r.gamma_samples[s];
        const auto& n = r.numeric_E[s];
        const auto& c = r.closed_form_E[s];
        t.rows.push_back({g, unfolding_B(g),
                          n[0].real(), n[0].imag(), n[1].real(), n[1].imag(),
                          c[0].real(), c[0].imag(), c[1].real(), c[1].imag(),
                          r.taylor_E[s][0], r.taylor_E[s][1]});
    }
    return t;
}

Table run_ho(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const double alpha = p.number("alpha");
    const double c = p.number_or("c", 1.0);
    const int n_max = p.integer_or("n-max", 5);
    if (!(c > 0.0)) {
        throw DomainError("regularization shift c must be positive");
    }
    if (n_max < 0) {
        throw UsageError("--n-max must be non-negative");
    }
    t.add_meta("alpha", alpha);
    t.add_meta("c", c);
    t.add_meta("n_max", static_cast<double>(n_max));

    t.columns = {"n", "q", "energy", "crosses_with"};
    for (int n = 0; n <= n_max; ++n) {
        for (int q : {1, -1}) {
            double partner = -1.0;
            for (int other = 0; other <= n_max; ++other) {
                const bool crosses = q == 1 ? ho_crossing(n, other, alpha, c) : ho_crossing(other, n, alpha, c);
                if (crosses) {
                    partner = other;
                    break;
                }
            }
            t.rows.push_back({static_cast<double>(n), static_cast<double>(q), ho_energy({n, q, alpha, c}), partner});
        }
    }
    return t;
}

Table run_ep_find(const RunConfig& cfg, const Params& p) {
    Table t;
    add_header(t, cfg);
    const SweepAxis vary = sweep_axis_from_string(p.text("vary"));
    const auto fixed = fix_for(p, vary);
    const double lo = p.number("from");
    const double hi = p.number("to");
    const double tol = p.number_or("tol", 1e-9);

    const ParamPath path = [vary, fixed](double s) {
        switch (vary) {
        case SweepAxis::A: return ModelParams::from_AB(s, fixed->value);
        case SweepAxis::B: return ModelParams::from_AB(fixed->value, s);
        case SweepAxis::Diagonal: break;
        }
        return ModelParams::from_AB(s, s);
    };
    const EPLocation loc = find_ep_on_segment(path, lo, hi, tol);
    const ModelParams at = path(loc.parameter);

    t.add_meta("vary", to_string(vary));
    if (fixed) {
        t.add_meta("fix_axis", to_string(fixed->axis));
        t.add_meta("fix_value", fixed->value);
    }
    t.add_meta("from", lo);
    t.add_meta("to", hi);
    t.add_meta("tol", tol);
    t.columns = {"parameter", "A", "B", "C", "residual", "kind"};
    t.rows.push_back({loc.parameter, at.A, at.B, at.C(), loc.residual, std::string(to_string(loc.kind))});
    return t;
}

} // namespace

Table run(const RunConfig& config) {
    const Params p(config);
    switch (config.command) {
    case Command::Spectrum: return run_spectrum(config, p);
    case Command::Metric: return run_metric(config, p);
    case Command::Scan: return run_scan(config, p);
    case Command::Sweep: return run_sweep(config, p);
    case Command::Unfold: return run_unfold(config, p);
    case Command::HO: return run_ho(config, p);
    case Command::EPFind: return run_ep_find(config, p);
    }
    throw UsageError("unknown command");
}

int run_and_emit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Table table = run(config);
        if (config.output_path) {
            std::ofstream file(*config.output_path, std::ios::binary);
            if (!file) {
                err << "error: cannot open output file '" << *config.output_path << "'\n";
                return 1;
            }
            write_table(file, table, config.output_format);
        } else {
            write_table(out, table, config.output_format);
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace ptcross
