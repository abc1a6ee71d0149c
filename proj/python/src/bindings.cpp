// Python bindings for the ptcross core library.

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptcross/domains.hpp"
#include "ptcross/metric.hpp"
#include "ptcross/model.hpp"
#include "ptcross/run.hpp"
#include "ptcross/spectral.hpp"
#include "ptcross/table.hpp"
#include "ptcross/unfolding.hpp"

namespace py = pybind11;
using namespace ptcross;

namespace {

std::string run_command(const std::string& command, const std::map<std::string, std::string>& parameters,
                        const std::string& format) {
    RunConfig cfg;
    cfg.command = command_from_string(command);
    cfg.parameters = parameters;
    cfg.output_format = format_from_string(format);
    cfg.command_line = "ptcross " + command;
    const Table t = run(cfg);
    std::ostringstream out;
    write_table(out, t, cfg.output_format);
    return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra, metrics and exceptional points of the four-level PT-symmetric model";
    m.attr("__version__") = PTCROSS_VERSION;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def_static("from_couplings", py::overload_cast<Complex, Complex>(&ModelParams::from_couplings),
                    py::arg("alpha"), py::arg("beta"))
        .def_static("from_AB", &ModelParams::from_AB, py::arg("A"), py::arg("B"))
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("A", &ModelParams::A)
        .def_readonly("B", &ModelParams::B)
        .def_property_readonly("C", &ModelParams::C)
        .def("real_couplings", &ModelParams::real_couplings)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(A=" + format_double(p.A) + ", B=" + format_double(p.B) + ")";
        });

    m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"));
    m.def("build_parity", &build_parity, py::arg("dim"));
    m.def("pt_residual", &pt_residual, py::arg("h"));
    m.def("secular_coefficients", &secular_coefficients, py::arg("params"));
    m.def("closed_form_energies", &closed_form_energies, py::arg("params"));

    py::enum_<Reality>(m, "Reality")
        .value("AllReal", Reality::AllReal)
        .value("ComplexPairs", Reality::ComplexPairs)
        .value("AllImaginaryRealPart", Reality::AllImaginaryRealPart);

    py::class_<Cluster>(m, "Cluster")
        .def_readonly("value", &Cluster::value)
        .def_readonly("algebraic", &Cluster::algebraic)
        .def_readonly("geometric", &Cluster::geometric);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("clusters", &Spectrum::clusters)
        .def_readonly("reality", &Spectrum::reality)
        .def_readonly("tol_used", &Spectrum::tol_used)
        .def("all_real", &Spectrum::all_real)
        .def("diagonalizable", &Spectrum::diagonalizable);

    py::class_<Eigendecomposition>(m, "Eigendecomposition")
        .def_readonly("spectrum", &Eigendecomposition::spectrum)
        .def_readonly("right", &Eigendecomposition::right)
        .def_readonly("left", &Eigendecomposition::left);

    m.def("eigendecompose", [](const Matrix& h, double tol) { return eigendecompose(h, tol); }, py::arg("m"),
          py::arg("tol") = 1e-9);
    m.def("is_diagonalizable", [](const Matrix& h, double tol) { return is_diagonalizable(h, tol); }, py::arg("m"),
          py::arg("tol") = 1e-9);

    py::enum_<EPKind>(m, "EPKind")
        .value("DoubleRoot", EPKind::DoubleRoot)
        .value("QuadrupleRoot", EPKind::QuadrupleRoot);
    py::class_<EPLocation>(m, "EPLocation")
        .def_readonly("parameter", &EPLocation::parameter)
        .def_readonly("residual", &EPLocation::residual)
        .def_readonly("kind", &EPLocation::kind);
    m.def("find_ep_on_segment", &find_ep_on_segment, py::arg("path"), py::arg("lo"), py::arg("hi"),
          py::arg("tol") = 1e-9);

    py::class_<SignatureReport>(m, "SignatureReport")
        .def_readonly("n_plus", &SignatureReport::n_plus)
        .def_readonly("n_zero", &SignatureReport::n_zero)
        .def_readonly("n_minus", &SignatureReport::n_minus)
        .def_readonly("positive_definite", &SignatureReport::positive_definite)
        .def_readonly("min_eigenvalue", &SignatureReport::min_eigenvalue);

    m.def("solve_metric_space", [](const Matrix& h, double tol) { return solve_metric_space(h, tol).basis; },
          py::arg("h"), py::arg("tol") = 1e-10, "Basis of the Hermitian solutions of H^dagger Theta = Theta H.");
    m.def("constraint_residual", &constraint_residual, py::arg("h"), py::arg("theta"));
    m.def("closed_form_theta", &closed_form_theta, py::arg("params"), py::arg("t"));
    m.def("diagonal_metric", &diagonal_metric, py::arg("params"), py::arg("t1") = 1.0);
    m.def("metric_from_left_eigenvectors",
          [](const Matrix& h, const std::vector<double>& kappas, double tol) {
              return metric_from_left_eigenvectors(h, kappas, tol);
          },
          py::arg("h"), py::arg("kappas"), py::arg("tol") = 1e-9);
    m.def("signature", &signature, py::arg("theta"), py::arg("tol") = 1e-10);
    m.def("hermitize", &hermitize, py::arg("h"), py::arg("theta"));

    py::enum_<NamedRegion>(m, "NamedRegion")
        .value("D2", NamedRegion::D2)
        .value("D3", NamedRegion::D3)
        .value("D5", NamedRegion::D5)
        .value("D6", NamedRegion::D6)
        .value("Boundary", NamedRegion::Boundary)
        .value("Broken", NamedRegion::Broken);

    py::class_<DomainLabel>(m, "DomainLabel")
        .def_readonly("hermitian", &DomainLabel::hermitian)
        .def_readonly("real_matrix", &DomainLabel::real_matrix)
        .def_readonly("spectrum_real", &DomainLabel::spectrum_real)
        .def_readonly("diagonalizable", &DomainLabel::diagonalizable)
        .def_readonly("crypto_hermitian", &DomainLabel::crypto_hermitian)
        .def_readonly("ep_boundary", &DomainLabel::ep_boundary)
        .def_readonly("named_region", &DomainLabel::named_region);

    m.def("classify_point", py::overload_cast<double, double, double>(&classify_point), py::arg("A"), py::arg("B"),
          py::arg("tol") = 1e-8);

    py::class_<UnfoldingReport>(m, "UnfoldingReport")
        .def_readonly("alpha", &UnfoldingReport::alpha)
        .def_readonly("gamma_samples", &UnfoldingReport::gamma_samples)
        .def_readonly("numeric_E", &UnfoldingReport::numeric_E)
        .def_readonly("closed_form_E", &UnfoldingReport::closed_form_E)
        .def_readonly("taylor_E", &UnfoldingReport::taylor_E)
        .def_readonly("max_abs_error_closed_vs_numeric", &UnfoldingReport::max_abs_error_closed_vs_numeric)
        .def_readonly("fitted_linear_coefficient", &UnfoldingReport::fitted_linear_coefficient)
        .def_readonly("fitted_quadratic_coefficient", &UnfoldingReport::fitted_quadratic_coefficient)
        .def_readonly("real_for_negative_gamma", &UnfoldingReport::real_for_negative_gamma)
        .def_readonly("real_for_positive_gamma", &UnfoldingReport::real_for_positive_gamma);

    m.def("perturbed_hamiltonian", &perturbed_hamiltonian, py::arg("alpha"), py::arg("gamma"));
    m.def("perturbed_small_eigenvalues", &perturbed_small_eigenvalues, py::arg("alpha"), py::arg("gamma"));
    m.def("taylor_small_eigenvalues", &taylor_small_eigenvalues, py::arg("alpha"), py::arg("gamma"));
    m.def("verify_unfolding", &verify_unfolding, py::arg("alpha"), py::arg("gamma_max") = 1e-2,
          py::arg("samples") = 10);

    m.def("ho_energy", [](int n, int q, double alpha, double c) { return ho_energy({n, q, alpha, c}); },
          py::arg("n"), py::arg("q"), py::arg("alpha"), py::arg("c") = 1.0);
    m.def("ho_crossing", &ho_crossing, py::arg("m"), py::arg("n"), py::arg("alpha"), py::arg("c") = 1.0);

    m.def("run", &run_command, py::arg("command"), py::arg("parameters"), py::arg("format") = "csv",
          "Runs one CLI subcommand in-process and returns the serialized table.");
}
