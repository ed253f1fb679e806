// Python bindings for the main operations: form construction, the derivation
// pipeline, classification, sweeps, and the integrators. Matrices cross the
// boundary as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liouform/canonical.hpp"
#include "liouform/derivation.hpp"
#include "liouform/diagnostics.hpp"
#include "liouform/dynamics.hpp"
#include "liouform/errors.hpp"
#include "liouform/forms.hpp"
#include "liouform/verify.hpp"

namespace py = pybind11;
using namespace liouform;

namespace {

forms::FamilySpec spec_from_kwargs(const std::string& family, int n, py::kwargs kwargs) {
    forms::FamilySpec spec;
    spec.family = forms::family_from_string(family);
    spec.n = n;
    for (const auto& item : kwargs) {
        const auto key = item.first.cast<std::string>();
        if (key != "phi" && key != "alpha" && key != "beta" && key != "gamma" &&
            key != "matrix") {
            throw InvalidSpecError("unknown form parameter '" + key + "'");
        }
    }
    auto read_vec = [&](const char* name) {
        return kwargs[name].cast<Vector>();
    };
    if (kwargs.contains("phi")) spec.phi = kwargs["phi"].cast<double>();
    if (kwargs.contains("alpha")) spec.alpha = read_vec("alpha");
    if (kwargs.contains("beta")) spec.beta = read_vec("beta");
    if (kwargs.contains("gamma")) spec.gamma = read_vec("gamma");
    if (kwargs.contains("matrix")) spec.matrix = kwargs["matrix"].cast<Matrix>();
    return spec;
}

py::dict report_to_dict(const derivation::SymplecticityReport& rep) {
    py::dict d;
    d["n"] = rep.n;
    d["P0"] = rep.map.P0;
    d["Ph"] = rep.map.Ph;
    d["identity_residual"] = rep.identity_residual;
    d["b"] = rep.b;
    d["hamiltonian_residual"] = rep.hamiltonian_residual;
    d["verdict"] = std::string(derivation::to_string(rep.verdict));
    d["rho_is_zero"] = rep.rho_is_zero;
    return d;
}

dynamics::SolverOptions solver_options(const std::string& method, double tol, int max_iter) {
    dynamics::SolverOptions opts;
    if (method == "newton") {
        opts.method = dynamics::SolverMethod::newton;
    } else if (method != "fixed_point") {
        throw InvalidSpecError("method must be fixed_point or newton");
    }
    opts.tolerance = tol;
    opts.max_iterations = max_iter;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_liouform, m) {
    m.doc() = "Constant-coefficient 1-forms on product phase space and the "
              "implicit one-step integrators they generate";

    py::register_exception<InvalidDimensionError>(m, "InvalidDimensionError", PyExc_ValueError);
    py::register_exception<InvalidSpecError>(m, "InvalidSpecError", PyExc_ValueError);
    py::register_exception<NotLiouvillianError>(m, "NotLiouvillianError", PyExc_ValueError);
    py::register_exception<SingularTransformError>(m, "SingularTransformError", PyExc_ValueError);
    py::register_exception<SolverFailureError>(m, "SolverFailureError", PyExc_RuntimeError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_RuntimeError);

    m.def("j0", &canonical::j0, py::arg("n"));
    m.def("jtilde", &canonical::jtilde, py::arg("n"));
    m.def(
        "is_hamiltonian_matrix",
        [](const Matrix& B, double tol) {
            const auto r = canonical::is_hamiltonian_matrix(B, tol);
            return py::make_tuple(r.ok, r.residual);
        },
        py::arg("B"), py::arg("tol") = kIdentityTol);
    m.def(
        "is_symplectic_matrix",
        [](const Matrix& M, const Matrix& J, double tol) {
            const auto r = canonical::is_symplectic_matrix(M, J, tol);
            return py::make_tuple(r.ok, r.residual);
        },
        py::arg("M"), py::arg("J"), py::arg("tol") = kIdentityTol);
    m.def(
        "is_symplectic_rotation",
        [](const Matrix& R, int n, double tol) {
            const auto r = canonical::is_symplectic_rotation(R, n, tol);
            return py::make_tuple(r.ok, r.orthogonality_residual, r.symplecticity_residual);
        },
        py::arg("R"), py::arg("n"), py::arg("tol") = kIdentityTol);

    py::class_<forms::LiouvillianForm>(m, "LiouvillianForm")
        .def_property_readonly("n", &forms::LiouvillianForm::n)
        .def_property_readonly("matrix", &forms::LiouvillianForm::matrix)
        .def_property_readonly("is_liouvillian", &forms::LiouvillianForm::is_liouvillian)
        .def_property_readonly("exactness_residual",
                               &forms::LiouvillianForm::exactness_residual)
        .def("__repr__", [](const forms::LiouvillianForm& f) {
            return "<LiouvillianForm n=" + std::to_string(f.n()) +
                   (f.is_liouvillian() ? "" : " (flagged non-Liouvillian)") + ">";
        });

    m.def(
        "make_form",
        [](const std::string& family, int n, py::kwargs kwargs) {
            return forms::make_family_form(spec_from_kwargs(family, n, kwargs));
        },
        py::arg("family"), py::arg("n") = 1,
        "Build a named family member; parameters via keywords "
        "(phi=, alpha=, beta=, gamma=, matrix=)");
    m.def("form_from_matrix", &forms::form_from_matrix, py::arg("n"), py::arg("A"),
          py::arg("tol") = kIdentityTol);
    m.def("rotation_matrix", &forms::rotation_matrix, py::arg("n"), py::arg("phi"));
    m.def("e1_matrix", &forms::e1_matrix, py::arg("n"));
    m.def("psi_matrix", &forms::psi_matrix, py::arg("n"), py::arg("phi"));
    m.def("tautological_product_form", &forms::tautological_product_form, py::arg("n"));
    m.def("pullback_form", &forms::pullback_form, py::arg("T"), py::arg("base"));
    m.def("form_from_generator", &forms::form_from_generator, py::arg("T"));
    m.def(
        "matricial_decomposition",
        [](const forms::LiouvillianForm& f) {
            const auto d = forms::matricial_decomposition(f);
            return py::make_tuple(d.antisymmetric, d.symmetric);
        },
        py::arg("form"));

    m.def("vertical_coefficients", &derivation::vertical_coefficients, py::arg("form"));
    m.def("tangent_coefficients", &derivation::tangent_coefficients, py::arg("form"));
    m.def(
        "implicit_map",
        [](const forms::LiouvillianForm& f) {
            const auto map = derivation::implicit_map(f);
            return py::make_tuple(map.P0, map.Ph);
        },
        py::arg("form"));
    m.def(
        "classify",
        [](const forms::LiouvillianForm& f, double tol) {
            return report_to_dict(derivation::classify(f, tol));
        },
        py::arg("form"), py::arg("tol") = kIdentityTol);
    m.def("kernel_basis", &derivation::kernel_basis, py::arg("form"),
          py::arg("tol") = kIdentityTol);

    py::class_<dynamics::HamiltonianSystem>(m, "HamiltonianSystem")
        .def_readonly("n", &dynamics::HamiltonianSystem::n)
        .def_readonly("name", &dynamics::HamiltonianSystem::name)
        .def("energy",
             [](const dynamics::HamiltonianSystem& s, const Vector& z) { return s.energy(z); })
        .def("gradient",
             [](const dynamics::HamiltonianSystem& s, const Vector& z) { return s.gradient(z); });

    m.def("builtin_system", &dynamics::builtin_system, py::arg("name"), py::arg("n"),
          py::arg("params") = std::vector<double>{});
    m.def("quadratic_system", &dynamics::quadratic_system, py::arg("M"));
    m.def("hamiltonian_vector_field", &dynamics::hamiltonian_vector_field,
          py::arg("system"), py::arg("z"));

    py::class_<dynamics::SchemeSpec>(m, "SchemeSpec")
        .def_readonly("label", &dynamics::SchemeSpec::label)
        .def_property_readonly("P0",
                               [](const dynamics::SchemeSpec& s) { return s.map.P0; })
        .def_property_readonly("Ph",
                               [](const dynamics::SchemeSpec& s) { return s.map.Ph; });

    m.def("named_scheme", &dynamics::named_scheme, py::arg("name"), py::arg("n"));
    m.def("scheme_from_form", &dynamics::scheme_from_form, py::arg("form"),
          py::arg("label") = "");

    m.def(
        "step",
        [](const dynamics::SchemeSpec& scheme, const dynamics::HamiltonianSystem& system,
           const Vector& z0, double h, const std::string& method, double tol, int max_iter) {
            const auto r = dynamics::step(scheme, system, z0, h,
                                          solver_options(method, tol, max_iter));
            return py::make_tuple(r.z, r.iterations);
        },
        py::arg("scheme"), py::arg("system"), py::arg("z0"), py::arg("h"),
        py::arg("method") = "fixed_point", py::arg("tol") = 1e-13,
        py::arg("max_iterations") = 100);

    m.def(
        "integrate",
        [](const dynamics::SchemeSpec& scheme, const dynamics::HamiltonianSystem& system,
           const Vector& z0, double h, int steps, const std::string& method, double tol,
           int max_iter) {
            const auto r = dynamics::integrate(scheme, system, z0, h, steps,
                                               solver_options(method, tol, max_iter));
            py::dict d;
            d["states"] = r.trajectory.states;
            d["energies"] = r.trajectory.energies;
            d["solver_iterations"] = r.trajectory.solver_iterations;
            d["h"] = r.trajectory.h;
            d["completed"] = r.completed;
            d["error"] = r.error;
            return d;
        },
        py::arg("scheme"), py::arg("system"), py::arg("z0"), py::arg("h"),
        py::arg("steps"), py::arg("method") = "fixed_point", py::arg("tol") = 1e-13,
        py::arg("max_iterations") = 100);

    m.def("linear_step_matrix", &dynamics::linear_step_matrix, py::arg("scheme"),
          py::arg("M"), py::arg("h"));

    m.def(
        "sweep_theta_phi",
        [](int n, const std::vector<double>& grid, double tol) {
            py::list out;
            for (const auto& rec : diagnostics::sweep_theta_phi(n, grid, tol)) {
                py::dict d;
                d["phi"] = rec.parameters.at(0);
                d["identity_residual"] = rec.identity_residual;
                d["hamiltonian_residual"] = rec.hamiltonian_residual;
                d["verdict"] = std::string(derivation::to_string(rec.verdict));
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("n"), py::arg("grid"), py::arg("tol") = kIdentityTol);

    m.def(
        "step_jacobian",
        [](const dynamics::SchemeSpec& scheme, const dynamics::HamiltonianSystem& system,
           const Vector& z, double h, double fd_epsilon) {
            return diagnostics::step_jacobian(scheme, system, z, h, fd_epsilon);
        },
        py::arg("scheme"), py::arg("system"), py::arg("z"), py::arg("h"),
        py::arg("fd_epsilon") = 1e-6);
    m.def("symplectic_residual", &diagnostics::symplectic_residual, py::arg("M"));

    m.def(
        "run_checks",
        [](py::object only, py::object tol) {
            verify::VerifyOptions opts;
            if (!only.is_none()) opts.only = only.cast<std::string>();
            if (!tol.is_none()) opts.tol_override = tol.cast<double>();
            py::list out;
            for (const auto& r : verify::run_checks(opts)) {
                py::dict d;
                d["id"] = r.id;
                d["title"] = r.title;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("only") = py::none(), py::arg("tol") = py::none(),
        "Run the reproduction suite and return per-check results");
}
