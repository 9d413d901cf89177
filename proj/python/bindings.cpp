#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "poafd/basis_method.hpp"
#include "poafd/cli.hpp"
#include "poafd/error.hpp"
#include "poafd/poafd_engine.hpp"
#include "poafd/problem_solvers.hpp"
#include "poafd/verify.hpp"

namespace py = pybind11;
using namespace poafd;

namespace {

using Coeffs = std::vector<Complex>;

DiscFunction disc(const Coeffs& c) {
    if (c.empty()) throw Error(ErrorCode::invalid_argument, "coefficient list is empty");
    return DiscFunction(c);
}

BoundaryFunction boundary(const Coeffs& c) { return BoundaryFunction(c); }

Mode mode_from(const std::string& name) {
    if (name == "full") return Mode::full;
    if (name == "weak") return Mode::weak;
    throw Error(ErrorCode::invalid_argument, "mode must be 'full' or 'weak'");
}

std::string mode_name(Mode m) { return m == Mode::full ? "full" : "weak"; }

std::vector<std::pair<Complex, int>> params_of(const OrthoSystem& sys) {
    std::vector<std::pair<Complex, int>> out;
    for (const auto& p : sys.params()) out.emplace_back(p.q, p.order);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pre-orthogonal adaptive Fourier decomposition in the Hardy space";

    py::register_exception<Error>(m, "PoafdError", PyExc_ValueError);

    m.attr("DEFAULT_DEGREE") = kDefaultDegree;
    m.attr("DEFAULT_R_MAX") = kDefaultRMax;

    m.def("szego", [](Complex q, int order, std::size_t degree) { return szego({q, order}, degree).vector(); },
          py::arg("q"), py::arg("order") = 0, py::arg("degree") = kDefaultDegree,
          "Taylor coefficients of the (derivative) Szego kernel at q.");
    m.def("evaluate", [](const Coeffs& f, Complex p) { return evaluate(disc(f), p); },
          py::arg("coeffs"), py::arg("p"));
    m.def("hk_inner", [](const Coeffs& a, const Coeffs& b) { return hk_inner(disc(a), disc(b)); },
          py::arg("a"), py::arg("b"));
    m.def("apply_L", [](const Coeffs& f) { return apply_L(boundary(f)).vector(); }, py::arg("boundary"));

    py::class_<PoafdConfig>(m, "Config")
        .def(py::init([](const std::string& mode, double rho, int max_terms, double tol_residual,
                         int grid_radial, int grid_angular, double r_max, int refine_steps,
                         std::size_t degree, double eps_coincide, double delta_span) {
                 PoafdConfig c;
                 c.mode = mode_from(mode);
                 c.rho = rho;
                 c.max_terms = max_terms;
                 c.tol_residual = tol_residual;
                 c.grid = SelectionGrid::polar(grid_radial, grid_angular, r_max);
                 c.refine_steps = refine_steps;
                 c.degree = degree;
                 c.eps_coincide = eps_coincide;
                 c.delta_span = delta_span;
                 c.validate();
                 return c;
             }),
             py::arg("mode") = "full", py::arg("rho") = 0.9, py::arg("max_terms") = 64,
             py::arg("tol_residual") = 1e-8, py::arg("grid_radial") = 64, py::arg("grid_angular") = 128,
             py::arg("r_max") = kDefaultRMax, py::arg("refine_steps") = 3, py::arg("degree") = kDefaultDegree,
             py::arg("eps_coincide") = kDefaultEpsCoincide, py::arg("delta_span") = kDefaultDeltaSpan)
        .def_property_readonly("mode", [](const PoafdConfig& c) { return mode_name(c.mode); })
        .def_readonly("rho", &PoafdConfig::rho)
        .def_readonly("max_terms", &PoafdConfig::max_terms)
        .def_readonly("tol_residual", &PoafdConfig::tol_residual)
        .def_readonly("refine_steps", &PoafdConfig::refine_steps)
        .def_readonly("degree", &PoafdConfig::degree);

    py::class_<ExpansionResult>(m, "Expansion")
        .def_property_readonly("mode", [](const ExpansionResult& r) { return mode_name(r.mode); })
        .def_property_readonly("params", [](const ExpansionResult& r) { return params_of(r.system); })
        .def_readonly("coefficients", &ExpansionResult::coefficients)
        .def_readonly("residual_norms", &ExpansionResult::residual_norms)
        .def_readonly("objective_trace", &ExpansionResult::objective_trace)
        .def_readonly("supremum_trace", &ExpansionResult::supremum_trace)
        .def_property_readonly("terms", &ExpansionResult::terms)
        .def("basis", [](const ExpansionResult& r, std::size_t i) { return r.system.basis(i).vector(); })
        .def("reconstruct", [](const ExpansionResult& r, std::size_t n) { return reconstruct(r, n).vector(); },
             py::arg("n"))
        .def("__len__", &ExpansionResult::terms);

    m.def("expand", [](const Coeffs& f, const PoafdConfig& c) { return poafd_expand(disc(f), c); },
          py::arg("coeffs"), py::arg("config") = PoafdConfig{}, py::call_guard<py::gil_scoped_release>());

    py::class_<InversionResult>(m, "Inversion")
        .def_readonly("expansion", &InversionResult::expansion)
        .def_property_readonly("inverse", [](const InversionResult& r) { return r.inverse.vector(); })
        .def("inverse_prefix", [](const InversionResult& r, std::size_t n) { return r.inverse_prefix(n).vector(); });

    m.def("invert", [](const Coeffs& f, const PoafdConfig& c) { return solve_inversion(disc(f), c); },
          py::arg("coeffs"), py::arg("config") = PoafdConfig{}, py::call_guard<py::gil_scoped_release>());

    py::class_<PseudoInverseResult>(m, "PseudoInverse")
        .def_readonly("defect", &PseudoInverseResult::defect)
        .def_readonly("expansion", &PseudoInverseResult::expansion)
        .def_property_readonly("projection", [](const PseudoInverseResult& r) { return r.projection.vector(); })
        .def_property_readonly("inverse", [](const PseudoInverseResult& r) { return r.inverse.vector(); })
        .def("approximation_error2", [](const PseudoInverseResult& r, const Coeffs& f, std::size_t n) {
            return r.approximation_error2(boundary(f), n);
        });

    m.def("pseudo_invert", [](const Coeffs& f, const PoafdConfig& c) { return solve_pseudo_inverse(boundary(f), c); },
          py::arg("boundary"), py::arg("config") = PoafdConfig{}, py::call_guard<py::gil_scoped_release>());

    m.def("basis_expand",
          [](const Coeffs& f, const Coeffs& points) {
              return basis_expand(disc(f), BasisPlan(points, f.size() - 1)).vector();
          },
          py::arg("coeffs"), py::arg("points"));
    m.def("basis_invert",
          [](const Coeffs& f, const Coeffs& points) {
              return basis_invert(disc(f), BasisPlan(points, f.size() - 1)).vector();
          },
          py::arg("coeffs"), py::arg("points"));
    m.def("basis_pseudo_inverse",
          [](const Coeffs& f, const Coeffs& points) {
              const BoundaryFunction g = boundary(f);
              return basis_pseudo_inverse(g, BasisPlan(points, g.degree())).vector();
          },
          py::arg("boundary"), py::arg("points"));
    m.def("transfer_condition",
          [](const Coeffs& points, std::size_t degree) { return transfer_condition(basis_build(BasisPlan(points, degree))); },
          py::arg("points"), py::arg("degree") = kDefaultDegree);

    m.def("verify",
          [](std::uint64_t seed, std::size_t trials) {
              const VerificationReport report = run_verification(seed, trials);
              py::list checks;
              for (const auto& c : report.checks) {
                  py::dict d;
                  d["name"] = c.name;
                  d["trials"] = c.trials;
                  d["max_error"] = c.max_error;
                  d["tolerance"] = c.tolerance;
                  d["passed"] = c.passed;
                  checks.append(d);
              }
              py::dict out;
              out["seed"] = report.seed;
              out["passed"] = report.passed();
              out["checks"] = checks;
              return out;
          },
          py::arg("seed") = sampling::kDefaultSeed, py::arg("trials") = 20);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code;
              {
                  py::gil_scoped_release release;
                  code = cli::run(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command line front end; returns (exit_code, stdout, stderr).");
}
