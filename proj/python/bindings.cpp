#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subbergman/acceptance.hpp"
#include "subbergman/boundary.hpp"
#include "subbergman/errors.hpp"
#include "subbergman/job.hpp"
#include "subbergman/pick.hpp"
#include "subbergman/sampling.hpp"

namespace py = pybind11;
using namespace subbergman;

namespace {

PowerSeriesPoly to_poly(const std::vector<Complex>& c) { return PowerSeriesPoly(c); }

std::vector<Complex> from_poly(const PowerSeriesPoly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

// kind: "generalized" (param = s), "bergman" (param = alpha), "hardy".
KernelSpec make_kernel(const std::string& kind, double param) {
  if (kind == "generalized") return KernelSpec::generalized(param);
  if (kind == "bergman") return KernelSpec::bergman(param);
  if (kind == "hardy") return KernelSpec::hardy();
  throw DomainError("unknown kernel '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted Bergman and sub-Bergman spaces on the unit disk";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ArithmeticError);

  py::class_<MoebiusMap>(m, "MoebiusMap")
      .def(py::init<Complex, Complex>(), py::arg("xi"), py::arg("a"))
      .def_property_readonly("xi", &MoebiusMap::xi)
      .def_property_readonly("a", &MoebiusMap::a)
      .def("__call__", &MoebiusMap::operator())
      .def("derivative", &MoebiusMap::derivative)
      .def("series", [](const MoebiusMap& f, int degree) { return from_poly(series_expand(f, degree).series); });

  py::class_<BlaschkeProduct>(m, "BlaschkeProduct")
      .def(py::init([](Complex xi, std::vector<Complex> zeros, bool allow_repeated) {
             return BlaschkeProduct(xi, std::move(zeros),
                                    allow_repeated ? ZeroPolicy::allow_repeated : ZeroPolicy::distinct);
           }),
           py::arg("xi"), py::arg("zeros"), py::arg("allow_repeated") = false)
      .def_property_readonly("xi", &BlaschkeProduct::xi)
      .def_property_readonly("zeros",
                             [](const BlaschkeProduct& b) { return std::vector<Complex>(b.zeros().begin(), b.zeros().end()); })
      .def("__call__", &BlaschkeProduct::operator())
      .def("derivative", &BlaschkeProduct::derivative)
      .def("series", [](const BlaschkeProduct& f, int degree) { return from_poly(series_expand(f, degree).series); });

  m.def("monomial_norm_squared", &monomial_norm_squared, py::arg("alpha"), py::arg("n"));

  m.def(
      "kernel_eval",
      [](const std::string& kind, double param, Complex z, Complex w) {
        return kernel_eval(make_kernel(kind, param), z, w);
      },
      py::arg("kind"), py::arg("param"), py::arg("z"), py::arg("w"));
  m.def(
      "sub_bergman_kernel",
      [](double alpha, const MoebiusMap& phi, Complex z, Complex w) {
        return kernel_eval(KernelSpec::sub_bergman(alpha, phi), z, w);
      },
      py::arg("alpha"), py::arg("phi"), py::arg("z"), py::arg("w"));

  m.def(
      "defect_matrix",
      [](double alpha, const MoebiusMap& phi, int n, int buffer) {
        return defect_matrix(BergmanSpaceModel(alpha, n), phi, n, buffer).entries;
      },
      py::arg("alpha"), py::arg("phi"), py::arg("n"), py::arg("buffer") = kDefaultBuffer,
      "I - T T^* on the orthonormal monomials e_0..e_n.");

  m.def(
      "apply_defect",
      [](double alpha, const MoebiusMap& phi, const std::vector<Complex>& f, int n, int buffer) {
        return from_poly(apply_defect(BergmanSpaceModel(alpha, n), phi, to_poly(f), n, buffer).output);
      },
      py::arg("alpha"), py::arg("phi"), py::arg("f"), py::arg("n") = 100, py::arg("buffer") = kDefaultBuffer);

  m.def(
      "toeplitz_conj_blaschke",
      [](const std::vector<Complex>& f, const BlaschkeProduct& b, const std::vector<Complex>& points) {
        const auto ev = toeplitz_conj_blaschke_explicit(to_poly(f), b, BergmanSpaceModel(0.0, 1));
        std::vector<Complex> out;
        for (const auto& z : points) out.push_back(ev(z));
        return out;
      },
      py::arg("f"), py::arg("blaschke"), py::arg("points"));

  m.def(
      "oneminus_test",
      [](const std::string& kind, double param, const std::vector<Complex>& points, double tol) {
        const auto r = cnp_oneminus_test(as_kernel_fn(make_kernel(kind, param)), points, 0.0, tol);
        return py::make_tuple(r.min_eigenvalue, to_string(r.verdict));
      },
      py::arg("kind"), py::arg("param"), py::arg("points"), py::arg("tol") = kPickTolerance);

  m.def(
      "radial_probe",
      [](const std::function<Complex(Complex)>& f, double theta, int depth) {
        // Evaluating a Python callable needs the GIL held; the probe is single-threaded.
        const auto r = radial_probe(f, theta, depth);
        return py::make_tuple(r.values, r.tail_oscillation, to_string(r.verdict));
      },
      py::arg("f"), py::arg("theta"), py::arg("depth") = 30);

  m.def(
      "cyclicity_residuals",
      [](const std::vector<Complex>& psi, const MoebiusMap& phi, double alpha, const std::vector<int>& degrees,
         int n_work) {
        return cyclicity_residual_probe(to_poly(psi), BergmanSpaceModel(alpha, n_work), phi, degrees).residuals;
      },
      py::arg("psi"), py::arg("phi"), py::arg("alpha") = 0.0, py::arg("degrees"), py::arg("n_work") = 200);

  m.def(
      "run_job_json",
      [](const std::string& text) {
        const auto spec = JobSpec::from_json(json::parse(text));
        py::gil_scoped_release release;
        return run(spec).to_json().dump();
      },
      py::arg("job"), "Runs a JSON job document and returns the report envelope as JSON text.");

  m.def("command_names", &command_names);
  m.attr("__version__") = tool_version();
}
