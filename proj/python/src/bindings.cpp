#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qtet/asymptotics.hpp"
#include "qtet/dft.hpp"
#include "qtet/errors.hpp"
#include "qtet/geometry.hpp"
#include "qtet/qdilog.hpp"
#include "qtet/qkernel.hpp"
#include "qtet/report_io.hpp"

namespace py = pybind11;
using namespace qtet;

namespace {

// Structured results cross the boundary as the same JSON the CLI prints.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(dump_json(j));
}

py::tuple scaled(const ScaledComplex& z) { return py::make_tuple(z.log_mag(), z.phase()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum 6j-symbols, quantum dilogarithms and truncated tetrahedra";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  auto numeric = py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<PoleError>(m, "PoleError", numeric.ptr());
  py::register_exception<DomainError>(m, "DomainError", numeric.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("quantum_integer", [](int n, int r) { return quantum_integer(n, QContext(r)); }, py::arg("n"), py::arg("r"));
  m.def("is_admissible", [](const ColorTuple6& a, int r) { return is_admissible_six(a, QContext(r)); },
        py::arg("colors"), py::arg("r"));
  m.def("is_hyperideal", [](const ColorTuple6& a, int r) { return is_hyperideal_colors(a, QContext(r)); },
        py::arg("colors"), py::arg("r"));
  m.def("sixj", [](const ColorTuple6& a, int r) { return sixj(a, QContext(r)); }, py::arg("colors"), py::arg("r"));
  m.def("sixj_scaled", [](const ColorTuple6& a, int r) { return scaled(sixj_scaled(a, QContext(r))); },
        py::arg("colors"), py::arg("r"), "(log|6j|, arg 6j)");
  m.def("sixj_via_qdilog", [](const ColorTuple6& a, int r) { return sixj_via_qdilog(a, QContext(r), ContourSpec{}); },
        py::arg("colors"), py::arg("r"));

  m.def("phi_r", [](cplx z, int r, bool extended) {
          const QContext ctx(r);
          return extended ? phi_r_extended(z, ctx) : phi_r(z, ctx);
        },
        py::arg("z"), py::arg("r"), py::arg("extended") = false);
  m.def("li2", &li2, py::arg("z"));
  m.def("lobachevsky", &lobachevsky, py::arg("theta"));

  m.def("solve_geometry",
        [](const std::array<double, 6>& theta, const std::string& partition) {
          return to_py(geometry_json(solve_geometry(theta, Partition::parse(partition))));
        },
        py::arg("theta"), py::arg("partition") = "");

  m.def("yhat",
        [](const std::array<int, 6>& colors, const std::string& partition, int r, int threads) {
          ColoringSpec spec;
          spec.colors = colors;
          EnumerationOptions opt;
          opt.threads = threads;
          return scaled(yhat(spec, Partition::parse(partition), QContext(r), opt));
        },
        py::arg("colors"), py::arg("partition"), py::arg("r"), py::arg("threads") = 1,
        "(log|Y|, arg Y); colors on I are the b_i");
  m.def("tv",
        [](const std::string& path, const std::vector<int>& b, int r) {
          return scaled(tv_r(load_triangulation(path), b, QContext(r)));
        },
        py::arg("path"), py::arg("b"), py::arg("r"));

  m.def("verify_cdft",
        [](const std::array<double, 6>& theta, const std::string& partition, const std::string& rs,
           const std::array<int, 6>& mu, int threads) {
          SweepOptions opt;
          opt.threads = threads;
          return to_py(sweep_json(run_sweep(theta, mu, Partition::parse(partition), parse_r_list(rs), opt)));
        },
        py::arg("theta"), py::arg("partition"), py::arg("rs"), py::arg("mu") = std::array<int, 6>{1, 1, 1, 1, 1, 1},
        py::arg("threads") = 1);
}
