#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arithlab/arith_scan.hpp"
#include "arithlab/cli.hpp"
#include "arithlab/diffforms.hpp"
#include "arithlab/expr.hpp"
#include "arithlab/pcurvature.hpp"
#include "arithlab/series.hpp"

namespace py = pybind11;
using namespace arithlab;

namespace {

std::vector<Rational> to_rationals(const std::vector<std::string>& coeffs) {
  std::vector<Rational> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(eval_constant(parse_expression(c)));
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of arithlab";
  m.attr("SCHEMA_VERSION") = "1.0";

  static py::exception<Error> arithlab_error(m, "ArithlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(arithlab_error.ptr())(e.what());
      exc.attr("kind") = std::string(error_kind_name(e.kind()));
      exc.attr("detail") = e.detail();
      PyErr_SetObject(arithlab_error.ptr(), exc.ptr());
    }
  });

  m.def("run", &run_cli, py::arg("args"),
        "Runs one subcommand; returns (exit_code, stdout, stderr). stdout holds the JSON report.");

  m.def(
      "p_curvature_status",
      [](const std::string& matrix, std::uint64_t p) {
        const auto r = p_curvature(DiffSystem(parse_matrix(matrix)), p);
        std::optional<std::vector<std::vector<std::string>>> entries;
        if (r.matrix) entries = render_matrix(*r.matrix);
        return py::make_tuple(std::string(status_name(r.status)), entries);
      },
      py::arg("matrix"), py::arg("p"), "Status and rendered A_p of Y' = AY modulo p.");

  m.def(
      "classify_form",
      [](const std::string& f, std::uint64_t p) {
        return std::string(form_status_name(classify_form(RationalForm{parse_ratfunc(f)}, p).status));
      },
      py::arg("f"), py::arg("p"), "Exactness class of f(z) dz modulo p.");

  m.def(
      "detect_relation",
      [](const std::vector<std::string>& coeffs, std::size_t d, std::size_t dy) -> std::optional<std::string> {
        const auto rel = hermite_pade_detect(SeriesApprox{to_rationals(coeffs)}, d, dy);
        if (!rel) return std::nullopt;
        return rel->render();
      },
      py::arg("coeffs"), py::arg("d"), py::arg("D"), "Hermite-Pade relation P(X, Y) of bidegree (d, D), or None.");

  m.def(
      "expand_branch",
      [](const std::string& relation, const std::string& y0, std::size_t order) {
        std::vector<std::string> out;
        for (const auto& c : expand_algebraic_branch(parse_relation(relation), eval_constant(parse_expression(y0)), order).coeffs)
          out.push_back(to_string(c));
        return out;
      },
      py::arg("relation"), py::arg("y0"), py::arg("order"), "Taylor coefficients of the branch through (0, y0).");

  m.def(
      "count_points",
      [](const std::string& curve, std::uint64_t p) { return ec_count_points(CurveSpec::parse(curve), p); },
      py::arg("curve"), py::arg("p"), "#E(F_p) for p > 3 of good reduction.");

  m.def(
      "splitting_density",
      [](const std::string& poly, std::uint64_t p_max) {
        const auto r = kronecker_scan(NumberSpec::parse(poly), p_max);
        return py::make_tuple(r.positive, r.tested, r.verdict);
      },
      py::arg("poly"), py::arg("p_max"), "(positive, tested, verdict) of the complete-splitting scan.");
}
