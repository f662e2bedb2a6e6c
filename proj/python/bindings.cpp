#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sato/cli.hpp"
#include "sato/curvelab.hpp"
#include "sato/error.hpp"
#include "sato/expr.hpp"
#include "sato/json_io.hpp"
#include "sato/normalize.hpp"
#include "sato/pdo.hpp"
#include "sato/schur.hpp"
#include "sato/series.hpp"

#include <sstream>

namespace py = pybind11;
using namespace sato;

namespace {

Ring ring_from_text(const std::string& text) { return ring_from_json(Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-differential operators, Sato Grassmannian data and Schur pairs";

  // Kept alive for the life of the interpreter; the instance carries the category.
  static PyObject* error_type = py::exception<Error>(m, "SatoError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](const std::string& category, const std::string& message) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(category + ": " + message);
      inst.attr("category") = category;
      PyErr_SetObject(error_type, inst.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      raise(std::string(e.category()), e.what());
    } catch (const Json::exception& e) {
      raise("syntax-error", e.what());
    }
  });

  py::class_<Ring>(m, "Ring")
      .def_static("rationals", &Ring::rationals)
      .def_static("polynomial", &Ring::polynomial, py::arg("vars"))
      .def_static("diff_polynomial", &Ring::diff_polynomial, py::arg("functions"), py::arg("max_jet"),
                  py::arg("constants") = std::vector<std::string>{})
      .def_static("x_power_series", &Ring::x_power_series, py::arg("base"), py::arg("precision"))
      .def_static("from_json", &ring_from_text)
      .def("to_json", [](const Ring& r) { return ring_to_json(r).dump(); })
      .def_property_readonly("base", &Ring::base)
      .def_property_readonly("precision", &Ring::precision)
      .def("element", [](const Ring& r, const std::string& text) { return parse_element(text, r); })
      .def("x", &Ring::x)
      .def("__eq__", [](const Ring& a, const Ring& b) { return a == b; })
      .def("__repr__", &Ring::describe);

  py::class_<RingElement>(m, "Element")
      .def_property_readonly("ring", &RingElement::ring)
      .def_property_readonly("precision", [](const RingElement& e) -> py::object {
        if (e.is_exact()) return py::none();
        return py::int_(e.precision());
      })
      .def("is_zero", &RingElement::is_zero)
      .def("derive", py::overload_cast<int>(&RingElement::derive, py::const_), py::arg("times") = 1)
      .def("inverse", &RingElement::inverse)
      .def("__neg__", [](const RingElement& a) { return -a; })
      .def("__add__", [](const RingElement& a, const RingElement& b) { return a + b; })
      .def("__sub__", [](const RingElement& a, const RingElement& b) { return a - b; })
      .def("__mul__", [](const RingElement& a, const RingElement& b) { return a * b; })
      .def("__pow__", [](const RingElement& a, int n) { return a.pow(n); })
      .def("__eq__", [](const RingElement& a, const RingElement& b) { return a == b; })
      .def("__str__", &RingElement::to_string)
      .def("__repr__", [](const RingElement& e) { return "Element(" + e.to_string() + ")"; });

  py::class_<Laurent>(m, "Series")
      .def_static("parse", &parse_series, py::arg("text"), py::arg("ring"), py::arg("window") = 16,
                  py::arg("var") = "y")
      .def_static("from_json", [](const std::string& text, const Ring& fallback) {
        return series_from_json(Json::parse(text), fallback);
      })
      .def("to_json", [](const Laurent& s) { return series_to_json(s).dump(); })
      .def_property_readonly("low", &Laurent::low)
      .def_property_readonly("guaranteed", &Laurent::guaranteed)
      .def_property_readonly("order", &Laurent::order)
      .def("coeff", &Laurent::coeff)
      .def("inverse", &Laurent::inverse)
      .def("root", [](const Laurent& s, int n) { return nth_root(s, n); })
      .def("compose", [](const Laurent& f, const Laurent& g) { return compose(f, g); })
      .def("revert", [](const Laurent& f) { return revert(f); })
      .def("__neg__", [](const Laurent& a) { return -a; })
      .def("__add__", [](const Laurent& a, const Laurent& b) { return a + b; })
      .def("__sub__", [](const Laurent& a, const Laurent& b) { return a - b; })
      .def("__mul__", [](const Laurent& a, const Laurent& b) { return a * b; })
      .def("__pow__", [](const Laurent& a, int n) { return a.pow(n); })
      .def("__eq__", [](const Laurent& a, const Laurent& b) { return equal_within_precision(a, b); })
      .def("__str__", &Laurent::to_string)
      .def("__repr__", [](const Laurent& s) { return "Series(" + s.to_string() + ")"; });

  py::class_<PseudoOp>(m, "Operator")
      .def_static("parse", &parse_operator, py::arg("text"), py::arg("ring"), py::arg("depth") = 16)
      .def_static("d_power", &PseudoOp::d_power, py::arg("ring"), py::arg("n"), py::arg("depth"))
      .def_static("from_json", [](const std::string& text, const Ring& fallback) {
        return operator_from_json(Json::parse(text), fallback);
      })
      .def("to_json", [](const PseudoOp& p) { return operator_to_json(p).dump(); })
      .def_property_readonly("ring", &PseudoOp::ring)
      .def_property_readonly("top", &PseudoOp::top)
      .def_property_readonly("depth", &PseudoOp::depth)
      .def_property_readonly("order", &PseudoOp::order)
      .def("coeff", &PseudoOp::coeff)
      .def("with_depth", &PseudoOp::with_depth)
      .def("inverse", [](const PseudoOp& p) { return invert(p); })
      .def("sigma", [](const PseudoOp& p) { return sigma(p); })
      .def("act", [](const PseudoOp& p, const Laurent& v) { return act(p, v); })
      .def("apply", [](const PseudoOp& p, const RingElement& f) { return apply(p, f); })
      .def("is_differential", [](const PseudoOp& p) { return is_differential(p); })
      .def("__neg__", [](const PseudoOp& a) { return -a; })
      .def("__add__", [](const PseudoOp& a, const PseudoOp& b) { return a + b; })
      .def("__sub__", [](const PseudoOp& a, const PseudoOp& b) { return a - b; })
      .def("__mul__", [](const PseudoOp& a, const PseudoOp& b) { return a * b; })
      .def("__rmul__", [](const PseudoOp& p, const RingElement& c) { return c * p; })
      .def("__eq__", [](const PseudoOp& a, const PseudoOp& b) { return equal_within_precision(a, b); })
      .def("__str__", &PseudoOp::to_string)
      .def("__repr__", [](const PseudoOp& p) { return "Operator(" + p.to_string() + ")"; });

  m.def("commutator", [](const PseudoOp& a, const PseudoOp& b) { return commutator(a, b); });
  m.def(
      "conjugator_to_power",
      [](const PseudoOp& L, int n) {
        ConjugationResult r = conjugator_to_power(L, n);
        return py::make_tuple(r.conjugator, r.residual);
      },
      py::arg("op"), py::arg("n"), "Returns (X, X^-1 L X - D^n).");
  m.def("conjugate_by_unit", &conjugate_by_unit, py::arg("op"), py::arg("f"));
  m.def("gauge_first_order", &gauge_first_order, py::arg("u"));

  m.def(
      "schur_extract",
      [](const std::vector<PseudoOp>& gens, int product_length) {
        return pair_to_json(mu_forward(gens, product_length).pair).dump();
      },
      py::arg("generators"), py::arg("product_length") = 3, "Schur pair of a commuting family, as JSON text.");
  m.def(
      "schur_rebuild",
      [](const std::string& pair, const Ring& ring) { return mu_inverse(pair_from_json(Json::parse(pair), ring.base()), ring); },
      py::arg("pair"), py::arg("ring"));

  m.def(
      "gap_genus",
      [](const std::vector<Laurent>& gens, int bound) {
        PureRankAlgebra A{gens, pure_rank(gens)};
        GapProfile g = gap_genus(A, bound);
        py::dict d;
        d["genus"] = g.genus;
        d["gaps"] = g.gaps;
        d["conductor"] = g.conductor;
        return d;
      },
      py::arg("generators"), py::arg("bound"));
  m.def("kdv_residual", &kdv_residual, py::arg("beta"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
