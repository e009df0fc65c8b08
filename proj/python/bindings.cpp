// pybind11 module: JSON strings in, JSON strings out, mirroring the CLI.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "shiftlab/error.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/openness.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/shift.hpp"

namespace py = pybind11;
using namespace shiftlab;

namespace {

SoficShift shift_of(const std::string& text) { return shift_from_json(parse_json(text)); }
SlidingBlockCode code_of(const std::string& text) { return code_from_json(parse_json(text)); }

Side side_of(const std::string& s) {
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  if (s == "bi") return Side::Bi;
  throw std::invalid_argument("side must be right, left or bi");
}

OpennessOptions openness(int l_max, int k_max) {
  OpennessOptions o;
  o.l_max = l_max;
  o.k_max = k_max;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sofic shifts, sliding-block codes and openness deciders";

  // Messages are prefixed with the stable error kind, e.g. "ReducibleShift: ...".
  static PyObject* error = PyErr_NewException("shiftlab._core.ShiftlabError", PyExc_RuntimeError, nullptr);
  m.attr("ShiftlabError") = py::reinterpret_borrow<py::object>(error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error, (e.kind() + ": " + e.what()).c_str());
    }
  });

  m.def("entropy", [](const std::string& shift) { return entropy(shift_of(shift)); },
        py::arg("shift"), "Topological entropy (natural log) of a shift given as JSON.");

  m.def("fischer_cover",
        [](const std::string& shift) { return dump_json(graph_to_json(fischer_cover(shift_of(shift)))); },
        py::arg("shift"), "Fischer cover of an irreducible shift, as graph JSON.");

  m.def(
      "magic_word",
      [](const std::string& graph) -> std::optional<std::string> {
        const auto g = graph_from_json(parse_json(graph));
        const auto w = find_magic_word(g);
        if (!w) return std::nullopt;
        return g.alphabet().spell(*w);
      },
      py::arg("graph"), "Shortest magic word of a right-resolving presentation, or None.");

  m.def("same_shift",
        [](const std::string& a, const std::string& b) { return same_shift(shift_of(a), shift_of(b)); },
        py::arg("a"), py::arg("b"));

  m.def(
      "degree",
      [](const std::string& code) {
        const auto phi = code_of(code);
        return dump_json(degree_to_json(phi, degree(phi)));
      },
      py::arg("code"), "Degree of a finite-to-one code with an embedded domain.");

  m.def(
      "check_semi_open",
      [](const std::string& code, int l_max, int k_max) {
        const auto phi = code_of(code);
        return dump_json(semi_open_to_json(phi, check_semi_open(phi, openness(l_max, k_max))));
      },
      py::arg("code"), py::arg("l_max") = 4, py::arg("k_max") = 12);

  m.def(
      "check_open",
      [](const std::string& code, int l_max, int k_max) {
        const auto phi = code_of(code);
        return dump_json(open_to_json(phi, check_open(phi, openness(l_max, k_max))));
      },
      py::arg("code"), py::arg("l_max") = 4, py::arg("k_max") = 12);

  m.def(
      "check_retract",
      [](const std::string& code, int n, const std::string& side) {
        const auto phi = code_of(code);
        return dump_json(retract_to_json(phi, check_continuing_retract(phi, n, side_of(side))));
      },
      py::arg("code"), py::arg("n"), py::arg("side") = "right");

  m.def(
      "analyze",
      [](const std::string& code) {
        const auto facts = analyze(code_of(code));
        const auto certs = certificates(facts);
        audit(certs, facts);
        Json j{{"facts", facts_to_json(facts)}, {"certificates", certificates_to_json(certs)}};
        return dump_json(j);
      },
      py::arg("code"), "Facts and emitted certificates; raises on a consistency fault.");
}
