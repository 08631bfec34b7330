#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcmv/cech.hpp"
#include "lcmv/error.hpp"
#include "lcmv/report.hpp"

namespace py = pybind11;
using namespace lcmv;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::pair<std::string, int> wrap(const report::Result& r) { return {r.report.dump(), r.exit_code}; }

report::InputDocument doc_of(const std::string& text) { return report::parse_input_text(text); }

SquarefreeMonomialIdeal monomial(std::size_t n_vars, const std::vector<std::vector<std::size_t>>& generators,
                                 const std::string& field) {
  std::vector<VarSet> gens;
  for (const auto& g : generators) {
    for (std::size_t i : g) {
      if (i < 1 || i > n_vars) throw Error(ErrorCode::kInputError, "generator index out of range");
    }
    gens.push_back(VarSet::of(std::span<const std::size_t>(g)));
  }
  return SquarefreeMonomialIdeal(RingDescriptor(n_vars, Field::parse(field)), gens);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of lcmv";

  static py::exception<Error> error(m, "LcmvError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("analyze", [](const std::string& doc) { return wrap(report::cmd_analyze(doc_of(doc))); });
  m.def(
      "compare",
      [](const std::string& doc, int lower, int upper, bool corrupt_signs) {
        report::CompareOptions opts{DegreeBox{lower, upper},
                                    corrupt_signs ? SignConvention::kAllPositive : SignConvention::kAlternating};
        return wrap(report::cmd_compare(doc_of(doc), opts));
      },
      py::arg("doc"), py::arg("lower") = -2, py::arg("upper") = 1, py::arg("corrupt_signs") = false);
  m.def(
      "oracle",
      [](const std::string& doc, std::optional<std::vector<int>> degree, int lower, int upper) {
        return wrap(report::cmd_oracle(doc_of(doc), degree, DegreeBox{lower, upper}));
      },
      py::arg("doc"), py::arg("degree") = py::none(), py::arg("lower") = -2, py::arg("upper") = 1);
  m.def("eisenstein", [](const std::string& doc) { return wrap(report::cmd_eisenstein(doc_of(doc))); });
  m.def("cci", [](const std::string& doc) { return wrap(report::cmd_cci(doc_of(doc))); });
  m.def(
      "demo_remark2",
      [](std::size_t n_vars, std::uint64_t p, std::vector<std::vector<std::size_t>> extra) {
        return wrap(report::cmd_demo_remark2(report::DemoOptions{n_vars, p, std::move(extra)}));
      },
      py::arg("n_vars") = 4, py::arg("p") = 2, py::arg("extra_components") = std::vector<std::vector<std::size_t>>{});
  m.def("render_text", [](const std::string& report) { return report::render_text(report::json::parse(report)); });

  m.def(
      "local_cohomology_dims",
      [](std::size_t n_vars, const std::vector<std::vector<std::size_t>>& generators, const std::vector<int>& degree,
         const std::string& field) {
        if (degree.size() != n_vars) throw Error(ErrorCode::kInputError, "degree has the wrong length");
        CechOracle oracle(Field::parse(field));
        return oracle.local_cohomology_dims(monomial(n_vars, generators, field), degree);
      },
      py::arg("n_vars"), py::arg("generators"), py::arg("degree"), py::arg("field") = "q");
  m.def(
      "oracle_support",
      [](std::size_t n_vars, const std::vector<std::vector<std::size_t>>& generators, const std::string& field) {
        return CechOracle(Field::parse(field)).support(monomial(n_vars, generators, field));
      },
      py::arg("n_vars"), py::arg("generators"), py::arg("field") = "q");
}
