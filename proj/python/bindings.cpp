#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prodlab/char_table.hpp"
#include "prodlab/error.hpp"
#include "prodlab/fq_additive.hpp"
#include "prodlab/growth.hpp"
#include "prodlab/report.hpp"
#include "prodlab/suite.hpp"
#include "prodlab/sym.hpp"

namespace py = pybind11;
using namespace prodlab;

namespace {

py::object to_int(const BigInt& v) { return py::module_::import("builtins").attr("int")(to_decimal(v)); }

py::object to_fraction(const Rational& v) { return py::module_::import("fractions").attr("Fraction")(to_decimal(v)); }

}  // namespace

PYBIND11_MODULE(_prodlab, m) {
  m.doc() = "Exact checks for product decompositions in finite groups";
  m.attr("__version__") = PRODLAB_VERSION;
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line; returns (exit code, stdout, stderr).");

  m.def("group_order", [](const std::string& spec) { return build_group(spec)->order(); }, py::arg("spec"));
  m.def("class_sizes", [](const std::string& spec) {
    const auto g = build_group(spec);
    std::vector<std::size_t> sizes;
    for (const auto& c : g->classes()) sizes.push_back(c.size);
    return sizes;
  });
  m.def("character_degrees", [](const std::string& spec) {
    const auto t = character_table(build_group(spec));
    std::vector<int> d;
    for (const auto& chi : t.irreducibles()) d.push_back(chi.degree);
    return d;
  });
  m.def(
      "witten_zeta", [](const std::string& spec, double s, bool include_trivial) { return witten_zeta(character_table(build_group(spec)), s, include_trivial); },
      py::arg("spec"), py::arg("s"), py::arg("include_trivial") = true);
  m.def(
      "gamma",
      [](const std::string& spec, const std::string& a, const std::string& b) {
        auto g = build_group(spec);
        return to_fraction(gamma_statistic(parse_subset_source(g, a), parse_subset_source(g, b)));
      },
      py::arg("spec"), py::arg("A"), py::arg("B"));

  m.def("dimension", [](const std::vector<int>& parts) { return to_int(sym::dimension_hook(sym::Partition(parts))); });
  m.def("virtual_degree", [](const std::vector<int>& parts) { return to_fraction(sym::virtual_degree(sym::Partition(parts))); });
  m.def("mn_character", [](const std::vector<int>& lambda, const std::vector<int>& cycle_type) {
    return sym::mn_character(sym::Partition(lambda), sym::Partition(cycle_type));
  });

  m.def("count_rank", [](int r, int n, int q) { return to_int(fq::count_rank(r, n, q)); }, py::arg("r"), py::arg("n"), py::arg("q"));
  m.def("rank_census", [](int n, int q) {
    const auto census = fq::rank_census(fq::MatrixSpace(fq::Field::get(q), n));
    py::list out;
    for (const auto& c : census) out.append(to_int(c));
    return out;
  });

  m.attr("criterion_count") = kCriterionCount;
  m.def(
      "run_criterion",
      [](int id, bool smoke, std::uint64_t seed) {
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id, smoke ? SuiteLevel::Smoke : SuiteLevel::Full, seed);
        }
        py::dict d;
        d["id"] = r.id;
        d["title"] = r.title;
        d["passed"] = r.passed;
        d["summary"] = r.summary;
        d["details"] = py::module_::import("json").attr("loads")(r.details);
        return d;
      },
      py::arg("id"), py::arg("smoke") = true, py::arg("seed") = 1);
}
