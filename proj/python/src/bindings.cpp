#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amalgam/commands.hpp"
#include "amalgam/schema.hpp"

namespace py = pybind11;
using namespace amalgam;

namespace {

RunOptions options(int depth, std::int64_t budget, std::int64_t samples, std::optional<std::uint64_t> seed,
                   int jobs) {
  auto opt = default_options();
  opt.depth = depth;
  opt.budget = budget;
  opt.samples = samples;
  if (seed)
    opt.seed = *seed;
  opt.jobs = jobs;
  return opt;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON-in, JSON-out bindings over the amalgam commands";

  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<InvariantError> invariant(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const ValidationError &e) {
      // the message is the error document, so callers can recover the fields
      PyErr_SetString(validation.ptr(), error_json("validation", e.what(), e.errors()).dump().c_str());
    } catch (const InvariantError &e) {
      PyErr_SetString(invariant.ptr(), error_json("invariant", e.what()).dump().c_str());
    }
  });

  m.def("verbs", &verbs);
  m.def("enumerable", &enumerable, py::arg("verb"));
  m.def("schema_names", &schema_names);
  m.def(
      "schema", [](const std::string &ref) { return schema(ref).dump(); }, py::arg("ref"));
  m.def(
      "run",
      [](const std::string &verb, const std::vector<std::string> &inputs, int depth, std::int64_t budget,
         std::int64_t samples, std::optional<std::uint64_t> seed, int jobs) {
        std::vector<Json> docs;
        for (const auto &text : inputs) {
          try {
            docs.push_back(Json::parse(text));
          } catch (const Json::parse_error &e) {
            throw ValidationError("input", std::string("not JSON: ") + e.what());
          }
        }
        const auto opt = options(depth, budget, samples, seed, jobs);
        py::gil_scoped_release release;
        return format_json(run_verb(verb, docs, opt));
      },
      py::arg("verb"), py::arg("inputs"), py::arg("depth") = 4, py::arg("budget") = kDefaultCellBudget,
      py::arg("samples") = 1000, py::arg("seed") = py::none(), py::arg("jobs") = 1);
  m.def(
      "enumerate",
      [](const std::string &verb, int max_genus, int depth, std::int64_t budget, std::int64_t samples,
         std::optional<std::uint64_t> seed, int jobs) {
        const auto opt = options(depth, budget, samples, seed, jobs);
        py::gil_scoped_release release;
        return format_json(run_enumeration(verb, max_genus, opt));
      },
      py::arg("verb"), py::arg("max_genus"), py::arg("depth") = 4, py::arg("budget") = kDefaultCellBudget,
      py::arg("samples") = 1000, py::arg("seed") = py::none(), py::arg("jobs") = 1);
}
