// Python bindings. Structured values cross the boundary as JSON text; the
// nadeum package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>

#include "nadeum/codec.hpp"
#include "nadeum/exercises.hpp"
#include "nadeum/hilbert.hpp"
#include "nadeum/prover.hpp"
#include "nadeum/semantics.hpp"
#include "nadeum/surface.hpp"

namespace py = pybind11;
using namespace nadeum;
using codec::json;

namespace {

json load(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

// Formulas may be given as surface text or as the JSON encoding.
Formula formula_arg(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
    return codec::formula_from_json(load(text));
  return parse_formula(text);
}

json exercise_json(const Exercise& ex) {
  json j{{"id", ex.id},
         {"title", ex.title},
         {"formula", print_formula(ex.formula)},
         {"policy", ex.policy == RevealPolicy::Full       ? "full"
                    : ex.policy == RevealPolicy::Stepwise ? "stepwise"
                                                          : "withheld"}};
  if (ex.solution && ex.policy == RevealPolicy::Full) j["script"] = codec::to_json(*ex.solution);
  return j;
}

}  // namespace

PYBIND11_MODULE(_nadeum, m) {
  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(e.kind(), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("parse", [](const std::string& text) { return codec::to_json(parse_formula(text)).dump(); });
  m.def("normalize", [](const std::string& text) { return print_formula(formula_arg(text)); });

  m.def("replay", [](const std::string& script) {
    return codec::to_json(replay(codec::script_from_json(load(script)))).dump();
  });

  m.def(
      "prove",
      [](const std::string& formula, std::size_t max_depth, std::size_t max_term_depth, bool classical,
         long time_budget_ms, std::size_t max_universe) {
        SearchConfig cfg;
        cfg.max_depth = max_depth;
        cfg.max_term_depth = max_term_depth;
        cfg.classical = classical;
        cfg.time_budget = std::chrono::milliseconds(time_budget_ms);
        cfg.countermodel_max_universe = max_universe;
        validate(cfg);
        Goal goal{{}, formula_arg(formula)};
        py::gil_scoped_release release;
        return codec::to_json(prove(goal, cfg)).dump();
      },
      py::arg("formula"), py::arg("max_depth") = 12, py::arg("max_term_depth") = 2, py::arg("classical") = true,
      py::arg("time_budget_ms") = 5000, py::arg("max_universe") = 3);

  m.def(
      "countermodel",
      [](const std::string& formula, std::size_t max_universe) -> std::optional<std::string> {
        CountermodelSearch opts;
        opts.max_universe = max_universe;
        Formula p = formula_arg(formula);
        std::optional<Countermodel> found;
        {
          py::gil_scoped_release release;
          found = find_countermodel(p, opts);
        }
        if (!found) return std::nullopt;
        return codec::to_json(*found).dump();
      },
      py::arg("formula"), py::arg("max_universe") = 3);

  m.def("trim", [](const std::string& history) {
    return codec::to_json(trim(codec::history_from_json(load(history)))).dump();
  });
  m.def("export_certificate",
        [](const std::string& script) { return export_certificate(codec::script_from_json(load(script))); });
  m.def("hilbert_check", [](const std::string& proof) {
    return codec::to_json(hilbert::check(codec::hilbert_proof_from_json(load(proof)))).dump();
  });

  m.def("default_corpus_dir", &default_corpus_dir);
  m.def(
      "corpus",
      [](const std::string& dir) {
        json out = json::array();
        for (const auto& ex : load_corpus(dir)) out.push_back(exercise_json(ex));
        return out.dump();
      },
      py::arg("dir"));
}
