// Python bindings: a thin, pragmatic surface over the C++ core. Results cross
// the boundary as plain dicts/lists; weights travel as their display string
// plus a numeric value (None for the cost semiring's infinity).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "wsa/approx.hpp"
#include "wsa/automaton.hpp"
#include "wsa/io.hpp"
#include "wsa/parse.hpp"
#include "wsa/transform.hpp"

namespace py = pybind11;
using namespace wsa;

namespace {

Semiring ring_of(const Automaton& m) {
  return m.semiring ? *m.semiring : Semiring::boolean();
}

py::object weight_value(const Semiring& sr, Weight w) {
  if (sr.kind() == SemiringKind::TropicalMinPlus && w.v == Semiring::kInf)
    return py::none();
  return py::int_(w.v);
}

py::dict weight_dict(const Semiring& sr, Weight w) {
  py::dict d;
  d["display"] = sr.format(w);
  d["value"] = weight_value(sr, w);
  return d;
}

RunBudget budget_from(std::size_t max_steps, std::size_t max_configs,
                      std::optional<std::size_t> max_storage, bool storage_bound_exact) {
  RunBudget b;
  b.max_steps = max_steps;
  b.max_configs = max_configs;
  b.max_storage_size = max_storage;
  b.size_bound_exact = storage_bound_exact && max_storage.has_value();
  return b;
}

SearchLimits limits_from(std::size_t max_run_length, std::size_t max_expansions) {
  SearchLimits lim;
  lim.max_run_length = max_run_length;
  lim.max_expansions = max_expansions;
  return lim;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "automata with data storage: recognition, approximation, coarse-to-fine search";

  py::class_<Automaton>(mod, "Automaton")
      .def_property_readonly("states", [](const Automaton& m) { return m.states; })
      .def_property_readonly("alphabet", [](const Automaton& m) { return m.alphabet; })
      .def_property_readonly("storage_kind", [](const Automaton& m) { return m.storage.kind(); })
      .def_property_readonly("weighted", [](const Automaton& m) { return m.semiring.has_value(); })
      .def_property_readonly("semiring",
                             [](const Automaton& m) -> py::object {
                               if (!m.semiring) return py::none();
                               return py::str(m.semiring->name());
                             })
      .def_property_readonly("transition_ids",
                             [](const Automaton& m) {
                               std::vector<std::string> ids;
                               for (const auto& t : m.transitions) ids.push_back(t.id);
                               return ids;
                             })
      .def("validate", &Automaton::validate)
      .def("to_json", [](const Automaton& m) { return automaton_to_json(m).dump(2); })
      .def("__repr__", [](const Automaton& m) {
        return "<Automaton " + std::to_string(m.states.size()) + " states, " +
               std::to_string(m.transitions.size()) + " transitions, storage " +
               m.storage.kind() + ">";
      });

  mod.def("load", &load_automaton_file, py::arg("path"));
  mod.def(
      "loads",
      [](const std::string& text) { return load_automaton_json(nlohmann::json::parse(text)); },
      py::arg("text"));
  mod.def("save", &save_automaton_file, py::arg("automaton"), py::arg("path"));
  mod.def("bundled_names", &bundled_names);
  mod.def("load_bundled", &load_bundled, py::arg("name"));

  mod.def(
      "parse_word",
      [](const Automaton& m, const std::string& text, bool tokens) {
        return parse_word(text, m.alphabet, tokens);
      },
      py::arg("automaton"), py::arg("text"), py::arg("tokens") = false);

  mod.def(
      "recognize",
      [](const Automaton& m, const Word& w, std::size_t max_steps, std::size_t max_configs,
         std::optional<std::size_t> max_storage, bool storage_bound_exact) {
        auto r = recognizes(m, w, budget_from(max_steps, max_configs, max_storage,
                                              storage_bound_exact));
        py::dict d;
        d["accepted"] = r.accepted;
        d["exact"] = r.exact;
        d["witness"] = r.witness ? py::cast(r.witness->ids) : py::object(py::none());
        return d;
      },
      py::arg("automaton"), py::arg("word"), py::arg("max_steps") = 0,
      py::arg("max_configs") = 1000000, py::arg("max_storage") = py::none(),
      py::arg("storage_bound_exact") = false);

  mod.def(
      "weight",
      [](const Automaton& m, const Word& w, std::size_t max_steps, std::size_t max_configs,
         std::optional<std::size_t> max_storage, bool storage_bound_exact) {
        auto r = weight_of_word(m, w, budget_from(max_steps, max_configs, max_storage,
                                                  storage_bound_exact));
        py::dict d = weight_dict(ring_of(m), r.value);
        d["exact"] = r.exact;
        d["saturated"] = r.saturated;
        return d;
      },
      py::arg("automaton"), py::arg("word"), py::arg("max_steps") = 0,
      py::arg("max_configs") = 1000000, py::arg("max_storage") = py::none(),
      py::arg("storage_bound_exact") = false);

  mod.def(
      "language_upto",
      [](const Automaton& m, std::size_t max_len, std::size_t max_configs,
         std::optional<std::size_t> max_storage) {
        auto r = language_upto(m, max_len, budget_from(0, max_configs, max_storage, false));
        py::dict d;
        d["words"] = r.words;
        d["exact"] = r.exact;
        return d;
      },
      py::arg("automaton"), py::arg("max_len"), py::arg("max_configs") = 1000000,
      py::arg("max_storage") = py::none());

  mod.def(
      "runs",
      [](const Automaton& m, const Word& w, std::size_t n, std::size_t max_run_length,
         std::size_t max_expansions) {
        const Semiring sr = ring_of(m);
        RunStream s(m, w, limits_from(max_run_length, max_expansions));
        py::list out;
        for (std::size_t i = 0; i < n; ++i) {
          auto r = s.next();
          if (!r) break;
          py::dict d = weight_dict(sr, r->weight);
          d["ids"] = r->ids;
          out.append(d);
        }
        py::dict d;
        d["runs"] = out;
        d["exhausted"] = !s.limit_tripped();
        return d;
      },
      py::arg("automaton"), py::arg("word"), py::arg("n") = 5,
      py::arg("max_run_length") = 0, py::arg("max_expansions") = 200000);

  mod.def("is_run", &is_run, py::arg("automaton"), py::arg("ids"));

  mod.def("predicate_free", &predicate_free, py::arg("automaton"));
  mod.def("determinize_powerset", &determinize_powerset, py::arg("automaton"));
  mod.def("determinize_bounded", &determinize_bounded, py::arg("automaton"),
          py::arg("bound") = py::none());
  mod.def("to_fsa", &to_fsa, py::arg("automaton"), py::arg("max_nodes") = 10000);

  mod.def(
      "approximate",
      [](const Automaton& m, const std::string& strategy) {
        auto s = strategy_by_name(strategy, m.storage);
        auto ar = approximate_automaton(m, s);
        py::dict d;
        d["automaton"] = ar.automaton;
        d["transition_map"] = ar.transition_map;
        d["strategy"] = s.name;
        d["total"] = s.total;
        d["injective"] = s.injective;
        return d;
      },
      py::arg("automaton"), py::arg("strategy"));

  mod.def(
      "nbest",
      [](const Automaton& m, const std::string& strategy, const Word& w, std::size_t n,
         bool eager, std::size_t max_run_length, std::size_t max_expansions) {
        const Semiring sr = ring_of(m);
        auto s = strategy_by_name(strategy, m.storage);
        NBestOptions opts;
        opts.limits = limits_from(max_run_length, max_expansions);
        if (eager) opts.stop = NBestOptions::StopRule::FirstFill;
        auto res = coarse_to_fine_nbest(m, s, w, n, opts);
        py::list out;
        for (const auto& e : res.runs) {
          py::dict d = weight_dict(sr, e.weight);
          d["ids"] = e.ids;
          out.append(d);
        }
        py::dict d;
        d["runs"] = out;
        d["coarse_runs_consumed"] = res.coarse_runs_consumed;
        d["candidates_checked"] = res.candidates_checked;
        d["certified"] = res.certified;
        return d;
      },
      py::arg("automaton"), py::arg("strategy"), py::arg("word"), py::arg("n") = 1,
      py::arg("eager") = false, py::arg("max_run_length") = 0,
      py::arg("max_expansions") = 200000);
}
