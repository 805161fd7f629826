#pragma once

#include <string>

#include <json.hpp>

#include "wsa/automaton.hpp"

namespace wsa {

// Automaton file format (JSON object):
//   alphabet     array of symbols (required)
//   storage      storage spec object (required)
//   states       array of state names (optional: inferred from use)
//   initial      array of state names (required)
//   final        array of state names (required)
//   semiring     semiring name or {"name":..,"cap":..} (optional: unweighted)
//   transitions  array of {id?, from, read?, pred, instr, to, weight?}
// "read" omitted or "" reads nothing. Predicates/instructions are canonical
// name strings or {"name":..,"arg(s)":..} objects. Unknown top-level keys are
// ignored.
Automaton load_automaton_json(const nlohmann::json& j);
Automaton load_automaton_file(const std::string& path);
nlohmann::ordered_json automaton_to_json(const Automaton& m);
void save_automaton_file(const Automaton& m, const std::string& path);

// Splits text into alphabet symbols: greedy longest match from the left, or
// whitespace-separated tokens when whitespace_tokens is set. "" is the empty
// word.
Word parse_word(const std::string& text, const std::vector<std::string>& alphabet,
                bool whitespace_tokens = false);
std::string word_str(const Word& w);

// Names of the example machines shipped with the library, and their JSON
// sources (compiled-in directory, overridable via the WSA_AUTOMATA_DIR
// environment variable).
std::vector<std::string> bundled_names();
std::string bundled_dir();
Automaton load_bundled(const std::string& name);

}  // namespace wsa
