#include "wsa/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wsa {

static std::string state_name_from_json(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned())
    return std::to_string(j.get<std::int64_t>());
  throw ParseError("state name must be a string or integer: " + j.dump());
}

Automaton load_automaton_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("automaton file must be a JSON object");
  Automaton m;

  if (!j.contains("alphabet")) throw ParseError("missing \"alphabet\"");
  for (const auto& a : j.at("alphabet")) {
    if (!a.is_string()) throw ParseError("alphabet symbols must be strings");
    m.alphabet.push_back(a.get<std::string>());
  }
  if (!j.contains("storage")) throw ParseError("missing \"storage\"");
  m.storage = Storage::from_spec(j.at("storage"));

  const bool explicit_states = j.contains("states");
  if (explicit_states)
    for (const auto& s : j.at("states")) m.add_state(state_name_from_json(s));

  auto resolve = [&m, explicit_states](const nlohmann::json& s, const char* role) {
    std::string name = state_name_from_json(s);
    int idx = m.state_index(name);
    if (idx < 0) {
      if (explicit_states)
        throw ParseError(std::string(role) + " state '" + name + "' is not in \"states\"");
      idx = m.add_state(name);
    }
    return idx;
  };

  if (!j.contains("initial")) throw ParseError("missing \"initial\"");
  for (const auto& s : j.at("initial")) m.initial.push_back(resolve(s, "initial"));
  if (!j.contains("final")) throw ParseError("missing \"final\"");
  for (const auto& s : j.at("final")) m.finals.push_back(resolve(s, "final"));

  if (j.contains("semiring")) m.semiring = Semiring::from_json(j.at("semiring"));

  if (!j.contains("transitions")) throw ParseError("missing \"transitions\"");
  std::size_t n = 0;
  for (const auto& tj : j.at("transitions")) {
    ++n;
    std::string where = "transitions[" + std::to_string(n - 1) + "]";
    if (!tj.is_object()) throw ParseError(where + " must be an object");
    Transition t;
    t.id = tj.contains("id") ? tj.at("id").get<std::string>() : "t" + std::to_string(n);
    if (!tj.contains("from") || !tj.contains("to"))
      throw ParseError(where + ": missing \"from\" or \"to\"");
    t.from = resolve(tj.at("from"), "from");
    t.to = resolve(tj.at("to"), "to");
    if (tj.contains("read")) t.read = tj.at("read").get<std::string>();
    if (!t.read.empty() && !m.has_symbol(t.read))
      throw ParseError(where + ": read symbol '" + t.read + "' not in the alphabet");
    if (!tj.contains("pred") || !tj.contains("instr"))
      throw ParseError(where + ": missing \"pred\" or \"instr\"");
    t.pred = opname_from_json(tj.at("pred"));
    t.instr = opname_from_json(tj.at("instr"));
    if (!m.storage.has_predicate(t.pred))
      throw ParseError(where + ": unknown predicate '" + t.pred + "' for storage kind " +
                       m.storage.kind());
    if (!m.storage.has_instruction(t.instr))
      throw ParseError(where + ": unknown instruction '" + t.instr + "' for storage kind " +
                       m.storage.kind());
    if (tj.contains("weight")) {
      if (!m.semiring)
        throw ParseError(where + ": weight given but the automaton declares no semiring");
      t.weight = m.semiring->weight_from_json(tj.at("weight"));
    } else if (m.semiring) {
      t.weight = m.semiring->one();
    }
    m.transitions.push_back(std::move(t));
  }

  m.reindex();
  auto violations = m.validate();
  if (!violations.empty()) {
    std::string msg = "invalid automaton:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ParseError(msg);
  }
  return m;
}

Automaton load_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return load_automaton_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

nlohmann::ordered_json automaton_to_json(const Automaton& m) {
  nlohmann::ordered_json out;
  out["alphabet"] = m.alphabet;
  out["storage"] = m.storage.spec();
  out["states"] = m.states;
  auto names = [&m](const std::vector<int>& idxs) {
    auto arr = nlohmann::ordered_json::array();
    for (int q : idxs) arr.push_back(m.states[q]);
    return arr;
  };
  out["initial"] = names(m.initial);
  out["final"] = names(m.finals);
  if (m.semiring) out["semiring"] = m.semiring->to_json();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : m.transitions) {
    nlohmann::ordered_json tj;
    tj["id"] = t.id;
    tj["from"] = m.states[t.from];
    tj["read"] = t.read;
    tj["pred"] = opname_to_json(t.pred);
    tj["instr"] = opname_to_json(t.instr);
    tj["to"] = m.states[t.to];
    if (m.semiring) tj["weight"] = m.semiring->weight_to_json(t.weight);
    arr.push_back(std::move(tj));
  }
  out["transitions"] = std::move(arr);
  return out;
}

void save_automaton_file(const Automaton& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << automaton_to_json(m).dump(2) << "\n";
}

Word parse_word(const std::string& text, const std::vector<std::string>& alphabet,
                bool whitespace_tokens) {
  Word w;
  if (whitespace_tokens) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      if (std::find(alphabet.begin(), alphabet.end(), tok) == alphabet.end())
        throw ParseError("token '" + tok + "' is not in the alphabet");
      w.push_back(tok);
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::string* best = nullptr;
    for (const auto& sym : alphabet) {
      if (text.compare(pos, sym.size(), sym) == 0)
        if (!best || sym.size() > best->size()) best = &sym;
    }
    if (!best)
      throw ParseError("cannot segment '" + text + "' at position " + std::to_string(pos) +
                       " with the given alphabet");
    w.push_back(*best);
    pos += best->size();
  }
  return w;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "";
  bool multi = std::any_of(w.begin(), w.end(), [](const std::string& s) { return s.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && multi) out += ' ';
    out += w[i];
  }
  return out;
}

std::vector<std::string> bundled_names() {
  return {"count-anbn", "pd2-equal-length", "pd-dagger-palindrome", "tss-anbncn", "pd-viterbi"};
}

std::string bundled_dir() {
  if (const char* env = std::getenv("WSA_AUTOMATA_DIR")) return env;
#ifdef WSA_AUTOMATA_DIR
  return WSA_AUTOMATA_DIR;
#else
  return "automata";
#endif
}

Automaton load_bundled(const std::string& name) {
  auto names = bundled_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    fail("unknown example '" + name + "'");
  return load_automaton_file(bundled_dir() + "/" + name + ".json");
}

}  // namespace wsa
