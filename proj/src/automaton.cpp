#include "wsa/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace wsa {

int Automaton::state_index(const std::string& name) const {
  auto it = state_idx_.find(name);
  return it == state_idx_.end() ? -1 : it->second;
}

int Automaton::add_state(const std::string& name) {
  int idx = state_index(name);
  if (idx >= 0) return idx;
  states.push_back(name);
  idx = static_cast<int>(states.size()) - 1;
  state_idx_[name] = idx;
  by_from_.emplace_back();
  return idx;
}

int Automaton::transition_index(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? -1 : it->second;
}

const std::vector<int>& Automaton::outgoing(int state) const {
  static const std::vector<int> empty;
  if (state < 0 || state >= static_cast<int>(by_from_.size())) return empty;
  return by_from_[state];
}

bool Automaton::is_initial(int q) const {
  return std::find(initial.begin(), initial.end(), q) != initial.end();
}
bool Automaton::is_final(int q) const {
  return std::find(finals.begin(), finals.end(), q) != finals.end();
}
bool Automaton::has_symbol(const std::string& sym) const {
  return std::find(alphabet.begin(), alphabet.end(), sym) != alphabet.end();
}

void Automaton::reindex() {
  state_idx_.clear();
  for (std::size_t i = 0; i < states.size(); ++i)
    state_idx_.emplace(states[i], static_cast<int>(i));
  by_from_.assign(states.size(), {});
  by_id_.clear();
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    if (t.from >= 0 && t.from < static_cast<int>(states.size()))
      by_from_[t.from].push_back(static_cast<int>(i));
    by_id_.emplace(t.id, static_cast<int>(i));
  }
}

std::vector<std::string> Automaton::validate() const {
  std::vector<std::string> out;
  if (states.empty()) out.push_back("automaton has no states");
  if (alphabet.empty()) out.push_back("alphabet is empty");
  {
    std::set<std::string> seen;
    for (const auto& s : states)
      if (!seen.insert(s).second) out.push_back("duplicate state name '" + s + "'");
    seen.clear();
    for (const auto& a : alphabet) {
      if (a.empty()) out.push_back("alphabet contains the empty symbol");
      if (!seen.insert(a).second) out.push_back("duplicate alphabet symbol '" + a + "'");
    }
  }
  auto in_range = [this](int q) { return q >= 0 && q < static_cast<int>(states.size()); };
  for (int q : initial)
    if (!in_range(q)) out.push_back("initial state index out of range");
  for (int q : finals)
    if (!in_range(q)) out.push_back("final state index out of range");
  std::set<std::string> ids;
  for (const auto& t : transitions) {
    std::string where = "transition '" + t.id + "'";
    if (t.id.empty()) out.push_back("transition with empty id");
    if (!ids.insert(t.id).second) out.push_back("duplicate transition id '" + t.id + "'");
    if (!in_range(t.from) || !in_range(t.to)) out.push_back(where + ": endpoint out of range");
    if (!t.read.empty() && !has_symbol(t.read))
      out.push_back(where + ": read symbol '" + t.read + "' not in the alphabet");
    if (!storage.has_predicate(t.pred))
      out.push_back(where + ": unknown predicate '" + t.pred + "'");
    if (!storage.has_instruction(t.instr))
      out.push_back(where + ": unknown instruction '" + t.instr + "'");
  }
  return out;
}

std::vector<MachineConfig> step(const Automaton& m, const MachineConfig& mc,
                                const Transition& t, const Word& w) {
  if (mc.state != t.from) return {};
  std::size_t npos = mc.pos;
  if (!t.read.empty()) {
    if (mc.pos >= w.size() || w[mc.pos] != t.read) return {};
    npos = mc.pos + 1;
  }
  if (!m.storage.check_predicate(t.pred, mc.store)) return {};
  std::vector<MachineConfig> out;
  for (auto& c : m.storage.apply_instruction(t.instr, mc.store))
    out.push_back({t.to, std::move(c), npos});
  return out;
}

namespace {

struct SearchNode {
  MachineConfig mc;
  int parent = -1;
  int via = -1;  // transition index
  std::size_t depth = 0;
  Weight w{1};
};

Run reconstruct(const Automaton& m, const std::vector<SearchNode>& arena, int idx) {
  Run run;
  run.weight = arena[idx].w;
  for (int i = idx; i >= 0; i = arena[i].parent) {
    run.trace.push_back(arena[i].mc);
    if (arena[i].via >= 0) run.ids.push_back(m.transitions[arena[i].via].id);
  }
  std::reverse(run.ids.begin(), run.ids.end());
  std::reverse(run.trace.begin(), run.trace.end());
  return run;
}

struct SearchFlags {
  bool steps = false, configs = false, size = false;
  bool exact(const RunBudget& b) const {
    return !steps && !configs && (!size || b.size_bound_exact);
  }
};

}  // namespace

RunsResult runs_on(const Automaton& m, const Word& w, const RunBudget& budget) {
  const std::size_t max_depth = budget.steps_for(w.size());
  const Semiring sr = m.semiring ? *m.semiring : Semiring::boolean();
  std::vector<SearchNode> arena;
  std::deque<int> queue;
  SearchFlags flags;
  RunsResult res;

  for (int q : m.initial) {
    arena.push_back({{q, m.storage.initial(), 0}, -1, -1, 0, sr.one()});
    queue.push_back(static_cast<int>(arena.size()) - 1);
  }
  std::vector<int> accepting;
  while (!queue.empty()) {
    int idx = queue.front();
    queue.pop_front();
    SearchNode node = arena[idx];  // copy: arena may reallocate below
    if (m.is_final(node.mc.state) && node.mc.pos == w.size()) accepting.push_back(idx);
    bool at_cap = node.depth >= max_depth;
    for (int ti : m.outgoing(node.mc.state)) {
      const Transition& t = m.transitions[ti];
      for (auto& succ : step(m, node.mc, t, w)) {
        if (at_cap) {
          flags.steps = true;
          break;
        }
        if (budget.max_storage_size && succ.store.size() > *budget.max_storage_size) {
          flags.size = true;
          continue;
        }
        if (arena.size() >= budget.max_configs) {
          flags.configs = true;
          break;
        }
        Weight nw = m.semiring ? sr.times(node.w, t.weight) : sr.one();
        arena.push_back({std::move(succ), idx, ti, node.depth + 1, nw});
        queue.push_back(static_cast<int>(arena.size()) - 1);
      }
      if (flags.configs) break;
    }
    if (flags.configs) break;
  }
  for (int idx : accepting) res.runs.push_back(reconstruct(m, arena, idx));
  res.explored = arena.size();
  res.exact = flags.exact(budget);
  return res;
}

RecognizeResult recognizes(const Automaton& m, const Word& w, const RunBudget& budget) {
  const std::size_t max_depth = budget.steps_for(w.size());
  std::vector<SearchNode> arena;
  std::deque<int> queue;
  std::unordered_set<MachineConfig, MachineConfigHash> seen;
  SearchFlags flags;

  for (int q : m.initial) {
    MachineConfig mc{q, m.storage.initial(), 0};
    if (seen.insert(mc).second) {
      arena.push_back({mc, -1, -1, 0, {1}});
      queue.push_back(static_cast<int>(arena.size()) - 1);
    }
  }
  while (!queue.empty()) {
    int idx = queue.front();
    queue.pop_front();
    SearchNode node = arena[idx];
    if (m.is_final(node.mc.state) && node.mc.pos == w.size())
      return {true, true, reconstruct(m, arena, idx)};
    bool at_cap = node.depth >= max_depth;
    for (int ti : m.outgoing(node.mc.state)) {
      const Transition& t = m.transitions[ti];
      for (auto& succ : step(m, node.mc, t, w)) {
        if (at_cap) {
          flags.steps = true;
          break;
        }
        if (budget.max_storage_size && succ.store.size() > *budget.max_storage_size) {
          flags.size = true;
          continue;
        }
        if (arena.size() >= budget.max_configs) {
          flags.configs = true;
          break;
        }
        if (!seen.insert(succ).second) continue;
        arena.push_back({std::move(succ), idx, ti, node.depth + 1, {1}});
        queue.push_back(static_cast<int>(arena.size()) - 1);
      }
      if (flags.configs) break;
    }
    if (flags.configs) break;
  }
  return {false, flags.exact(budget), std::nullopt};
}

WeightResult weight_of_word(const Automaton& m, const Word& w, const RunBudget& budget) {
  if (!m.semiring) fail("weight_of_word requires a weighted automaton");
  auto rr = runs_on(m, w, budget);
  std::vector<Weight> ws;
  ws.reserve(rr.runs.size());
  for (const auto& r : rr.runs) ws.push_back(r.weight);
  Weight v = sum_finite(ws, *m.semiring);
  return {v, rr.exact, m.semiring->saturated(v)};
}

LanguageResult language_upto(const Automaton& m, std::size_t max_len, const RunBudget& budget) {
  struct LangNode {
    MachineConfig mc;
    Word prefix;
  };
  struct Key {
    MachineConfig mc;
    Word prefix;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = MachineConfigHash{}(k.mc);
      for (const auto& s : k.prefix) h = hash_combine(h, std::hash<std::string>{}(s));
      return h;
    }
  };
  // pos always equals |prefix| here; keep pos = 0 in keys.
  std::unordered_set<Key, KeyHash> seen;
  std::deque<LangNode> queue;
  std::set<Word> words;
  SearchFlags flags;
  for (int q : m.initial) {
    LangNode n{{q, m.storage.initial(), 0}, {}};
    if (seen.insert({n.mc, n.prefix}).second) queue.push_back(std::move(n));
  }
  while (!queue.empty()) {
    LangNode node = std::move(queue.front());
    queue.pop_front();
    if (m.is_final(node.mc.state)) words.insert(node.prefix);
    for (int ti : m.outgoing(node.mc.state)) {
      const Transition& t = m.transitions[ti];
      if (!t.read.empty() && node.prefix.size() >= max_len) continue;
      if (!m.storage.check_predicate(t.pred, node.mc.store)) continue;
      Word next_prefix = node.prefix;
      if (!t.read.empty()) next_prefix.push_back(t.read);
      for (auto& c : m.storage.apply_instruction(t.instr, node.mc.store)) {
        if (budget.max_storage_size && c.size() > *budget.max_storage_size) {
          flags.size = true;
          continue;
        }
        if (seen.size() >= budget.max_configs) {
          flags.configs = true;
          break;
        }
        LangNode succ{{t.to, std::move(c), 0}, next_prefix};
        if (seen.insert({succ.mc, succ.prefix}).second) queue.push_back(std::move(succ));
      }
      if (flags.configs) break;
    }
    if (flags.configs) break;
  }
  LanguageResult res;
  res.words.assign(words.begin(), words.end());
  res.exact = flags.exact(budget);
  return res;
}

}  // namespace wsa
