#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsa/semiring.hpp"
#include "wsa/storage.hpp"

namespace wsa {

using Word = std::vector<std::string>;

struct Transition {
  std::string id;
  int from = 0, to = 0;  // indexes into Automaton::states
  std::string read;      // "" reads nothing
  std::string pred, instr;
  Weight weight{0};  // meaningful when the automaton carries a semiring
};

// An automaton over a data storage. When `semiring` is engaged the automaton
// is weighted and every transition's weight is meaningful (the loader defaults
// absent weights to one).
struct Automaton {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  Storage storage;
  std::vector<int> initial, finals;
  std::vector<Transition> transitions;
  std::optional<Semiring> semiring;

  int state_index(const std::string& name) const;
  int add_state(const std::string& name);
  int transition_index(const std::string& id) const;  // -1 when absent
  const std::vector<int>& outgoing(int state) const;
  bool is_initial(int q) const;
  bool is_final(int q) const;
  bool has_symbol(const std::string& sym) const;
  Weight tweight(const Transition& t) const { return semiring ? t.weight : Weight{1}; }

  // Rebuilds lookup tables; must be called after the transition/state lists
  // change. Loaders and transforms call it before returning.
  void reindex();

  // Invariant violations (empty = valid): state/alphabet well-formedness,
  // transition endpoints, read symbols, predicate/instruction names resolving
  // in the storage, id uniqueness.
  std::vector<std::string> validate() const;

 private:
  std::vector<std::vector<int>> by_from_;
  std::unordered_map<std::string, int> by_id_;
  std::unordered_map<std::string, int> state_idx_;
};

// A machine configuration: state, storage configuration, input position
// (symbols consumed so far).
struct MachineConfig {
  int state = 0;
  Config store;
  std::size_t pos = 0;
  friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

struct MachineConfigHash {
  std::size_t operator()(const MachineConfig& mc) const {
    return hash_combine(hash_combine(mc.store.hash(), static_cast<std::size_t>(mc.state)),
                        mc.pos);
  }
};

// Budgets for exhaustive run search. Exhaustive enumeration cannot terminate
// on automata whose storage grows along reading-free cycles, so callers that
// can bound storage growth on accepting runs pass max_storage_size and,
// when the bound provably loses no accepting run, size_bound_exact; results
// report whether they are exact under the caps that fired.
struct RunBudget {
  std::size_t max_steps = 0;  // 0 → 10·|word| + 100
  std::size_t max_configs = 1000000;
  std::optional<std::size_t> max_storage_size;
  bool size_bound_exact = false;
  std::size_t steps_for(std::size_t wordlen) const {
    return max_steps ? max_steps : 10 * wordlen + 100;
  }
};

struct Run {
  std::vector<std::string> ids;
  std::vector<MachineConfig> trace;  // |ids| + 1 entries
  Weight weight{1};                  // product of transition weights (one if unweighted)
};

// Successor machine configurations of mc under one transition (empty when the
// read symbol, predicate, or instruction does not apply).
std::vector<MachineConfig> step(const Automaton& m, const MachineConfig& mc,
                                const Transition& t, const Word& w);

struct RunsResult {
  std::vector<Run> runs;  // deterministic order: breadth-first discovery
  bool exact = true;
  std::size_t explored = 0;
};
// All accepting runs on w: start in an initial state with the initial storage
// configuration, consume w exactly, end in a final state.
RunsResult runs_on(const Automaton& m, const Word& w, const RunBudget& budget = {});

struct RecognizeResult {
  bool accepted = false;
  bool exact = true;  // a rejection is only definite when the search completed
  std::optional<Run> witness;
};
RecognizeResult recognizes(const Automaton& m, const Word& w, const RunBudget& budget = {});

struct WeightResult {
  Weight value{0};
  bool exact = true;
  bool saturated = false;
};
// ⊕-sum of run weights on w; requires a weighted automaton.
WeightResult weight_of_word(const Automaton& m, const Word& w, const RunBudget& budget = {});

struct LanguageResult {
  std::vector<Word> words;  // sorted
  bool exact = true;
};
// Every accepted word of length ≤ max_len, by a single breadth-first search
// over (state, storage, consumed-prefix) triples.
LanguageResult language_upto(const Automaton& m, std::size_t max_len,
                             const RunBudget& budget = {});

}  // namespace wsa
