#pragma once

#include <optional>

#include "wsa/automaton.hpp"

namespace wsa {

// Folds every transition's predicate into its instruction: the result runs
// over a predicate-free storage whose instructions are the guarded forms
// "instr|pred", and every transition's predicate is "true". Transition ids,
// reads, endpoints and weights are unchanged, so runs correspond one to one.
// A machine that is already predicate-free is returned as is.
Automaton predicate_free(const Automaton& m);

// Storage determinization by subset simulation: first makes the machine
// predicate-free, then lifts the storage to finite sets of configurations
// with det(r) mapping a set to the union of r over its elements. The state
// graph and transition ids stay as they are; only the storage becomes
// deterministic. Language-preserving because a set thread is nonempty exactly
// when some concrete thread exists.
Automaton determinize_powerset(const Automaton& m);

// Storage determinization by branch splitting: every instruction r of a
// k-boundedly nondeterministic storage is split into deterministic slices
// r[1]..r[k], and every transition with instruction r becomes k parallel
// transitions "id[i]" carrying the same read, predicate endpoints and
// weight. Runs of the result correspond one to one to runs of the input
// (each concrete storage branch is picked by exactly one slice), so both the
// language and run weights are preserved. The bound defaults to the
// storage's declared branching bound; storages without one (e.g. with
// pop*) require an explicit bound, and exceeding it at run time is an error.
Automaton determinize_bounded(const Automaton& m,
                              std::optional<std::size_t> bound = std::nullopt);

// Expands the machine into a plain finite-state automaton over the trivial
// storage by materialising every reachable (state, storage configuration)
// pair as a state. Fails with "configuration space not finite within cap"
// when the reachable space exceeds max_nodes. State names are
// "state|configuration"; transition ids are "origid@srcnode" (with a ".j"
// branch suffix when one storage instruction yields several successors).
Automaton to_fsa(const Automaton& m, std::size_t max_nodes = 10000);

}  // namespace wsa
