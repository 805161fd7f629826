#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "wsa/automaton.hpp"

namespace wsa {

// An approximation strategy between storages: a map A from source
// configurations to target configurations (partial when `total` is false),
// together with name maps sending every supported source predicate or
// instruction to a target operation that over-approximates its image under A.
// Operations absent from the name maps are unsupported: approximating an
// automaton that uses one is an error.
//
// For a total strategy every run of the source machine maps to a run of the
// approximated machine, so the approximated language contains the original
// one. For an injective strategy the correspondence reverses and the
// approximated language is contained in the original. Strategies are built
// against a concrete source storage and record it.
struct Strategy {
  std::string name;
  bool total = false;
  bool injective = false;
  Storage source, target;
  std::function<std::optional<Config>(const Config&)> map;
  std::map<std::string, std::string> pred_map, instr_map;
};

// --- strategies over pushdown-like storages (configurations are words) ---

// Remembers only the topmost symbol ("@" for the empty stack).
Strategy approx_top(const Storage& source);
// Remembers the topmost k symbols; popping at the cut-off guesses the hidden
// symbol, pop* at the cut-off may reach any word.
Strategy approx_topk(const Storage& source, std::size_t k);
// Collapses repeated symbols: pushing a symbol that is already on the stack
// cuts the stack back to that occurrence. Configurations are repeat-free
// words; pop* is unsupported.
Strategy approx_uniq(const Storage& source);
// Partial identity on stacks of height at most k: coarse runs are exactly the
// fine runs that stay within the height bound (injective, not total).
Strategy approx_bdk(const Storage& source, std::size_t k);
// Height bound combined with a symbol merge g: stacks of height at most k,
// rewritten pointwise through g.
Strategy approx_incompk(const Storage& source, std::size_t k,
                        const std::map<std::string, std::string>& g);
// Rewrites stack symbols pointwise through g; the target is the same storage
// kind over the image alphabet.
Strategy approx_merge(const Storage& source, const std::map<std::string, std::string>& g);
// Forgets everything but the stack height; the target is the counter
// storage. pop* is unsupported.
Strategy approx_count(const Storage& source);

// --- strategies over other storages ---

// Counter parity: maps the counter storage onto the two-element storage
// {even, odd}.
Strategy approx_eo(const Storage& source);
// Flattens a tree-stack to the word of labels from the pointer up to (and
// excluding) the root; moving up becomes a nondeterministic push.
Strategy approx_cf(const Storage& source);
// The identity strategy (total and injective).
Strategy approx_identity(const Storage& source);

// Applies a first, then b, which must have been built over a's target.
Strategy compose(const Strategy& a, const Strategy& b);

// Builds a strategy from a textual descriptor:
//   top | top-k:K | uniq | bd-k:K | incomp-k:K:a=x,b=y | merge:a=x,b=y |
//   count | eo | cf | identity
Strategy strategy_by_name(const std::string& descriptor, const Storage& source);

struct ApproxResult {
  Automaton automaton;
  // fine transition id -> coarse transition id (coarse ids are the first
  // member of their merge group with a prime appended)
  std::map<std::string, std::string> transition_map;
};

// Rewrites every transition through the strategy's name maps, merging
// transitions that become indistinguishable; merged weights are ⊕-summed.
ApproxResult approximate_automaton(const Automaton& m, const Strategy& s);

}  // namespace wsa
