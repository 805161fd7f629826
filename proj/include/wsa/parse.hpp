#pragma once

#include <optional>
#include <queue>

#include "wsa/approx.hpp"
#include "wsa/automaton.hpp"

namespace wsa {

struct SearchLimits {
  std::size_t max_run_length = 0;  // 0 → 10·|word| + 50
  std::size_t max_expansions = 200000;
  std::size_t max_enumerated = 100000;
  std::size_t run_length_for(std::size_t wordlen) const {
    return max_run_length ? max_run_length : 10 * wordlen + 50;
  }
};

// Lazy best-first enumeration of the accepting runs on a word, best weight
// first, ties broken by the lexicographic order of transition-id sequences.
// Works on unweighted automata as if every transition had weight one.
//
// Correctness of the order requires run weights to be monotone: extending a
// run must never improve its weight (true for the cost semiring and for
// weight-one transitions anywhere). A violating transition raises an error
// when first expanded. Reading-free cycles that keep the weight unchanged
// make exhaustive enumeration endless; they are detected (see
// neutral_cycle_detected) and the search limits bound the effort, reported
// via limit_tripped.
class RunStream {
 public:
  RunStream(const Automaton& m, Word w, const SearchLimits& lim = {});
  RunStream(const RunStream&) = delete;
  RunStream& operator=(const RunStream&) = delete;

  // Next accepting run, or nullopt when exhausted or a limit fired.
  std::optional<Run> next();

  bool limit_tripped() const { return tripped_; }
  bool neutral_cycle_detected() const { return neutral_cycle_; }
  std::size_t expansions() const { return expansions_; }
  std::size_t enumerated() const { return enumerated_; }

 private:
  struct Node {
    MachineConfig mc;
    int parent;  // arena index, -1 at a root
    int via;     // transition index, -1 at a root
    Weight w;
    std::size_t depth;
    std::string key;  // separator-joined transition ids, for tie-breaking
  };
  struct Worse {
    RunStream* rs;
    bool operator()(std::size_t a, std::size_t b) const;
  };

  const Automaton& m_;
  Word w_;
  Semiring sr_;
  SearchLimits lim_;
  std::size_t maxlen_;
  std::vector<Node> arena_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, Worse> pq_;
  std::size_t expansions_ = 0, enumerated_ = 0;
  bool tripped_ = false, neutral_cycle_ = false;

  void expand(std::size_t idx);
  Run materialize(std::size_t idx) const;
};

// Whether the transition sequence is a run: consecutive transitions chain
// through states and some storage configuration sequence supports every
// predicate and instruction. The start configuration is existentially
// quantified: the initial configuration is tried first, then all storage
// configurations of size at most |ids|+1 (instructions change configuration
// size by at most one, so larger starts cannot help a sequence this short).
// The empty sequence is a run. Unknown ids are errors.
bool is_run(const Automaton& m, const std::vector<std::string>& ids);

// All fine transition-id sequences mapping positionwise onto the given
// coarse run: the product over positions of the fine preimages of each
// coarse id, enumerated in fine transition order (leftmost position varies
// slowest). transition_map is fine id → coarse id as produced by
// approximate_automaton.
std::vector<std::vector<std::string>> preimage_sequences(
    const Automaton& fine, const std::vector<std::string>& coarse_ids,
    const std::map<std::string, std::string>& transition_map,
    std::size_t cap = 1000000);

struct NBestOptions {
  // When to stop pulling coarse runs:
  //  WeightCertified — only once the n-th best admitted weight is at least as
  //  good as the last coarse weight pulled, which bounds every remaining
  //  candidate (sound; the default).
  //  FirstFill — as soon as n runs are admitted. Unsound: a later coarse run
  //  may still hold better fine runs; kept for comparison experiments.
  enum class StopRule { WeightCertified, FirstFill };
  StopRule stop = StopRule::WeightCertified;
  SearchLimits limits;  // applied to the coarse run stream
};

struct NBestResult {
  struct Entry {
    std::vector<std::string> ids;
    Weight weight{1};
  };
  std::vector<Entry> runs;  // best first, at most n
  ApproxResult approx;      // the coarse machine that guided the search
  std::size_t coarse_runs_consumed = 0;
  std::size_t candidates_checked = 0;
  bool certified = true;  // false when a search limit fired
};

// n best fine runs on w, found by enumerating coarse runs best-first and
// testing the fine preimage sequences of each (admission simulates the fine
// machine on w, threading sets of storage configurations). Requires a total
// strategy, so every fine run is reachable through some coarse run and the
// coarse weight of a run bounds the weights of its fine preimages.
NBestResult coarse_to_fine_nbest(const Automaton& fine, const Strategy& strategy,
                                 const Word& w, std::size_t n,
                                 const NBestOptions& opts = {});

}  // namespace wsa
