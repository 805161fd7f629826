// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Details of failed expectations go to stderr.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wsa/approx.hpp"
#include "wsa/automaton.hpp"
#include "wsa/io.hpp"
#include "wsa/parse.hpp"
#include "wsa/transform.hpp"

using namespace wsa;

namespace {

struct Criterion {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  bool ok() const { return problems.empty(); }
};

std::string ids_str(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) {
    if (!s.empty()) s += ' ';
    s += id;
  }
  return s.empty() ? "(empty)" : s;
}

Word mono(const std::string& sym, std::size_t n) {
  return Word(n, sym);
}

Word cat(std::initializer_list<Word> parts) {
  Word w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& s : alphabet) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

RunBudget sized(std::size_t cap) {
  RunBudget b;
  b.max_storage_size = cap;
  b.size_bound_exact = true;
  return b;
}

std::set<Word> lang_req(Criterion& c, const Automaton& m, std::size_t len,
                        const RunBudget& b, const std::string& what) {
  auto r = language_upto(m, len, b);
  c.expect(r.exact, what + ": language enumeration was not exact");
  return std::set<Word>(r.words.begin(), r.words.end());
}

Automaton tropical_unit(Automaton m) {
  if (!m.semiring) {
    m.semiring = Semiring::tropical();
    for (auto& t : m.transitions) t.weight = Weight{1};
  }
  return m;
}

Strategy strategy_chain(const Storage& src, const std::vector<std::string>& descs) {
  Strategy s = strategy_by_name(descs.front(), src);
  for (std::size_t i = 1; i < descs.size(); ++i)
    s = compose(s, strategy_by_name(descs[i], s.target));
  return s;
}

// best accepting run by weight (tropical: cheapest); nullopt when none was
// found within the expansion budget
std::optional<Run> best_run(const Automaton& m, const Word& w,
                            std::size_t max_expansions = 200000) {
  SearchLimits lim;
  lim.max_expansions = max_expansions;
  RunStream s(m, w, lim);
  return s.next();
}

// Sum of the weights of the fine runs with transition sequence `ids` on w
// whose whole configuration trace lies in the strategy's domain and maps
// exactly onto the given coarse run. Nondeterministic instructions make one
// id sequence stand for several runs (one per trace), so this walks all of
// them.
Weight preimage_sum(const Automaton& fine, const Strategy& strat,
                    const std::vector<std::string>& ids, const Word& w,
                    const Run& coarse_run, const Semiring& sr) {
  if (coarse_run.trace.size() != ids.size() + 1) return sr.zero();
  std::vector<const Transition*> seq;
  for (const auto& id : ids) {
    int ti = fine.transition_index(id);
    if (ti < 0) return sr.zero();
    seq.push_back(&fine.transitions[ti]);
  }
  Weight wt = sr.one();  // trace-independent: the product of transition weights
  for (const Transition* t : seq) wt = sr.times(wt, fine.tweight(*t));

  const MachineConfig& start = coarse_run.trace.front();
  if (!fine.is_initial(start.state) || start.pos != 0) return sr.zero();
  if (!seq.empty() && seq.front()->from != start.state) return sr.zero();
  Config c0 = fine.storage.initial();
  auto img0 = strat.map(c0);
  if (!img0 || !(*img0 == start.store)) return sr.zero();

  Weight sum = sr.zero();
  std::function<void(const Config&, std::size_t, std::size_t)> go =
      [&](const Config& store, std::size_t i, std::size_t pos) {
        if (i == seq.size()) {
          int q = seq.empty() ? start.state : seq.back()->to;
          if (pos == w.size() && fine.is_final(q)) sum = sr.plus(sum, wt);
          return;
        }
        const Transition* t = seq[i];
        std::size_t npos = pos;
        if (!t->read.empty()) {
          if (npos >= w.size() || w[npos] != t->read) return;
          ++npos;
        }
        const MachineConfig& want = coarse_run.trace[i + 1];
        if (want.state != t->to || want.pos != npos) return;
        if (i + 1 < seq.size() && seq[i + 1]->from != t->to) return;
        if (!fine.storage.check_predicate(t->pred, store)) return;
        for (const auto& s : fine.storage.apply_instruction(t->instr, store)) {
          auto img = strat.map(s);
          if (img && *img == want.store) go(s, i + 1, npos);
        }
      };
  go(c0, 0, 0);
  return sum;
}

// ---------------------------------------------------------------------------
// criterion 1: exact language golds for the bundled machines and the
// catalogued approximations of them

Criterion criterion1() {
  Criterion c;

  {
    auto m = load_bundled("tss-anbncn");
    std::set<Word> gold;
    for (std::size_t n = 0; 3 * n <= 8; ++n)
      gold.insert(cat({mono("a", n), mono("b", n), mono("c", n)}));
    c.expect(lang_req(c, m, 8, sized(12), "tss") == gold,
             "tss language <=8 is not { a^n b^n c^n }");
  }
  {
    auto m = load_bundled("pd2-equal-length");
    std::set<Word> gold;
    for (std::size_t k = 0; k <= 3; ++k)
      for (const auto& u : all_words({"a", "b"}, k))
        for (const auto& v : all_words({"a'", "b'"}, k)) {
          if (u.size() != k || v.size() != k) continue;
          gold.insert(cat({u, {"#"}, v}));
        }
    c.expect(lang_req(c, m, 8, sized(10), "pd2") == gold,
             "pd2 language <=8 is not { u#v' : |u|=|v| }");
  }
  {
    auto m = load_bundled("count-anbn");
    std::set<Word> gold;
    for (std::size_t n = 1; 2 * n <= 8; ++n) gold.insert(cat({mono("a", n), mono("b", n)}));
    c.expect(lang_req(c, m, 8, sized(10), "count-anbn") == gold,
             "count language <=8 is not { a^n b^n, n>=1 }");

    auto eo = approximate_automaton(m, strategy_by_name("eo", m.storage)).automaton;
    std::set<Word> eo_gold;
    for (std::size_t mm = 0; mm <= 8; ++mm)
      for (std::size_t n = 1; mm + n <= 8; ++n)
        if ((mm + n) % 2 == 0) eo_gold.insert(cat({mono("a", mm), mono("b", n)}));
    c.expect(lang_req(c, eo, 8, sized(2), "eo(count)") == eo_gold,
             "parity approximation <=8 is not { a^m b^n : n>=1, m=n mod 2 }");
  }
  {
    auto m = load_bundled("tss-anbncn");
    auto cf = approximate_automaton(m, strategy_by_name("cf", m.storage)).automaton;
    std::set<Word> gold;
    for (std::size_t n = 0; 2 * n <= 8; ++n)
      for (std::size_t k = 0; 2 * n + k <= 8; ++k)
        gold.insert(cat({mono("a", n), mono("b", n), mono("c", k)}));
    c.expect(lang_req(c, cf, 8, sized(10), "cf(tss)") == gold,
             "flattened tss <=8 is not { a^n b^n c^m }");

    auto both = approximate_automaton(m, strategy_chain(m.storage, {"cf", "top"})).automaton;
    std::set<Word> blocks;
    for (std::size_t n = 0; n <= 8; ++n)
      for (std::size_t mm = 0; n + mm <= 8; ++mm)
        for (std::size_t k = 0; n + mm + k <= 8; ++k)
          blocks.insert(cat({mono("a", n), mono("b", mm), mono("c", k)}));
    c.expect(lang_req(c, both, 8, sized(2), "cf;top(tss)") == blocks,
             "flattened+top tss <=8 is not { a^n b^m c^k }");
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 2: the worked coarse-to-fine example

Criterion criterion2() {
  Criterion c;
  auto fine = load_bundled("pd-viterbi");
  auto strat = strategy_by_name("count", fine.storage);
  auto w = parse_word("a#ba", fine.alphabet);

  auto res = coarse_to_fine_nbest(fine, strat, w, 1);
  c.expect(res.runs.size() == 1, "n=1 search returned " + std::to_string(res.runs.size()) +
                                     " runs instead of 1");
  if (res.runs.size() == 1) {
    c.expect(res.runs[0].ids == std::vector<std::string>{"t1", "t3", "t4", "t7", "t5", "t8"},
             "best fine run is " + ids_str(res.runs[0].ids) +
                 ", expected t1 t3 t4 t7 t5 t8");
    c.expect(res.runs[0].weight == Weight{6}, "best fine run weight is not 6");
  }
  c.expect(res.coarse_runs_consumed == 1,
           "the coarse stream yielded " + std::to_string(res.coarse_runs_consumed) +
               " runs before stopping, expected exactly 1");
  c.expect(res.certified, "search was not certified");

  SearchLimits lim;
  lim.max_expansions = 20000;
  RunStream stream(res.approx.automaton, w, lim);
  auto first = stream.next();
  c.expect(first.has_value(), "coarse stream is empty");
  if (first) {
    auto pre = preimage_sequences(fine, first->ids, res.approx.transition_map);
    c.expect(pre.size() == 2, "preimage of the first coarse run has " +
                                  std::to_string(pre.size()) + " sequences, expected 2");
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 3: determinization equivalences

Criterion criterion3() {
  Criterion c;

  for (const char* name : {"pd2-equal-length", "pd-dagger-palindrome"}) {
    auto m = load_bundled(name);
    auto base = lang_req(c, m, 8, sized(10), name);
    auto pow = determinize_powerset(m);
    c.expect(lang_req(c, pow, 8, sized(10), std::string(name) + " powerset") == base,
             std::string(name) + ": powerset determinization changed the language <=8");
    auto bnd = determinize_bounded(m);  // bound defaults to the declared |Gamma|
    c.expect(lang_req(c, bnd, 8, sized(10), std::string(name) + " bounded") == base,
             std::string(name) + ": bounded determinization changed the language <=8");
  }

  // the split storage is extensionally the primed storage: the indexed copies
  // of every instruction are partial functions that cover it
  {
    auto dag = Storage::pushdown_dagger({"a", "b"});
    auto split = split_storage(dag, 2);
    for (const auto& cfg : dag.enumerate_configs(4, 500)) {
      for (const auto& r : dag.instruction_names()) {
        auto full = dag.apply_instruction(r, cfg);
        std::vector<Config> covered;
        for (std::size_t i = 1; i <= 2; ++i) {
          auto part = split.apply_instruction(r + "[" + std::to_string(i) + "]", cfg);
          c.expect(part.size() <= 1, "split copy of '" + r + "' is not a partial function");
          covered.insert(covered.end(), part.begin(), part.end());
        }
        std::sort(covered.begin(), covered.end());
        c.expect(covered == full,
                 "split copies of '" + r + "' do not cover it on " + cfg.str());
      }
    }
  }

  // the determinized palindrome machine accepts exactly the even palindromes
  {
    auto m = load_bundled("pd-dagger-palindrome");
    auto det = determinize_bounded(m);
    std::set<Word> gold;
    for (std::size_t k = 0; 2 * k <= 8; ++k)
      for (const auto& u : all_words({"a", "b"}, k)) {
        if (u.size() != k) continue;
        Word rev(u.rbegin(), u.rend());
        gold.insert(cat({u, rev}));
      }
    c.expect(lang_req(c, det, 8, sized(10), "palindrome det") == gold,
             "determinized palindrome machine <=8 is not { w w^R }");
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 4: language inclusions for every applicable catalogued strategy

Criterion criterion4() {
  Criterion c;
  struct Row {
    const char* machine;
    std::vector<std::string> strat;
    std::size_t fine_cap, coarse_cap;
  };
  const std::vector<Row> rows = {
      {"count-anbn", {"eo"}, 10, 2},
      {"count-anbn", {"identity"}, 10, 10},
      {"pd2-equal-length", {"top"}, 10, 2},
      {"pd2-equal-length", {"top-k:2"}, 10, 3},
      {"pd2-equal-length", {"uniq"}, 10, 3},
      {"pd2-equal-length", {"count"}, 10, 10},
      {"pd2-equal-length", {"bd-k:2"}, 10, 3},
      {"pd2-equal-length", {"incomp-k:2:a=x,b=y"}, 10, 3},
      {"pd2-equal-length", {"merge:a=c,b=c"}, 10, 10},
      {"pd2-equal-length", {"identity"}, 10, 10},
      {"pd-dagger-palindrome", {"top"}, 10, 2},
      {"pd-dagger-palindrome", {"uniq"}, 10, 3},
      {"pd-dagger-palindrome", {"count"}, 10, 10},
      {"pd-dagger-palindrome", {"bd-k:2"}, 10, 3},
      {"pd-dagger-palindrome", {"merge:a=c,b=c"}, 10, 10},
      {"pd-dagger-palindrome", {"identity"}, 10, 10},
      {"tss-anbncn", {"cf"}, 12, 10},
      {"tss-anbncn", {"identity"}, 12, 12},
      {"tss-anbncn", {"cf", "top"}, 12, 2},
      {"pd-viterbi", {"top"}, 10, 2},
      {"pd-viterbi", {"top-k:2"}, 10, 3},
      {"pd-viterbi", {"uniq"}, 10, 4},
      {"pd-viterbi", {"count"}, 10, 10},
      {"pd-viterbi", {"count", "eo"}, 10, 2},
      {"pd-viterbi", {"bd-k:2"}, 10, 3},
      {"pd-viterbi", {"merge:a=c,b=c,c=c"}, 10, 10},
      {"pd-viterbi", {"identity"}, 10, 10},
  };
  for (const auto& row : rows) {
    auto m = load_bundled(row.machine);
    auto s = strategy_chain(m.storage, row.strat);
    std::string tag = std::string(row.machine) + " x " + s.name;
    c.expect(s.total || s.injective, tag + ": strategy is neither total nor injective");
    auto coarse = approximate_automaton(m, s).automaton;
    auto lf = lang_req(c, m, 8, sized(row.fine_cap), tag + " fine");
    auto lc = lang_req(c, coarse, 8, sized(row.coarse_cap), tag + " coarse");
    if (s.total)
      c.expect(std::includes(lc.begin(), lc.end(), lf.begin(), lf.end()),
               tag + ": total strategy lost words (no superset)");
    if (s.injective)
      c.expect(std::includes(lf.begin(), lf.end(), lc.begin(), lc.end()),
               tag + ": injective strategy added words (no subset)");
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 5: weighted inequalities and the per-run preimage sums

Criterion criterion5() {
  Criterion c;
  const Semiring sr = Semiring::tropical();

  struct WRow {
    const char* machine;
    std::vector<std::string> strat;
    std::size_t len, fine_cap, coarse_cap;
  };

  // total strategies: the approximated machine weighs every word at least as
  // high (cost at most as large)
  const std::vector<WRow> totals = {
      {"pd-viterbi", {"count"}, 4, 7, 7},
      {"pd-viterbi", {"top"}, 4, 7, 2},
      {"pd-viterbi", {"top-k:2"}, 4, 7, 3},
      {"pd-viterbi", {"uniq"}, 4, 7, 4},
      {"count-anbn", {"eo"}, 5, 8, 2},
      {"tss-anbncn", {"cf"}, 4, 9, 7},
      {"pd2-equal-length", {"merge:a=c,b=c"}, 4, 7, 7},
  };
  for (const auto& row : totals) {
    auto m = tropical_unit(load_bundled(row.machine));
    auto s = strategy_chain(m.storage, row.strat);
    std::string tag = std::string(row.machine) + " x " + s.name;
    auto coarse = approximate_automaton(m, s).automaton;
    auto lf = lang_req(c, m, row.len, sized(row.fine_cap), tag + " fine");
    for (const auto& w : all_words(m.alphabet, row.len)) {
      if (!lf.count(w)) continue;  // fine weighs zero (least): inequality trivial
      auto f = best_run(m, w);
      auto g = best_run(coarse, w);
      c.expect(f.has_value(), tag + ": no fine run found on " + word_str(w));
      c.expect(g.has_value(), tag + ": accepted word " + word_str(w) + " lost upstairs");
      if (f && g)
        c.expect(sr.leq(f->weight, g->weight).value_or(false),
                 tag + " on " + word_str(w) + ": coarse cost " +
                     sr.format(g->weight) + " exceeds fine cost " + sr.format(f->weight));
    }
  }

  // injective strategies: the reverse inequality, plus the per-run equality
  // wt(coarse run) = sum of the weights of the fine runs mapping onto it
  const std::vector<WRow> injectives = {
      {"pd-viterbi", {"bd-k:2"}, 4, 7, 4},
      {"pd-viterbi", {"identity"}, 4, 7, 7},
      {"pd-dagger-palindrome", {"bd-k:2"}, 5, 8, 4},
      {"pd2-equal-length", {"merge:a=x,b=y"}, 4, 7, 7},
      {"count-anbn", {"identity"}, 5, 8, 8},
  };
  for (const auto& row : injectives) {
    auto m = tropical_unit(load_bundled(row.machine));
    auto s = strategy_chain(m.storage, row.strat);
    std::string tag = std::string(row.machine) + " x " + s.name;
    c.expect(s.injective, tag + ": strategy is not injective");
    auto ar = approximate_automaton(m, s);
    const Automaton& coarse = ar.automaton;
    auto lc = lang_req(c, coarse, row.len, sized(row.coarse_cap), tag + " coarse");
    for (const auto& w : all_words(m.alphabet, row.len)) {
      if (lc.count(w)) {
        auto f = best_run(m, w);
        auto g = best_run(coarse, w);
        c.expect(g.has_value(), tag + ": no coarse run found on " + word_str(w));
        c.expect(f.has_value(), tag + ": coarse-accepted word " + word_str(w) + " lost downstairs");
        if (f && g)
          c.expect(sr.leq(g->weight, f->weight).value_or(false),
                   tag + " on " + word_str(w) + ": fine cost " + sr.format(f->weight) +
                       " exceeds coarse cost " + sr.format(g->weight));
      }
      // preimage sums over every coarse accepting run on w
      auto coarse_runs = runs_on(coarse, w, sized(row.coarse_cap));
      c.expect(coarse_runs.exact, tag + ": coarse run enumeration not exact on " + word_str(w));
      for (const auto& cr : coarse_runs.runs) {
        Weight sum = sr.zero();
        for (const auto& cand : preimage_sequences(m, cr.ids, ar.transition_map))
          sum = sr.plus(sum, preimage_sum(m, s, cand, w, cr, sr));
        c.expect(sum == cr.weight,
                 tag + " on " + word_str(w) + ": run " + ids_str(cr.ids) +
                     " weighs " + sr.format(cr.weight) + " but its preimages sum to " +
                     sr.format(sum));
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 6: n-best against a brute-force oracle on random machines

Criterion criterion6() {
  Criterion c;
  std::mt19937_64 rng(20260823);
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  int built = 0, attempts = 0;
  while (built < 50 && attempts < 500) {
    ++attempts;
    const bool pushdown = attempts % 2 == 0;
    Automaton m;
    m.alphabet = {"a", "b"};
    m.storage = pushdown ? Storage::pushdown({"x", "y"}) : Storage::count();
    m.semiring = Semiring::tropical();
    const std::size_t ns = 2 + pick(3);  // 2..4 states
    for (std::size_t q = 0; q < ns; ++q) m.add_state("q" + std::to_string(q));
    m.initial = {0};
    for (std::size_t q = 0; q < ns; ++q)
      if (rng() % 2 == 0) m.finals.push_back(static_cast<int>(q));
    if (m.finals.empty()) m.finals.push_back(static_cast<int>(ns - 1));

    const std::vector<std::string> preds =
        pushdown ? std::vector<std::string>{"true", "bottom", "top(x)", "top(y)"}
                 : std::vector<std::string>{"nat", "zero", "pos"};
    const std::vector<std::string> instrs =
        pushdown ? std::vector<std::string>{"push(x)", "push(y)", "pop", "stay"}
                 : std::vector<std::string>{"inc", "dec", "id"};
    const std::size_t nt = 4 + pick(5);  // 4..8 transitions, all reading
    for (std::size_t i = 0; i < nt; ++i) {
      Transition t;
      t.id = "r" + std::to_string(i);
      t.from = static_cast<int>(pick(ns));
      t.to = static_cast<int>(pick(ns));
      t.read = rng() % 2 ? "a" : "b";
      t.pred = preds[pick(preds.size())];
      t.instr = instrs[pick(instrs.size())];
      t.weight = Weight{1 + rng() % 3};
      m.transitions.push_back(std::move(t));
    }
    m.reindex();
    if (!m.validate().empty()) continue;

    Word w;
    const std::size_t len = pick(7);  // 0..6
    for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % 2 ? "a" : "b");

    auto brute = runs_on(m, w);  // every transition reads: finite and exact
    if (!brute.exact) continue;  // infeasible draw: regenerate

    const Semiring sr = *m.semiring;
    std::vector<Weight> gold;
    for (const auto& r : brute.runs) gold.push_back(r.weight);
    std::sort(gold.begin(), gold.end(), [&](Weight a, Weight b) { return sr.lt(b, a); });
    if (gold.size() > 3) gold.resize(3);

    auto nb = coarse_to_fine_nbest(m, strategy_by_name(pushdown ? "count" : "eo", m.storage),
                                   w, 3);
    std::string tag = "instance " + std::to_string(attempts);
    c.expect(nb.certified, tag + ": n-best search was not certified");
    std::vector<Weight> got;
    for (const auto& e : nb.runs) got.push_back(e.weight);
    std::sort(got.begin(), got.end(), [&](Weight a, Weight b) { return sr.lt(b, a); });
    if (!(got == gold)) {
      std::string g1, g2;
      for (auto x : gold) g1 += sr.format(x) + " ";
      for (auto x : got) g2 += sr.format(x) + " ";
      c.expect(false, tag + " on " + word_str(w) + ": oracle 3-best weights [" + g1 +
                          "] vs n-best [" + g2 + "]");
    }
    ++built;
  }
  c.expect(built == 50, "only built " + std::to_string(built) + " feasible instances");
  return c;
}

// ---------------------------------------------------------------------------
// criterion 7: finite-configuration expansion to a plain FSA

Criterion criterion7() {
  Criterion c;
  {
    auto m = load_bundled("count-anbn");
    auto eo = approximate_automaton(m, strategy_by_name("eo", m.storage)).automaton;
    auto fsa = to_fsa(eo);
    c.expect(fsa.storage.kind() == "none", "expanded machine still carries storage");
    c.expect(lang_req(c, fsa, 8, {}, "fsa(eo)") == lang_req(c, eo, 8, sized(2), "eo"),
             "FSA of the parity-approximated counter disagrees <=8");
    try {
      to_fsa(m, 200);
      c.expect(false, "unbounded counter expansion did not raise the cap error");
    } catch (const Error& e) {
      c.expect(std::string(e.what()).find("not finite within cap") != std::string::npos,
               std::string("unexpected cap error text: ") + e.what());
    }
  }
  {
    auto m = load_bundled("tss-anbncn");
    auto both = approximate_automaton(m, strategy_chain(m.storage, {"cf", "top"})).automaton;
    auto fsa = to_fsa(both);
    c.expect(lang_req(c, fsa, 8, {}, "fsa(cf;top)") ==
                 lang_req(c, both, 8, sized(2), "cf;top"),
             "FSA of the flattened+top tree-stack machine disagrees <=8");
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 8: semiring laws, run replay, stream monotonicity

Criterion criterion8() {
  Criterion c;
  std::mt19937_64 rng(4242);

  for (const auto& sr : {Semiring::boolean(), Semiring::tropical(), Semiring::counting(997)}) {
    auto sample = [&]() -> Weight {
      Weight raw;
      switch (rng() % 6) {
        case 0: raw = sr.zero(); break;
        case 1: raw = sr.one(); break;
        case 2:
          if (sr.kind() == SemiringKind::TropicalMinPlus) {
            raw = Weight{Semiring::kInf};
            break;
          }
          [[fallthrough]];
        default:
          raw = sr.kind() == SemiringKind::Boolean ? Weight{rng() % 2}
                                                   : Weight{rng() % 1024};
      }
      return sr.plus(raw, sr.zero());  // normalize into the carrier (saturate at cap)
    };
    for (int i = 0; i < 1000; ++i) {
      Weight a = sample(), b = sample(), x = sample();
      bool laws = sr.plus(a, b) == sr.plus(b, a) &&
                  sr.plus(sr.plus(a, b), x) == sr.plus(a, sr.plus(b, x)) &&
                  sr.plus(a, sr.zero()) == a &&
                  sr.times(sr.times(a, b), x) == sr.times(a, sr.times(b, x)) &&
                  sr.times(a, sr.one()) == a && sr.times(sr.one(), a) == a &&
                  sr.times(a, sr.zero()) == sr.zero() &&
                  sr.times(sr.zero(), a) == sr.zero() &&
                  sr.times(a, sr.plus(b, x)) == sr.plus(sr.times(a, b), sr.times(a, x)) &&
                  sr.times(sr.plus(a, b), x) == sr.plus(sr.times(a, x), sr.times(b, x));
      c.expect(laws, sr.name() + ": semiring law violated on (" + sr.format(a) + "," +
                         sr.format(b) + "," + sr.format(x) + ")");
      bool order = sr.leq(a, a).value_or(false) &&
                   sr.leq(sr.zero(), a).value_or(false) &&
                   (!sr.leq(a, b).value_or(false) ||
                    sr.leq(sr.plus(a, x), sr.plus(b, x)).value_or(false)) &&
                   (!sr.leq(a, b).value_or(false) ||
                    sr.leq(sr.times(a, x), sr.times(b, x)).value_or(false));
      c.expect(order, sr.name() + ": positive-order law violated on (" + sr.format(a) + "," +
                          sr.format(b) + "," + sr.format(x) + ")");
    }
  }

  // replaying a returned run reproduces its trace
  auto replay_ok = [](const Automaton& m, const Run& r, const Word& w) {
    if (r.trace.size() != r.ids.size() + 1) return false;
    for (std::size_t i = 0; i < r.ids.size(); ++i) {
      int ti = m.transition_index(r.ids[i]);
      if (ti < 0) return false;
      auto succ = step(m, r.trace[i], m.transitions[ti], w);
      if (std::find(succ.begin(), succ.end(), r.trace[i + 1]) == succ.end()) return false;
    }
    return true;
  };
  for (const char* name : {"count-anbn", "pd2-equal-length", "tss-anbncn"}) {
    auto m = load_bundled(name);
    auto words = lang_req(c, m, 6, sized(10), std::string(name) + " replay");
    for (const auto& w : words) {
      auto rr = runs_on(m, w, sized(10));
      for (const auto& r : rr.runs)
        c.expect(replay_ok(m, r, w), std::string(name) + ": run " + ids_str(r.ids) +
                                         " on " + word_str(w) + " does not replay");
    }
  }

  // every emitted stream is monotone: weights never improve along the stream
  struct SRow {
    const char* machine;
    const char* strat;  // "" = the machine itself
    const char* word;
  };
  const std::vector<SRow> streams = {
      {"pd-viterbi", "", "a#ba"},   {"pd-viterbi", "count", "a#ba"},
      {"pd-viterbi", "top", "a#a"}, {"pd-dagger-palindrome", "", "abba"},
      {"count-anbn", "eo", "aabb"}, {"pd2-equal-length", "", "ab#a'b'"},
  };
  for (const auto& row : streams) {
    auto m = tropical_unit(load_bundled(row.machine));
    if (row.strat[0] != '\0')
      m = approximate_automaton(m, strategy_by_name(row.strat, m.storage)).automaton;
    const Semiring sr = *m.semiring;
    SearchLimits lim;
    lim.max_expansions = 20000;
    RunStream s(m, parse_word(row.word, m.alphabet), lim);
    std::optional<Weight> prev;
    for (int i = 0; i < 25; ++i) {
      auto r = s.next();
      if (!r) break;
      if (prev)
        c.expect(sr.leq(r->weight, *prev).value_or(false),
                 std::string(row.machine) + " stream on " + row.word +
                     ": a later run beat an earlier one");
      prev = r->weight;
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    Criterion (*fn)();
  };
  const std::vector<Entry> entries = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                                      {4, criterion4}, {5, criterion5}, {6, criterion6},
                                      {7, criterion7}, {8, criterion8}};
  bool all_ok = true;
  for (const auto& e : entries) {
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    if (c.ok()) {
      std::cout << "PASS criterion " << e.number << "\n";
    } else {
      all_ok = false;
      std::cout << "FAIL criterion " << e.number << "\n";
      std::size_t shown = 0;
      for (const auto& p : c.problems) {
        if (++shown > 10) {
          std::cerr << "  ... " << (c.problems.size() - 10) << " more\n";
          break;
        }
        std::cerr << "  criterion " << e.number << ": " << p << "\n";
      }
    }
  }
  return all_ok ? 0 : 1;
}
