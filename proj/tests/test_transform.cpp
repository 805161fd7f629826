#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "wsa/automaton.hpp"
#include "wsa/io.hpp"
#include "wsa/transform.hpp"

using namespace wsa;

namespace {

std::set<Word> lang(const Automaton& m, std::size_t len, const RunBudget& b = {}) {
  auto r = language_upto(m, len, b);
  REQUIRE(r.exact);
  return {r.words.begin(), r.words.end()};
}

Automaton flip_flop_weighted() {
  // one state over {a}; finite storage toggling between two marks, weight 2
  auto e = Config::label("e"), o = Config::label("o");
  Automaton m;
  m.alphabet = {"a"};
  m.storage = Storage::finite({e, o}, e, {{"any", {e, o}}},
                              {{"flip", {{e, o}, {o, e}}}});
  m.semiring = Semiring::counting();
  m.add_state("1");
  m.initial = {0};
  m.finals = {0};
  m.transitions.push_back({"t", 0, 0, "a", "any", "flip", Weight{2}});
  m.reindex();
  REQUIRE(m.validate().empty());
  return m;
}

Automaton branching_finite() {
  auto x = Config::label("x"), y = Config::label("y"), z = Config::label("z");
  Automaton m;
  m.alphabet = {"a"};
  m.storage = Storage::finite({x, y, z}, x, {},
                              {{"go", {{x, y}, {x, z}, {y, x}, {z, x}}}});
  m.add_state("1");
  m.initial = {0};
  m.finals = {0};
  m.transitions.push_back({"t", 0, 0, "a", "true", "go", Weight{1}});
  m.reindex();
  REQUIRE(m.validate().empty());
  return m;
}

}  // namespace

TEST_CASE("predicate folding keeps ids, runs and language") {
  auto m = load_bundled("count-anbn");
  auto pf = predicate_free(m);
  CHECK(pf.storage.kind() == "predfree");
  CHECK(pf.validate().empty());
  for (const auto& t : pf.transitions) CHECK(t.pred == "true");
  CHECK(pf.transitions[0].instr == "inc|nat");
  CHECK(pf.transitions[3].instr == "inc|zero");
  CHECK(pf.transitions[0].id == "t1");

  Word w{"a", "a", "b", "b"};
  auto rr = runs_on(pf, w);
  REQUIRE(rr.runs.size() == 1);
  CHECK(rr.runs[0].ids == std::vector<std::string>{"t1", "t1", "t2", "t3", "t4"});
  CHECK(lang(pf, 12, {.max_storage_size = 13}) == lang(m, 12, {.max_storage_size = 13}));

  // already predicate-free machines pass through untouched
  auto pf2 = predicate_free(pf);
  CHECK(automaton_to_json(pf2) == automaton_to_json(pf));
}

TEST_CASE("subset determinization threads singleton sets on deterministic storage") {
  auto m = load_bundled("count-anbn");
  auto det = determinize_powerset(m);
  CHECK(det.storage.kind() == "powerset");
  CHECK(det.validate().empty());

  auto rr = runs_on(det, Word{"a", "a", "b", "b"});
  REQUIRE(rr.runs.size() == 1);
  const auto& tr = rr.runs[0].trace;
  REQUIRE(tr.size() == 6);
  std::size_t counters[6] = {0, 1, 2, 1, 0, 1};
  for (int i = 0; i < 6; ++i)
    CHECK(tr[i].store == Config::set_of({Config::nat(counters[i])}));

  CHECK(lang(det, 8, {.max_storage_size = 9}) == lang(m, 8, {.max_storage_size = 9}));
}

TEST_CASE("subset determinization collapses storage branching") {
  auto m = load_bundled("pd2-equal-length");
  auto det = determinize_powerset(m);
  CHECK(det.validate().empty());

  // after reading "a" the guessed stacks travel as one set {a, b}
  auto rr = runs_on(det, parse_word("a#b'", m.alphabet));
  REQUIRE(rr.runs.size() == 1);
  CHECK(rr.runs[0].ids == std::vector<std::string>{"t1", "t3", "t5", "t6"});
  CHECK(rr.runs[0].trace[1].store ==
        Config::set_of({Config::word({"a"}), Config::word({"b"})}));

  CHECK(lang(det, 8, {.max_storage_size = 9}) == lang(m, 8, {.max_storage_size = 9}));
}

TEST_CASE("branch splitting preserves runs one to one") {
  auto m = load_bundled("pd2-equal-length");
  auto det = determinize_bounded(m);  // declared bound 2
  CHECK(det.storage.kind() == "split");
  CHECK(det.validate().empty());
  CHECK(det.transitions.size() == 2 * m.transitions.size());

  // canonical successor order puts stack [a..] before [b..], so the
  // accepting branch for "a#a'" takes slice 1 everywhere
  auto rr = runs_on(det, parse_word("a#a'", m.alphabet));
  REQUIRE(rr.runs.size() == 1);
  CHECK(rr.runs[0].ids ==
        std::vector<std::string>{"t1[1]", "t3[1]", "t4[1]", "t6[1]"});

  CHECK(lang(det, 8, {.max_storage_size = 9}) == lang(m, 8, {.max_storage_size = 9}));
}

TEST_CASE("branch splitting keeps weights per run") {
  auto m = load_bundled("pd-viterbi");
  auto det = determinize_bounded(m);  // plain pushdown: bound 1
  CHECK(det.validate().empty());
  RunBudget b{.max_storage_size = 6, .size_bound_exact = true};
  for (auto text : {"a#a", "a#ba", "#"}) {
    auto w = parse_word(text, m.alphabet);
    CHECK(weight_of_word(det, w, b).value == weight_of_word(m, w, b).value);
  }
}

TEST_CASE("branch splitting requires a bound when none is declared") {
  Automaton m;
  m.alphabet = {"a"};
  m.storage = Storage::pushdown_popstar({"a"});
  m.add_state("1");
  m.initial = m.finals = {0};
  m.transitions.push_back({"t", 0, 0, "a", "true", "popstar", Weight{1}});
  m.reindex();
  CHECK_THROWS_WITH_AS(determinize_bounded(m), doctest::Contains("branching bound"),
                       Error);
  auto det = determinize_bounded(m, 3);  // explicit bound works
  CHECK(det.transitions.size() == 3);
}

TEST_CASE("expansion to a finite-state automaton") {
  auto m = flip_flop_weighted();
  auto fsa = to_fsa(m);
  CHECK(fsa.validate().empty());
  CHECK(fsa.storage.kind() == "none");
  CHECK(fsa.states == std::vector<std::string>{"1|e", "1|o"});
  REQUIRE(fsa.transitions.size() == 2);
  CHECK(fsa.transitions[0].id == "t@0");
  CHECK(fsa.transitions[1].id == "t@1");
  CHECK(fsa.transitions[0].weight == Weight{2});

  CHECK(lang(fsa, 5) == lang(m, 5));
  for (int n = 0; n <= 4; ++n) {
    Word w(n, "a");
    CHECK(weight_of_word(fsa, w).value == weight_of_word(m, w).value);
  }
}

TEST_CASE("expansion disambiguates branching storage edges") {
  auto m = branching_finite();
  auto fsa = to_fsa(m);
  CHECK(fsa.validate().empty());
  std::set<std::string> ids;
  for (const auto& t : fsa.transitions) ids.insert(t.id);
  CHECK(ids.count("t@0.1") == 1);
  CHECK(ids.count("t@0.2") == 1);
  CHECK(ids.size() == fsa.transitions.size());
  CHECK(lang(fsa, 5) == lang(m, 5));
}

TEST_CASE("expansion refuses unbounded configuration spaces") {
  auto m = load_bundled("count-anbn");
  CHECK_THROWS_WITH_AS(to_fsa(m, 500),
                       doctest::Contains("configuration space not finite within cap"),
                       Error);
}
