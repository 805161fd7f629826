// Command-line frontend: validation, recognition, weights, run enumeration,
// transformations, approximation, and coarse-to-fine n-best search over
// automata with storage.
//
// Exit codes: 0 success / accepted / runs found; 1 definite negative (rejected,
// invalid, no runs); 2 undecided because a search limit fired; 3 bad input or
// usage.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsa/approx.hpp"
#include "wsa/automaton.hpp"
#include "wsa/io.hpp"
#include "wsa/parse.hpp"
#include "wsa/transform.hpp"

using nlohmann::ordered_json;
using namespace wsa;

namespace {

constexpr int kOk = 0, kNo = 1, kUndecided = 2, kError = 3;

struct Global {
  std::string format = "text";
  bool tokens = false;
  std::uint64_t seed = 1;
};

bool json_mode(const Global& g) { return g.format == "json"; }

// a path to a file, or the name of a bundled example machine
Automaton load_input(const std::string& spec) {
  if (std::filesystem::exists(spec)) return load_automaton_file(spec);
  for (const auto& name : bundled_names())
    if (name == spec) return load_bundled(name);
  fail("no such file or bundled automaton: '" + spec + "'");
}

Word word_arg(const Automaton& m, const Global& g, const std::string& text) {
  return parse_word(text, m.alphabet, g.tokens);
}

std::string show_word(const Word& w) {
  auto s = word_str(w);
  return s.empty() ? "ε" : s;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

void write_json_out(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) fail("cannot write '" + out_path + "'");
    f << j.dump(2) << "\n";
  }
}

// Storage probes beyond the structural checks: samples configurations by
// random walks over the storage's own instructions and verifies that
// predicates stay decidable and that no instruction exceeds the declared
// branching bound.
std::vector<std::string> deep_probe(const Automaton& m, std::uint64_t seed) {
  std::vector<std::string> issues;
  std::mt19937_64 rng(seed);
  const auto preds = m.storage.predicate_names();
  const auto instrs = m.storage.instruction_names();
  std::vector<Config> pool{m.storage.initial()};
  for (int walk = 0; walk < 200 && !instrs.empty(); ++walk) {
    const Config& c = pool[rng() % pool.size()];
    const auto& ins = instrs[rng() % instrs.size()];
    auto succ = m.storage.apply_instruction(ins, c);
    if (auto b = m.storage.declared_branching(); b && succ.size() > *b)
      issues.push_back("instruction '" + ins + "' produced " +
                       std::to_string(succ.size()) +
                       " successors, above the declared bound " + std::to_string(*b));
    for (auto& d : succ)
      if (pool.size() < 300) pool.push_back(std::move(d));
  }
  for (const auto& c : pool)
    for (const auto& p : preds) (void)m.storage.check_predicate(p, c);
  std::sort(issues.begin(), issues.end());
  issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
  return issues;
}

Strategy build_strategy(const Automaton& m, const std::string& first,
                        const std::vector<std::string>& then) {
  Strategy s = strategy_by_name(first, m.storage);
  for (const auto& t : then) s = compose(s, strategy_by_name(t, s.target));
  return s;
}

ordered_json approx_json(const Automaton& fine, const Strategy& s,
                         const ApproxResult& ar) {
  ordered_json j = automaton_to_json(ar.automaton);
  ordered_json meta;
  meta["strategy"] = s.name;
  meta["total"] = s.total;
  meta["injective"] = s.injective;
  meta["source"] = fine.storage.spec();
  ordered_json tm = ordered_json::object();
  for (const auto& [fine_id, coarse_id] : ar.transition_map) tm[fine_id] = coarse_id;
  meta["transition_map"] = tm;
  j["approximation"] = meta;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"automata with data storage: recognition, approximation, coarse-to-fine parsing"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--tokens", g.tokens,
               "split input words on whitespace instead of greedy symbol matching");
  app.add_option("--seed", g.seed, "seed for randomized probes")->capture_default_str();

  int rc = kOk;

  // ---- validate ----------------------------------------------------------
  struct {
    std::string file;
    bool deep = false;
  } va;
  auto* validate = app.add_subcommand("validate", "check automaton invariants");
  validate->add_option("file", va.file, "automaton file or bundled name")->required();
  validate->add_flag("--deep", va.deep, "also probe storage behaviour on sampled configurations");
  validate->callback([&] {
    auto m = load_input(va.file);
    auto issues = m.validate();
    if (va.deep)
      for (auto& x : deep_probe(m, g.seed)) issues.push_back(std::move(x));
    if (json_mode(g)) {
      ordered_json j;
      j["valid"] = issues.empty();
      j["issues"] = issues;
      std::cout << j.dump(2) << "\n";
    } else if (issues.empty()) {
      std::cout << "ok\n";
    } else {
      for (const auto& x : issues) std::cout << x << "\n";
    }
    rc = issues.empty() ? kOk : kNo;
  });

  // ---- recognize ---------------------------------------------------------
  struct {
    std::string file, word;
    RunBudget budget;
  } re;
  auto* recognize = app.add_subcommand("recognize", "does the automaton accept the word?");
  recognize->add_option("file", re.file)->required();
  recognize->add_option("word", re.word, "input word ('' for the empty word)")->required();
  recognize->add_option("--max-steps", re.budget.max_steps, "run length cap (0: automatic)");
  recognize->add_option("--max-configs", re.budget.max_configs, "explored configuration cap");
  recognize->callback([&] {
    auto m = load_input(re.file);
    auto w = word_arg(m, g, re.word);
    auto r = recognizes(m, w, re.budget);
    if (json_mode(g)) {
      ordered_json j;
      j["word"] = w;
      j["accepted"] = r.accepted;
      j["exact"] = r.exact;
      if (r.witness) j["witness"] = r.witness->ids;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << show_word(w) << ": "
                << (r.accepted ? "accepted" : r.exact ? "rejected" : "not found (search capped)")
                << "\n";
      if (r.witness) std::cout << "witness: " << join_ids(r.witness->ids) << "\n";
    }
    rc = r.accepted ? kOk : r.exact ? kNo : kUndecided;
  });

  // ---- weight ------------------------------------------------------------
  struct {
    std::string file, word;
    RunBudget budget;
    bool exact_bound = false;
  } we;
  auto* weight = app.add_subcommand("weight", "total weight of a word (weighted automata)");
  weight->add_option("file", we.file)->required();
  weight->add_option("word", we.word)->required();
  weight->add_option("--max-steps", we.budget.max_steps);
  weight->add_option("--max-configs", we.budget.max_configs);
  auto* msz = weight->add_option("--max-storage", we.budget.max_storage_size,
                                 "cap on storage configuration size during search");
  weight->add_flag("--storage-bound-exact", we.exact_bound,
                   "assert that the storage cap loses no accepting run");
  weight->callback([&] {
    auto m = load_input(we.file);
    if (!m.semiring) fail("automaton is unweighted; 'weight' needs a semiring");
    we.budget.size_bound_exact = we.exact_bound && msz->count() > 0;
    auto w = word_arg(m, g, we.word);
    auto r = weight_of_word(m, w, we.budget);
    if (json_mode(g)) {
      ordered_json j;
      j["word"] = w;
      j["weight"] = m.semiring->weight_to_json(r.value);
      j["display"] = m.semiring->format(r.value);
      j["exact"] = r.exact;
      j["saturated"] = r.saturated;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << show_word(w) << ": " << m.semiring->format(r.value)
                << (r.exact ? "" : " (search capped; lower bound on run set)")
                << (r.saturated ? " (saturated)" : "") << "\n";
    }
    rc = r.exact ? kOk : kUndecided;
  });

  // ---- runs --------------------------------------------------------------
  struct {
    std::string file, word;
    std::size_t n = 5;
    SearchLimits limits;
  } ru;
  auto* runs = app.add_subcommand("runs", "best accepting runs on a word, best first");
  runs->add_option("file", ru.file)->required();
  runs->add_option("word", ru.word)->required();
  runs->add_option("-n,--count", ru.n, "how many runs")->capture_default_str();
  runs->add_option("--max-expansions", ru.limits.max_expansions);
  runs->add_option("--max-run-length", ru.limits.max_run_length);
  runs->callback([&] {
    auto m = load_input(ru.file);
    const Semiring sr = m.semiring ? *m.semiring : Semiring::boolean();
    auto w = word_arg(m, g, ru.word);
    RunStream s(m, w, ru.limits);
    std::vector<Run> found;
    while (found.size() < ru.n) {
      auto r = s.next();
      if (!r) break;
      found.push_back(std::move(*r));
    }
    if (json_mode(g)) {
      ordered_json j;
      j["word"] = w;
      j["runs"] = ordered_json::array();
      for (const auto& r : found) {
        ordered_json e;
        e["ids"] = r.ids;
        e["weight"] = sr.weight_to_json(r.weight);
        j["runs"].push_back(e);
      }
      j["exhausted"] = !s.limit_tripped();
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& r : found)
        std::cout << sr.format(r.weight) << "\t" << join_ids(r.ids) << "\n";
      if (found.empty()) std::cout << "no runs\n";
      if (s.limit_tripped()) std::cout << "(search limits hit)\n";
    }
    rc = !found.empty() ? kOk : s.limit_tripped() ? kUndecided : kNo;
  });

  // ---- language ----------------------------------------------------------
  struct {
    std::string file;
    std::size_t len = 6;
    RunBudget budget;
  } la;
  auto* language = app.add_subcommand("language", "accepted words up to a length");
  language->add_option("file", la.file)->required();
  language->add_option("-l,--max-len", la.len)->capture_default_str();
  language->add_option("--max-configs", la.budget.max_configs);
  language->add_option("--max-storage", la.budget.max_storage_size);
  language->callback([&] {
    auto m = load_input(la.file);
    auto r = language_upto(m, la.len, la.budget);
    if (json_mode(g)) {
      ordered_json j;
      j["max_len"] = la.len;
      j["exact"] = r.exact;
      j["words"] = ordered_json::array();
      for (const auto& w : r.words) j["words"].push_back(w);
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& w : r.words) std::cout << show_word(w) << "\n";
      if (!r.exact) std::cout << "(search capped: list may be incomplete)\n";
    }
    rc = r.exact ? kOk : kUndecided;
  });

  // ---- transform ---------------------------------------------------------
  struct {
    std::string file, out;
    std::size_t bound = 0;
    std::size_t cap = 10000;
  } tf;
  auto* transform = app.add_subcommand("transform", "rewrite an automaton");
  transform->require_subcommand(1);
  auto add_tf = [&](const std::string& name, const std::string& desc) {
    auto* sc = transform->add_subcommand(name, desc);
    sc->add_option("file", tf.file)->required();
    sc->add_option("-o,--out", tf.out, "write result here instead of stdout");
    return sc;
  };
  auto* tf_pf = add_tf("pf", "fold predicates into instructions, leaving one trivial predicate");
  auto* tf_pow = add_tf("det-powerset", "determinize by moving to powerset storage");
  auto* tf_bnd = add_tf("det-bounded", "determinize by splitting boundedly nondeterministic instructions");
  tf_bnd->add_option("--bound", tf.bound, "branching bound (default: the storage's declared bound)");
  auto* tf_fsa = add_tf("to-fsa", "expand a finite configuration space into plain states");
  tf_fsa->add_option("--cap", tf.cap, "abort if more configuration pairs appear")->capture_default_str();
  transform->callback([&] {
    auto m = load_input(tf.file);
    Automaton out;
    if (*tf_pf) out = predicate_free(m);
    else if (*tf_pow) out = determinize_powerset(m);
    else if (*tf_bnd) out = determinize_bounded(m, tf.bound ? std::optional<std::size_t>(tf.bound) : std::nullopt);
    else out = to_fsa(m, tf.cap);
    write_json_out(automaton_to_json(out), tf.out);
    rc = kOk;
  });

  // ---- approx ------------------------------------------------------------
  struct {
    std::string file, strategy, out;
    std::vector<std::string> then;
  } ap;
  auto* approx = app.add_subcommand("approx", "approximate along a storage strategy");
  approx->add_option("file", ap.file)->required();
  approx->add_option("-s,--strategy", ap.strategy,
                     "strategy descriptor, e.g. top, top-k:3, uniq, count, eo, cf, "
                     "bd-k:2, incomp-k:2:a=c,b=c, merge:a=c,b=c, identity")
      ->required();
  approx->add_option("--then", ap.then, "compose further strategies left to right");
  approx->add_option("-o,--out", ap.out, "write result here instead of stdout");
  approx->callback([&] {
    auto m = load_input(ap.file);
    auto s = build_strategy(m, ap.strategy, ap.then);
    auto ar = approximate_automaton(m, s);
    write_json_out(approx_json(m, s, ar), ap.out);
    rc = kOk;
  });

  // ---- nbest -------------------------------------------------------------
  struct {
    std::string file, word, strategy;
    std::vector<std::string> then;
    std::size_t n = 1;
    bool eager = false;
    SearchLimits limits;
  } nb;
  auto* nbest = app.add_subcommand("nbest", "n best runs by coarse-to-fine search");
  nbest->add_option("file", nb.file)->required();
  nbest->add_option("word", nb.word)->required();
  nbest->add_option("-s,--strategy", nb.strategy, "total strategy used for the coarse machine")
      ->required();
  nbest->add_option("--then", nb.then, "compose further strategies left to right");
  nbest->add_option("-n,--count", nb.n)->capture_default_str();
  nbest->add_flag("--eager", nb.eager,
                  "stop as soon as n runs are admitted (unsound: may miss better runs)");
  nbest->add_option("--max-expansions", nb.limits.max_expansions);
  nbest->add_option("--max-run-length", nb.limits.max_run_length);
  nbest->callback([&] {
    auto m = load_input(nb.file);
    const Semiring sr = m.semiring ? *m.semiring : Semiring::boolean();
    auto s = build_strategy(m, nb.strategy, nb.then);
    auto w = word_arg(m, g, nb.word);
    NBestOptions opts;
    opts.limits = nb.limits;
    if (nb.eager) opts.stop = NBestOptions::StopRule::FirstFill;
    auto res = coarse_to_fine_nbest(m, s, w, nb.n, opts);
    if (json_mode(g)) {
      ordered_json j;
      j["word"] = w;
      j["strategy"] = s.name;
      j["runs"] = ordered_json::array();
      for (const auto& e : res.runs) {
        ordered_json je;
        je["ids"] = e.ids;
        je["weight"] = sr.weight_to_json(e.weight);
        j["runs"].push_back(je);
      }
      j["coarse_runs_consumed"] = res.coarse_runs_consumed;
      j["candidates_checked"] = res.candidates_checked;
      j["certified"] = res.certified;
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& e : res.runs)
        std::cout << sr.format(e.weight) << "\t" << join_ids(e.ids) << "\n";
      if (res.runs.empty()) std::cout << "no runs\n";
      std::cout << "(coarse runs: " << res.coarse_runs_consumed
                << ", candidates: " << res.candidates_checked
                << (res.certified ? "" : ", limits hit") << ")\n";
    }
    rc = !res.certified ? kUndecided : !res.runs.empty() ? kOk : kNo;
  });

  // ---- examples ----------------------------------------------------------
  struct {
    std::string name, out;
  } ex;
  auto* examples = app.add_subcommand("examples", "list or export the bundled machines");
  examples->add_option("name", ex.name, "bundled machine to export");
  examples->add_option("-o,--out", ex.out);
  examples->callback([&] {
    if (ex.name.empty()) {
      if (json_mode(g)) {
        ordered_json j = bundled_names();
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& n : bundled_names()) std::cout << n << "\n";
      }
    } else {
      write_json_out(automaton_to_json(load_bundled(ex.name)), ex.out);
    }
    rc = kOk;
  });

  // let global options (--format, --tokens, --seed) appear after a subcommand
  std::function<void(CLI::App*)> allow_globals_anywhere = [&](CLI::App* a) {
    for (auto* sc : a->get_subcommands([](const CLI::App*) { return true; })) {
      sc->fallthrough();
      allow_globals_anywhere(sc);
    }
  };
  allow_globals_anywhere(&app);

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return rc;
}
