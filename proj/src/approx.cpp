#include "wsa/approx.hpp"

#include <algorithm>
#include <tuple>

#include "wsa/storage.hpp"

namespace wsa {

namespace {

using Syms = std::vector<std::string>;

Syms tail(const Syms& x) { return {x.begin() + 1, x.end()}; }

Syms prepend(const std::string& s, const Syms& x) {
  Syms out{s};
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

Syms trunc(const Syms& x, std::size_t k) {
  return {x.begin(), x.begin() + std::min(x.size(), k)};
}

bool starts_with(const Syms& x, const std::string& s) { return !x.empty() && x[0] == s; }

bool ends_with(const Syms& z, const Syms& x) {
  return z.size() >= x.size() && std::equal(x.rbegin(), x.rend(), z.rbegin());
}

std::vector<Syms> suffixes(const Syms& x) {
  std::vector<Syms> out;
  for (std::size_t i = 0; i <= x.size(); ++i) out.emplace_back(x.begin() + i, x.end());
  return out;
}

std::vector<Syms> words_upto(const Syms& gamma, std::size_t k) {
  std::vector<Syms> out{{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= k; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& g : gamma) out.push_back(prepend(g, out[i]));
    level_begin = level_end;
  }
  return out;
}

// Repeat-free words: every symbol occurs at most once.
void rf_extend(const Syms& gamma, Syms& cur, std::vector<Syms>& out) {
  out.push_back(cur);
  for (const auto& g : gamma) {
    if (std::find(cur.begin(), cur.end(), g) != cur.end()) continue;
    cur.insert(cur.begin(), g);
    rf_extend(gamma, cur, out);
    cur.erase(cur.begin());
  }
}

std::vector<Syms> rf_words(const Syms& gamma) {
  std::vector<Syms> out;
  Syms cur;
  rf_extend(gamma, cur, out);
  return out;
}

// Pushing onto a repeat-free word: a fresh symbol lands on top, a repeated
// one cuts the word back to its previous occurrence.
Syms push_collapse(const std::string& g, const Syms& u) {
  auto it = std::find(u.begin(), u.end(), g);
  if (it == u.end()) return prepend(g, u);
  return prepend(g, Syms{it + 1, u.end()});
}

std::string map_to_string(const std::map<std::string, std::string>& g) {
  std::string out;
  for (const auto& [k, v] : g) {
    if (!out.empty()) out += ",";
    out += k + "=" + v;
  }
  return out;
}

void require_pushdown(const Storage& source, const std::string& strat) {
  if (!source.is_pushdown_family())
    fail("strategy '" + strat + "' needs a pushdown-like storage, got '" + source.kind() +
         "'");
}

// Builds a strategy with a finite target whose operations keep the source
// names. pred_fn/instr_fn give the target extension of one source operation
// at one target configuration; nullopt marks the operation unsupported.
using PredFn = std::function<std::optional<bool>(
    const std::string& full, const std::string& base, const Syms& args, const Config& x)>;
using InstrFn = std::function<std::optional<std::vector<Config>>(
    const std::string& full, const std::string& base, const Syms& args, const Config& x)>;

Strategy finite_strategy(const Storage& source, std::string name, bool total, bool injective,
                         std::vector<Config> configs, Config initial,
                         std::function<std::optional<Config>(const Config&)> amap,
                         const PredFn& pred_fn, const InstrFn& instr_fn) {
  Strategy s;
  std::map<std::string, std::vector<Config>> preds;
  std::map<std::string, std::vector<std::pair<Config, Config>>> instrs;
  for (const auto& pname : source.predicate_names()) {
    auto [base, args] = opname_split(pname);
    std::vector<Config> ext;
    bool supported = true;
    for (const auto& x : configs) {
      auto h = pred_fn(pname, base, args, x);
      if (!h) {
        supported = false;
        break;
      }
      if (*h) ext.push_back(x);
    }
    if (!supported) continue;
    preds[pname] = std::move(ext);
    s.pred_map[pname] = pname;
  }
  for (const auto& iname : source.instruction_names()) {
    auto [base, args] = opname_split(iname);
    std::vector<std::pair<Config, Config>> pairs;
    bool supported = true;
    for (const auto& x : configs) {
      auto succ = instr_fn(iname, base, args, x);
      if (!succ) {
        supported = false;
        break;
      }
      for (auto& y : *succ) pairs.emplace_back(x, std::move(y));
    }
    if (!supported) continue;
    instrs[iname] = std::move(pairs);
    s.instr_map[iname] = iname;
  }
  s.name = std::move(name);
  s.total = total;
  s.injective = injective;
  s.source = source;
  s.target = Storage::finite(configs, std::move(initial), std::move(preds), std::move(instrs));
  s.map = std::move(amap);
  return s;
}

std::vector<Config> word_configs(const std::vector<Syms>& words) {
  std::vector<Config> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Config::word(w));
  return out;
}

void check_merge_map(const Storage& source, const std::map<std::string, std::string>& g,
                     const std::string& strat) {
  for (const auto& sym : source.gamma())
    if (!g.count(sym))
      fail("strategy '" + strat + "': merge map does not cover symbol '" + sym + "'");
  for (const auto& [k, v] : g)
    if (v.empty() || v == "@")
      fail("strategy '" + strat + "': '" + v + "' is not a usable symbol");
}

Syms merge_image(const Storage& source, const std::map<std::string, std::string>& g) {
  Syms delta;
  for (const auto& γ : source.gamma()) delta.push_back(g.at(γ));
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  return delta;
}

}  // namespace

Strategy approx_top(const Storage& source) {
  require_pushdown(source, "top");
  std::vector<Config> configs{Config::label("@")};
  std::vector<Config> gamma_labels, all;
  for (const auto& g : source.gamma()) configs.push_back(Config::label(g));
  all = configs;
  gamma_labels.assign(configs.begin() + 1, configs.end());
  auto amap = [](const Config& c) -> std::optional<Config> {
    const auto& w = c.as_word();
    return Config::label(w.empty() ? "@" : w[0]);
  };
  PredFn pf = [](const std::string&, const std::string& base, const Syms& args,
                 const Config& x) -> std::optional<bool> {
    if (base == "true") return true;
    if (base == "bottom") return x.as_label() == "@";
    if (base == "top") return x.as_label() == args[0];
    return std::nullopt;
  };
  InstrFn inf = [all, gamma_labels](const std::string&, const std::string& base,
                                    const Syms& args,
                                    const Config& x) -> std::optional<std::vector<Config>> {
    bool empty = x.as_label() == "@";
    if (base == "stay" && args.empty()) return std::vector<Config>{x};
    if (base == "stay") return empty ? std::vector<Config>{} : std::vector<Config>{Config::label(args[0])};
    if (base == "push" && !args.empty()) return std::vector<Config>{Config::label(args[0])};
    if (base == "push") return gamma_labels;
    if (base == "pop" && args.empty()) return empty ? std::vector<Config>{} : all;
    if (base == "pop") return x.as_label() == args[0] ? all : std::vector<Config>{};
    if (base == "popstar") return empty ? std::vector<Config>{x} : all;
    return std::nullopt;
  };
  return finite_strategy(source, "top", /*total=*/true, /*injective=*/false,
                         std::move(configs), Config::label("@"), amap, pf, inf);
}

Strategy approx_topk(const Storage& source, std::size_t k) {
  require_pushdown(source, "top-k");
  if (k == 0) fail("strategy 'top-k' needs k >= 1");
  Syms gamma = source.gamma();
  auto words = words_upto(gamma, k);
  auto amap = [k](const Config& c) -> std::optional<Config> {
    return Config::word(trunc(c.as_word(), k));
  };
  PredFn pf = [](const std::string&, const std::string& base, const Syms& args,
                 const Config& x) -> std::optional<bool> {
    if (base == "true") return true;
    if (base == "bottom") return x.as_word().empty();
    if (base == "top") return starts_with(x.as_word(), args[0]);
    return std::nullopt;
  };
  InstrFn inf = [k, gamma, words](const std::string&, const std::string& base,
                                  const Syms& args,
                                  const Config& x) -> std::optional<std::vector<Config>> {
    const Syms& w = x.as_word();
    auto pop_results = [&]() {
      std::vector<Config> out;
      if (w.empty()) return out;
      out.push_back(Config::word(tail(w)));
      if (w.size() == k)  // the cut-off may have hidden a symbol underneath
        for (const auto& d : gamma) {
          Syms y = tail(w);
          y.push_back(d);
          out.push_back(Config::word(y));
        }
      return out;
    };
    if (base == "stay" && args.empty()) return std::vector<Config>{x};
    if (base == "stay")
      return w.empty() ? std::vector<Config>{}
                       : std::vector<Config>{Config::word(prepend(args[0], tail(w)))};
    if (base == "push" && !args.empty())
      return std::vector<Config>{Config::word(trunc(prepend(args[0], w), k))};
    if (base == "push") {
      std::vector<Config> out;
      for (const auto& g : gamma) out.push_back(Config::word(trunc(prepend(g, w), k)));
      return out;
    }
    if (base == "pop" && args.empty()) return pop_results();
    if (base == "pop")
      return starts_with(w, args[0]) ? pop_results() : std::vector<Config>{};
    if (base == "popstar") {
      if (w.size() < k) {
        std::vector<Config> out;
        for (auto& s : suffixes(w)) out.push_back(Config::word(s));
        return out;
      }
      return word_configs(words);  // beyond the cut-off anything may remain
    }
    return std::nullopt;
  };
  return finite_strategy(source, "top-k:" + std::to_string(k), /*total=*/true,
                         /*injective=*/false, word_configs(words), Config::word({}), amap,
                         pf, inf);
}

Strategy approx_uniq(const Storage& source) {
  require_pushdown(source, "uniq");
  Syms gamma = source.gamma();
  auto words = rf_words(gamma);
  auto amap = [](const Config& c) -> std::optional<Config> {
    const Syms& w = c.as_word();
    Syms acc;
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = push_collapse(*it, acc);
    return Config::word(acc);
  };
  // pop on x undoes a collapse: the stack below the top could have collapsed
  // to x's tail, or to any repeat-free word that ends with x itself.
  auto pop_set = [words](const Syms& x) {
    std::vector<Syms> out;
    if (x.empty()) return out;
    out.push_back(tail(x));
    for (const auto& z : words)
      if (ends_with(z, x)) out.push_back(z);
    return out;
  };
  PredFn pf = [](const std::string&, const std::string& base, const Syms& args,
                 const Config& x) -> std::optional<bool> {
    if (base == "true") return true;
    if (base == "bottom") return x.as_word().empty();
    if (base == "top") return starts_with(x.as_word(), args[0]);
    return std::nullopt;
  };
  InstrFn inf = [gamma, pop_set](const std::string&, const std::string& base,
                                 const Syms& args,
                                 const Config& x) -> std::optional<std::vector<Config>> {
    const Syms& w = x.as_word();
    if (base == "stay" && args.empty()) return std::vector<Config>{x};
    if (base == "stay") {
      std::vector<Config> out;
      for (const auto& z : pop_set(w)) out.push_back(Config::word(push_collapse(args[0], z)));
      return out;
    }
    if (base == "push" && !args.empty())
      return std::vector<Config>{Config::word(push_collapse(args[0], w))};
    if (base == "push") {
      std::vector<Config> out;
      for (const auto& g : gamma) out.push_back(Config::word(push_collapse(g, w)));
      return out;
    }
    if (base == "pop" && args.empty()) return word_configs(pop_set(w));
    if (base == "pop")
      return starts_with(w, args[0]) ? word_configs(pop_set(w)) : std::vector<Config>{};
    return std::nullopt;  // popstar cannot be tracked through collapses
  };
  return finite_strategy(source, "uniq", /*total=*/true, /*injective=*/false,
                         word_configs(words), Config::word({}), amap, pf, inf);
}

Strategy approx_bdk(const Storage& source, std::size_t k) {
  require_pushdown(source, "bd-k");
  auto words = words_upto(source.gamma(), k);
  auto amap = [k](const Config& c) -> std::optional<Config> {
    if (c.as_word().size() > k) return std::nullopt;
    return c;
  };
  // partial identity: source operations restricted to words of height <= k
  PredFn pf = [source](const std::string& full, const std::string&, const Syms&,
                       const Config& x) -> std::optional<bool> {
    return source.check_predicate(full, x);
  };
  InstrFn inf = [source, k](const std::string& full, const std::string&, const Syms&,
                            const Config& x) -> std::optional<std::vector<Config>> {
    std::vector<Config> out;
    for (auto& y : source.apply_instruction(full, x))
      if (y.as_word().size() <= k) out.push_back(std::move(y));
    return out;
  };
  return finite_strategy(source, "bd-k:" + std::to_string(k), /*total=*/false,
                         /*injective=*/true, word_configs(words), Config::word({}), amap,
                         pf, inf);
}

Strategy approx_incompk(const Storage& source, std::size_t k,
                        const std::map<std::string, std::string>& g) {
  require_pushdown(source, "incomp-k");
  check_merge_map(source, g, "incomp-k");
  Syms delta = merge_image(source, g);
  auto words = words_upto(delta, k);
  auto amap = [k, g](const Config& c) -> std::optional<Config> {
    const Syms& w = c.as_word();
    if (w.size() > k) return std::nullopt;
    Syms out;
    for (const auto& s : w) out.push_back(g.at(s));
    return Config::word(out);
  };
  PredFn pf = [g](const std::string&, const std::string& base, const Syms& args,
                  const Config& x) -> std::optional<bool> {
    if (base == "true") return true;
    if (base == "bottom") return x.as_word().empty();
    if (base == "top") return starts_with(x.as_word(), g.at(args[0]));
    return std::nullopt;
  };
  InstrFn inf = [k, g, delta](const std::string&, const std::string& base, const Syms& args,
                              const Config& x) -> std::optional<std::vector<Config>> {
    const Syms& w = x.as_word();
    if (base == "stay" && args.empty()) return std::vector<Config>{x};
    if (base == "stay")
      return w.empty() ? std::vector<Config>{}
                       : std::vector<Config>{Config::word(prepend(g.at(args[0]), tail(w)))};
    if (base == "push" && !args.empty())
      return w.size() < k ? std::vector<Config>{Config::word(prepend(g.at(args[0]), w))}
                          : std::vector<Config>{};
    if (base == "push") {
      std::vector<Config> out;
      if (w.size() < k)
        for (const auto& d : delta) out.push_back(Config::word(prepend(d, w)));
      return out;
    }
    if (base == "pop" && args.empty())
      return w.empty() ? std::vector<Config>{} : std::vector<Config>{Config::word(tail(w))};
    if (base == "pop")
      return starts_with(w, g.at(args[0])) ? std::vector<Config>{Config::word(tail(w))}
                                           : std::vector<Config>{};
    if (base == "popstar") {
      std::vector<Config> out;
      for (auto& s : suffixes(w)) out.push_back(Config::word(s));
      return out;
    }
    return std::nullopt;
  };
  bool injective = delta.size() == source.gamma().size();
  return finite_strategy(source, "incomp-k:" + std::to_string(k) + ":" + map_to_string(g),
                         /*total=*/false, injective, word_configs(words), Config::word({}),
                         amap, pf, inf);
}

Strategy approx_eo(const Storage& source) {
  if (source.kind() != "count")
    fail("strategy 'eo' needs the counter storage, got '" + source.kind() + "'");
  Config E = Config::label("even"), O = Config::label("odd");
  auto amap = [E, O](const Config& c) -> std::optional<Config> {
    return c.as_nat() % 2 ? O : E;
  };
  PredFn pf = [E](const std::string&, const std::string& base, const Syms&,
                  const Config& x) -> std::optional<bool> {
    if (base == "nat" || base == "pos") return true;  // positives of both parities exist
    if (base == "zero") return x == E;
    return std::nullopt;
  };
  InstrFn inf = [E, O](const std::string&, const std::string& base, const Syms&,
                       const Config& x) -> std::optional<std::vector<Config>> {
    if (base == "inc" || base == "dec") return std::vector<Config>{x == E ? O : E};
    if (base == "id" || base == "id_pos") return std::vector<Config>{x};
    return std::nullopt;
  };
  return finite_strategy(source, "eo", /*total=*/true, /*injective=*/false, {E, O}, E, amap,
                         pf, inf);
}

Strategy approx_count(const Storage& source) {
  require_pushdown(source, "count");
  Strategy s;
  s.name = "count";
  s.total = true;
  s.injective = false;
  s.source = source;
  s.target = Storage::count();
  s.map = [](const Config& c) -> std::optional<Config> {
    return Config::nat(c.as_word().size());
  };
  for (const auto& pname : source.predicate_names()) {
    auto [base, args] = opname_split(pname);
    if (base == "true") s.pred_map[pname] = "nat";
    else if (base == "bottom") s.pred_map[pname] = "zero";
    else if (base == "top") s.pred_map[pname] = "pos";
  }
  for (const auto& iname : source.instruction_names()) {
    auto [base, args] = opname_split(iname);
    if (base == "stay") s.instr_map[iname] = args.empty() ? "id" : "id_pos";
    else if (base == "push") s.instr_map[iname] = "inc";
    else if (base == "pop") s.instr_map[iname] = "dec";
    // popstar: |pop*(w)| depends on the full stack, not its height
  }
  return s;
}

Strategy approx_cf(const Storage& source) {
  if (source.kind() != "tree-stack")
    fail("strategy 'cf' needs a tree-stack storage, got '" + source.kind() + "'");
  Strategy s;
  s.name = "cf";
  s.total = true;
  s.injective = false;
  s.source = source;
  s.target = Storage::pushdown_ndpush(source.gamma());
  s.map = [](const Config& c) -> std::optional<Config> {
    const TreeStack& ts = c.as_tree();
    Syms out;  // labels from the pointer up to (excluding) the root
    TreePath p = ts.pointer;
    while (!p.empty()) {
      out.push_back(ts.nodes.at(p));
      p.pop_back();
    }
    return Config::word(out);
  };
  for (const auto& pname : source.predicate_names()) {
    auto [base, args] = opname_split(pname);
    if (base == "true") s.pred_map[pname] = "true";
    else if (base == "bottom") s.pred_map[pname] = "bottom";
    else if (base == "equals") s.pred_map[pname] = opname("top", {args[0]});
  }
  for (const auto& iname : source.instruction_names()) {
    auto [base, args] = opname_split(iname);
    if (base == "down") s.instr_map[iname] = "pop";
    else if (base == "up") s.instr_map[iname] = "push";
    else if (base == "push") s.instr_map[iname] = opname("push", {args[1]});
  }
  return s;
}

Strategy approx_merge(const Storage& source, const std::map<std::string, std::string>& g) {
  require_pushdown(source, "merge");
  check_merge_map(source, g, "merge");
  Syms delta = merge_image(source, g);
  Strategy s;
  s.name = "merge:" + map_to_string(g);
  s.total = true;
  s.injective = delta.size() == source.gamma().size();
  s.source = source;
  const std::string& kind = source.kind();
  if (kind == "pushdown") s.target = Storage::pushdown(delta);
  else if (kind == "pushdown-popstar") s.target = Storage::pushdown_popstar(delta);
  else if (kind == "pushdown-ndpush") s.target = Storage::pushdown_ndpush(delta);
  else if (kind == "pushdown-dagger") s.target = Storage::pushdown_dagger(delta);
  else s.target = Storage::pushdown_universe(delta);
  s.map = [g](const Config& c) -> std::optional<Config> {
    Syms out;
    for (const auto& sym : c.as_word()) out.push_back(g.at(sym));
    return Config::word(out);
  };
  for (const auto& pname : source.predicate_names()) {
    auto [base, args] = opname_split(pname);
    s.pred_map[pname] = args.empty() ? pname : opname(base, {g.at(args[0])});
  }
  for (const auto& iname : source.instruction_names()) {
    auto [base, args] = opname_split(iname);
    s.instr_map[iname] = args.empty() ? iname : opname(base, {g.at(args[0])});
  }
  return s;
}

Strategy approx_identity(const Storage& source) {
  Strategy s;
  s.name = "identity";
  s.total = true;
  s.injective = true;
  s.source = source;
  s.target = source;
  s.map = [](const Config& c) -> std::optional<Config> { return c; };
  for (const auto& p : source.predicate_names()) s.pred_map[p] = p;
  for (const auto& i : source.instruction_names()) s.instr_map[i] = i;
  return s;
}

Strategy compose(const Strategy& a, const Strategy& b) {
  if (!(b.source == a.target))
    fail("cannot compose: strategy '" + b.name + "' was not built over the target of '" +
         a.name + "'");
  Strategy s;
  s.name = a.name + ";" + b.name;
  s.total = a.total && b.total;
  s.injective = a.injective && b.injective;
  s.source = a.source;
  s.target = b.target;
  s.map = [am = a.map, bm = b.map](const Config& c) -> std::optional<Config> {
    auto mid = am(c);
    if (!mid) return std::nullopt;
    return bm(*mid);
  };
  for (const auto& [p, p2] : a.pred_map) {
    auto it = b.pred_map.find(p2);
    if (it != b.pred_map.end()) s.pred_map[p] = it->second;
  }
  for (const auto& [i, i2] : a.instr_map) {
    auto it = b.instr_map.find(i2);
    if (it != b.instr_map.end()) s.instr_map[i] = it->second;
  }
  return s;
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(sep, start);
    if (p == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

std::size_t parse_k(const std::string& part, const std::string& descriptor) {
  try {
    std::size_t pos = 0;
    auto k = std::stoul(part, &pos);
    if (pos != part.size()) throw std::invalid_argument(part);
    return k;
  } catch (const std::exception&) {
    fail("bad strategy descriptor '" + descriptor + "': '" + part + "' is not a number");
  }
}

std::map<std::string, std::string> parse_merge_map(const std::string& part,
                                                   const std::string& descriptor) {
  std::map<std::string, std::string> g;
  for (const auto& pair : split_on(part, ',')) {
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      fail("bad strategy descriptor '" + descriptor + "': expected 'sym=sym' but got '" +
           pair + "'");
    g[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  return g;
}

}  // namespace

Strategy strategy_by_name(const std::string& descriptor, const Storage& source) {
  auto parts = split_on(descriptor, ':');
  const std::string& head = parts[0];
  auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1)
      fail("bad strategy descriptor '" + descriptor + "': '" + head + "' takes " +
           std::to_string(n) + " argument(s)");
  };
  if (head == "top") { arity(0); return approx_top(source); }
  if (head == "top-k") { arity(1); return approx_topk(source, parse_k(parts[1], descriptor)); }
  if (head == "uniq") { arity(0); return approx_uniq(source); }
  if (head == "bd-k") { arity(1); return approx_bdk(source, parse_k(parts[1], descriptor)); }
  if (head == "incomp-k") {
    arity(2);
    return approx_incompk(source, parse_k(parts[1], descriptor),
                          parse_merge_map(parts[2], descriptor));
  }
  if (head == "merge") { arity(1); return approx_merge(source, parse_merge_map(parts[1], descriptor)); }
  if (head == "count") { arity(0); return approx_count(source); }
  if (head == "eo") { arity(0); return approx_eo(source); }
  if (head == "cf") { arity(0); return approx_cf(source); }
  if (head == "identity") { arity(0); return approx_identity(source); }
  fail("unknown strategy '" + head + "'");
}

ApproxResult approximate_automaton(const Automaton& m, const Strategy& s) {
  if (!(m.storage == s.source))
    fail("strategy '" + s.name + "' was built for a different storage");
  ApproxResult res;
  Automaton out;
  out.states = m.states;
  out.alphabet = m.alphabet;
  out.storage = s.target;
  out.initial = m.initial;
  out.finals = m.finals;
  out.semiring = m.semiring;
  std::map<std::tuple<int, std::string, std::string, std::string, int>, std::size_t> groups;
  for (const auto& t : m.transitions) {
    auto pit = s.pred_map.find(t.pred);
    if (pit == s.pred_map.end())
      fail("strategy '" + s.name + "' does not support predicate '" + t.pred + "'");
    auto iit = s.instr_map.find(t.instr);
    if (iit == s.instr_map.end())
      fail("strategy '" + s.name + "' does not support instruction '" + t.instr + "'");
    std::tuple key{t.from, t.read, pit->second, iit->second, t.to};
    auto git = groups.find(key);
    if (git == groups.end()) {
      Transition c = t;
      c.id = t.id + "'";
      c.pred = pit->second;
      c.instr = iit->second;
      groups.emplace(std::move(key), out.transitions.size());
      res.transition_map[t.id] = c.id;
      out.transitions.push_back(std::move(c));
    } else {
      Transition& c = out.transitions[git->second];
      if (m.semiring) c.weight = m.semiring->plus(c.weight, t.weight);
      res.transition_map[t.id] = c.id;
    }
  }
  out.reindex();
  res.automaton = std::move(out);
  return res;
}

}  // namespace wsa
