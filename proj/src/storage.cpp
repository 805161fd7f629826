#include "wsa/storage.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace wsa {

// ---------------------------------------------------------------------------
// Operation names

std::string opname(const std::string& base, const std::vector<std::string>& args) {
  if (args.empty()) return base;
  std::string out = base + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  return out + ")";
}

std::pair<std::string, std::vector<std::string>> opname_split(const std::string& full) {
  auto lp = full.find('(');
  if (lp == std::string::npos) return {full, {}};
  if (full.back() != ')') throw ParseError("malformed operation name '" + full + "'");
  std::string base = full.substr(0, lp);
  std::string inner = full.substr(lp + 1, full.size() - lp - 2);
  std::vector<std::string> args;
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    if (comma == std::string::npos) {
      args.push_back(inner.substr(start));
      break;
    }
    args.push_back(inner.substr(start, comma - start));
    start = comma + 1;
  }
  if (inner.empty()) args.clear();
  return {base, args};
}

static std::string arg_from_json(const nlohmann::json& a) {
  if (a.is_string()) return a.get<std::string>();
  if (a.is_number_integer() || a.is_number_unsigned())
    return std::to_string(a.get<std::int64_t>());
  throw ParseError("operation argument must be a string or integer: " + a.dump());
}

std::string opname_from_json(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("name")) {
    std::string base = j.at("name").get<std::string>();
    std::vector<std::string> args;
    if (j.contains("arg")) args.push_back(arg_from_json(j.at("arg")));
    if (j.contains("args"))
      for (const auto& a : j.at("args")) args.push_back(arg_from_json(a));
    return opname(base, args);
  }
  throw ParseError("malformed operation name: " + j.dump());
}

nlohmann::ordered_json opname_to_json(const std::string& full) {
  auto [base, args] = opname_split(full);
  if (args.empty()) return full;
  auto arg_json = [](const std::string& a) -> nlohmann::ordered_json {
    if (!a.empty() && std::all_of(a.begin(), a.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::stoull(a);
    return a;
  };
  nlohmann::ordered_json out{{"name", base}};
  if (args.size() == 1) {
    out["arg"] = arg_json(args[0]);
  } else {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : args) arr.push_back(arg_json(a));
    out["args"] = arr;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Storage impl

struct Storage::Impl {
  std::string kind;
  nlohmann::ordered_json spec;
  Config initial;
  std::vector<std::string> gamma;
  std::uint32_t max_arity = 0;
  std::map<std::string, Predicate> preds;
  std::map<std::string, Instruction> instrs;
  std::optional<std::size_t> declared_branching;
  // Optional override of the reachability-based enumeration.
  std::function<std::vector<Config>(std::size_t, std::size_t)> enumerate;
};

Storage::Storage() : impl_(nullptr) {}
Storage::Storage(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

Storage Storage::make(Impl&& impl) {
  return Storage(std::make_shared<Impl>(std::move(impl)));
}

Storage Storage::make_public(Impl&& impl) { return make(std::move(impl)); }

static const Storage::Impl& req(const std::shared_ptr<const Storage::Impl>& p) {
  if (!p) fail("storage is empty");
  return *p;
}

const std::string& Storage::kind() const { return req(impl_).kind; }
const nlohmann::ordered_json& Storage::spec() const { return req(impl_).spec; }
const Config& Storage::initial() const { return req(impl_).initial; }
const std::vector<std::string>& Storage::gamma() const { return req(impl_).gamma; }
std::uint32_t Storage::max_arity() const { return req(impl_).max_arity; }
std::optional<std::size_t> Storage::declared_branching() const {
  return req(impl_).declared_branching;
}

bool Storage::has_predicate(const std::string& name) const {
  return impl_ && impl_->preds.count(name);
}
bool Storage::has_instruction(const std::string& name) const {
  return impl_ && impl_->instrs.count(name);
}

std::vector<std::string> Storage::predicate_names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : req(impl_).preds) out.push_back(n);
  return out;
}
std::vector<std::string> Storage::instruction_names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : req(impl_).instrs) out.push_back(n);
  return out;
}

bool Storage::check_predicate(const std::string& name, const Config& c) const {
  auto it = req(impl_).preds.find(name);
  if (it == impl_->preds.end())
    fail("unknown predicate '" + name + "' for storage kind " + impl_->kind);
  return it->second(c);
}

std::vector<Config> Storage::apply_instruction(const std::string& name, const Config& c) const {
  auto it = req(impl_).instrs.find(name);
  if (it == impl_->instrs.end())
    fail("unknown instruction '" + name + "' for storage kind " + impl_->kind);
  auto out = it->second(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Config> Storage::enumerate_configs(std::size_t size_bound,
                                               std::size_t count_cap) const {
  const auto& impl = req(impl_);
  if (impl.enumerate) return impl.enumerate(size_bound, count_cap);
  std::set<Config> seen;
  std::deque<Config> queue;
  if (impl.initial.size() <= size_bound) {
    seen.insert(impl.initial);
    queue.push_back(impl.initial);
  }
  while (!queue.empty() && seen.size() < count_cap) {
    Config c = queue.front();
    queue.pop_front();
    for (const auto& [name, instr] : impl.instrs) {
      for (auto& succ : instr(c)) {
        if (succ.size() > size_bound) continue;
        if (seen.insert(succ).second) {
          queue.push_back(succ);
          if (seen.size() >= count_cap) break;
        }
      }
      if (seen.size() >= count_cap) break;
    }
  }
  return {seen.begin(), seen.end()};
}

bool Storage::is_pushdown_family() const {
  return impl_ && impl_->kind.rfind("pushdown", 0) == 0;
}

bool operator==(const Storage& a, const Storage& b) {
  if (!a.impl_ || !b.impl_) return a.impl_ == b.impl_;
  return a.impl_->spec == b.impl_->spec;
}

// ---------------------------------------------------------------------------
// Symbol validation

static void validate_symbol(const std::string& s, const char* what) {
  if (s.empty()) throw ParseError(std::string(what) + " must not be empty");
  if (s == "@") throw ParseError(std::string(what) + " '@' is reserved");
  for (char c : s) {
    if (std::string("(),|[]{}<>\"\\").find(c) != std::string::npos ||
        std::isspace(static_cast<unsigned char>(c)))
      throw ParseError(std::string(what) + " '" + s + "' contains a reserved character");
  }
}

static std::vector<std::string> canon_gamma(std::vector<std::string> gamma) {
  if (gamma.empty()) throw ParseError("storage alphabet must not be empty");
  for (const auto& g : gamma) validate_symbol(g, "storage symbol");
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  return gamma;
}

// ---------------------------------------------------------------------------
// count

Storage Storage::count() {
  Impl impl;
  impl.kind = "count";
  impl.spec = {{"kind", "count"}};
  impl.initial = Config::nat(0);
  impl.declared_branching = 1;
  impl.preds["nat"] = [](const Config&) { return true; };
  impl.preds["pos"] = [](const Config& c) { return c.as_nat() > 0; };
  impl.preds["zero"] = [](const Config& c) { return c.as_nat() == 0; };
  impl.instrs["inc"] = [](const Config& c) -> std::vector<Config> {
    auto v = c.as_nat();
    if (v == UINT64_MAX) fail("counter overflow");
    return {Config::nat(v + 1)};
  };
  impl.instrs["dec"] = [](const Config& c) -> std::vector<Config> {
    auto v = c.as_nat();
    if (v == 0) return {};
    return {Config::nat(v - 1)};
  };
  impl.instrs["id"] = [](const Config& c) -> std::vector<Config> { return {c}; };
  impl.instrs["id_pos"] = [](const Config& c) -> std::vector<Config> {
    if (c.as_nat() == 0) return {};
    return {c};
  };
  return make(std::move(impl));
}

// ---------------------------------------------------------------------------
// pushdown family (index 0 = topmost symbol)

namespace {

std::vector<std::string> word_pop(const std::vector<std::string>& w) {
  return {w.begin() + 1, w.end()};
}

std::vector<std::string> word_push(const std::string& g, const std::vector<std::string>& w) {
  std::vector<std::string> out;
  out.reserve(w.size() + 1);
  out.push_back(g);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

struct PdOps {
  bool top_preds = false;
  bool stay = false, pop = false, push_g = false, stay_g = false;
  bool ndpush = false, pop_g = false, popstar = false;
};

void register_pd(Storage::Impl& impl, const std::vector<std::string>& gamma, const PdOps& ops) {
  impl.preds["true"] = [](const Config&) { return true; };
  impl.preds["bottom"] = [](const Config& c) { return c.as_word().empty(); };
  if (ops.top_preds) {
    for (const auto& g : gamma) {
      impl.preds[opname("top", {g})] = [g](const Config& c) {
        const auto& w = c.as_word();
        return !w.empty() && w.front() == g;
      };
    }
  }
  if (ops.stay)
    impl.instrs["stay"] = [](const Config& c) -> std::vector<Config> { return {c}; };
  if (ops.pop) {
    impl.instrs["pop"] = [](const Config& c) -> std::vector<Config> {
      const auto& w = c.as_word();
      if (w.empty()) return {};
      return {Config::word(word_pop(w))};
    };
  }
  if (ops.push_g) {
    for (const auto& g : gamma) {
      impl.instrs[opname("push", {g})] = [g](const Config& c) -> std::vector<Config> {
        return {Config::word(word_push(g, c.as_word()))};
      };
    }
  }
  if (ops.stay_g) {
    for (const auto& g : gamma) {
      impl.instrs[opname("stay", {g})] = [g](const Config& c) -> std::vector<Config> {
        const auto& w = c.as_word();
        if (w.empty()) return {};
        return {Config::word(word_push(g, word_pop(w)))};
      };
    }
  }
  if (ops.ndpush) {
    impl.instrs["push"] = [gamma](const Config& c) -> std::vector<Config> {
      std::vector<Config> out;
      for (const auto& g : gamma) out.push_back(Config::word(word_push(g, c.as_word())));
      return out;
    };
  }
  if (ops.pop_g) {
    for (const auto& g : gamma) {
      impl.instrs[opname("pop", {g})] = [g](const Config& c) -> std::vector<Config> {
        const auto& w = c.as_word();
        if (w.empty() || w.front() != g) return {};
        return {Config::word(word_pop(w))};
      };
    }
  }
  if (ops.popstar) {
    impl.instrs["popstar"] = [](const Config& c) -> std::vector<Config> {
      const auto& w = c.as_word();
      std::vector<Config> out;
      for (std::size_t i = 0; i <= w.size(); ++i)
        out.push_back(Config::word({w.begin() + i, w.end()}));
      return out;
    };
  }
}

Storage make_pd(const std::string& kind, std::vector<std::string> gamma, const PdOps& ops,
                std::optional<std::size_t> declared) {
  gamma = canon_gamma(std::move(gamma));
  Storage::Impl impl;
  impl.kind = kind;
  impl.spec = {{"kind", kind}, {"gamma", gamma}};
  impl.initial = Config::word({});
  impl.gamma = gamma;
  impl.declared_branching = declared;
  register_pd(impl, gamma, ops);
  return Storage::make_public(std::move(impl));
}

}  // namespace

Storage Storage::pushdown(std::vector<std::string> gamma) {
  PdOps ops;
  ops.top_preds = ops.stay = ops.pop = ops.push_g = ops.stay_g = true;
  return make_pd("pushdown", std::move(gamma), ops, 1);
}

Storage Storage::pushdown_popstar(std::vector<std::string> gamma) {
  PdOps ops;
  ops.top_preds = ops.stay = ops.pop = ops.push_g = ops.stay_g = ops.popstar = true;
  return make_pd("pushdown-popstar", std::move(gamma), ops, std::nullopt);
}

Storage Storage::pushdown_ndpush(std::vector<std::string> gamma) {
  PdOps ops;
  ops.top_preds = ops.stay = ops.pop = ops.push_g = ops.stay_g = ops.ndpush = true;
  std::size_t k = canon_gamma(gamma).size();
  return make_pd("pushdown-ndpush", std::move(gamma), ops, k);
}

Storage Storage::pushdown_dagger(std::vector<std::string> gamma) {
  PdOps ops;
  ops.stay = ops.push_g = ops.ndpush = ops.pop_g = true;
  std::size_t k = canon_gamma(gamma).size();
  return make_pd("pushdown-dagger", std::move(gamma), ops, k);
}

Storage Storage::pushdown_universe(std::vector<std::string> gamma) {
  PdOps ops;
  ops.top_preds = ops.stay = ops.pop = ops.push_g = ops.stay_g = true;
  ops.ndpush = ops.pop_g = ops.popstar = true;
  return make_pd("pushdown-universe", std::move(gamma), ops, std::nullopt);
}

// ---------------------------------------------------------------------------
// tree-stack

Storage Storage::tree_stack(std::vector<std::string> gamma, std::uint32_t max_arity) {
  gamma = canon_gamma(std::move(gamma));
  if (max_arity < 1) throw ParseError("tree-stack max_arity must be at least 1");
  Impl impl;
  impl.kind = "tree-stack";
  impl.spec = {{"kind", "tree-stack"}, {"gamma", gamma}, {"max_arity", max_arity}};
  impl.initial = Config::tree(TreeStack::initial());
  impl.gamma = gamma;
  impl.max_arity = max_arity;
  impl.declared_branching = 1;
  impl.preds["true"] = [](const Config&) { return true; };
  impl.preds["bottom"] = [](const Config& c) { return c.as_tree().pointer.empty(); };
  for (const auto& g : gamma) {
    impl.preds[opname("equals", {g})] = [g](const Config& c) {
      const auto& t = c.as_tree();
      return t.nodes.at(t.pointer) == g;
    };
  }
  impl.instrs["down"] = [](const Config& c) -> std::vector<Config> {
    TreeStack t = c.as_tree();
    if (t.pointer.empty()) return {};
    t.pointer.pop_back();
    return {Config::tree(std::move(t))};
  };
  for (std::uint32_t n = 1; n <= max_arity; ++n) {
    impl.instrs[opname("up", {std::to_string(n)})] = [n](const Config& c) -> std::vector<Config> {
      TreeStack t = c.as_tree();
      t.pointer.push_back(n);
      if (!t.nodes.count(t.pointer)) return {};
      return {Config::tree(std::move(t))};
    };
    for (const auto& g : gamma) {
      impl.instrs[opname("push", {std::to_string(n), g})] =
          [n, g](const Config& c) -> std::vector<Config> {
        TreeStack t = c.as_tree();
        t.pointer.push_back(n);
        if (t.nodes.count(t.pointer)) return {};
        t.nodes[t.pointer] = g;
        return {Config::tree(std::move(t))};
      };
    }
  }
  return make(std::move(impl));
}

// ---------------------------------------------------------------------------
// none / finite

Storage Storage::none() {
  Impl impl;
  impl.kind = "none";
  impl.spec = {{"kind", "none"}};
  impl.initial = Config::unit();
  impl.declared_branching = 1;
  impl.preds["true"] = [](const Config&) { return true; };
  impl.instrs["id"] = [](const Config& c) -> std::vector<Config> { return {c}; };
  return make(std::move(impl));
}

Storage Storage::finite(
    std::vector<Config> configs, Config initial,
    std::map<std::string, std::vector<Config>> predicates,
    std::map<std::string, std::vector<std::pair<Config, Config>>> instructions) {
  std::sort(configs.begin(), configs.end());
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  if (configs.empty()) throw ParseError("finite storage needs at least one configuration");
  auto known = [&configs](const Config& c) {
    return std::binary_search(configs.begin(), configs.end(), c);
  };
  if (!known(initial)) throw ParseError("finite storage: initial configuration not listed");

  Impl impl;
  impl.kind = "finite";
  impl.initial = initial;

  nlohmann::ordered_json jconfigs = nlohmann::ordered_json::array();
  for (const auto& c : configs) jconfigs.push_back(c.to_json());
  nlohmann::ordered_json jpreds = nlohmann::ordered_json::object();
  nlohmann::ordered_json jinstrs = nlohmann::ordered_json::object();

  impl.preds["true"] = [](const Config&) { return true; };
  std::size_t max_branch = 1;
  for (auto& [name, members] : predicates) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const auto& m : members)
      if (!known(m))
        throw ParseError("finite storage: predicate '" + name + "' mentions unknown configuration");
    auto set = std::make_shared<std::set<Config>>(members.begin(), members.end());
    impl.preds[name] = [set](const Config& c) { return set->count(c) > 0; };
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : members) arr.push_back(m.to_json());
    jpreds[name] = arr;
  }
  for (auto& [name, pairs] : instructions) {
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;
              });
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    auto rel = std::make_shared<std::map<Config, std::vector<Config>>>();
    for (const auto& [from, to] : pairs) {
      if (!known(from) || !known(to))
        throw ParseError("finite storage: instruction '" + name +
                         "' mentions unknown configuration");
      (*rel)[from].push_back(to);
    }
    for (const auto& [_, succs] : *rel) max_branch = std::max(max_branch, succs.size());
    impl.instrs[name] = [rel](const Config& c) -> std::vector<Config> {
      auto it = rel->find(c);
      if (it == rel->end()) return {};
      return it->second;
    };
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [from, to] : pairs)
      arr.push_back(nlohmann::ordered_json::array({from.to_json(), to.to_json()}));
    jinstrs[name] = arr;
  }
  impl.declared_branching = max_branch;
  impl.spec = {{"kind", "finite"},
               {"configurations", jconfigs},
               {"initial", initial.to_json()},
               {"predicates", jpreds},
               {"instructions", jinstrs}};
  auto all = std::make_shared<std::vector<Config>>(std::move(configs));
  impl.enumerate = [all](std::size_t size_bound, std::size_t cap) {
    std::vector<Config> out;
    for (const auto& c : *all) {
      if (c.size() <= size_bound) out.push_back(c);
      if (out.size() >= cap) break;
    }
    return out;
  };
  return make(std::move(impl));
}

// ---------------------------------------------------------------------------
// derived storages

Storage predicate_free_storage(const Storage& base,
                               std::vector<std::pair<std::string, std::string>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Storage::Impl impl;
  impl.kind = "predfree";
  nlohmann::ordered_json jpairs = nlohmann::ordered_json::array();
  for (const auto& [p, r] : pairs) {
    if (!base.has_predicate(p)) fail("unknown predicate '" + p + "' in predicate-free pairs");
    if (!base.has_instruction(r)) fail("unknown instruction '" + r + "' in predicate-free pairs");
    jpairs.push_back(nlohmann::ordered_json::array({p, r}));
  }
  impl.spec = {{"kind", "predfree"}, {"base", base.spec()}, {"pairs", jpairs}};
  impl.initial = base.initial();
  impl.gamma = base.gamma();
  impl.max_arity = base.max_arity();
  impl.declared_branching = base.declared_branching();
  impl.preds["true"] = [](const Config&) { return true; };
  for (const auto& [p, r] : pairs) {
    impl.instrs[r + "|" + p] = [base, p = p, r = r](const Config& c) -> std::vector<Config> {
      if (!base.check_predicate(p, c)) return {};
      return base.apply_instruction(r, c);
    };
  }
  return Storage::make_public(std::move(impl));
}

Storage powerset_storage(const Storage& predfree) {
  if (predfree.kind() != "predfree")
    fail("powerset storage requires a predicate-free base (got kind '" + predfree.kind() + "')");
  Storage::Impl impl;
  impl.kind = "powerset";
  impl.spec = {{"kind", "powerset"}, {"base", predfree.spec()}};
  impl.initial = Config::set_of({predfree.initial()});
  impl.gamma = predfree.gamma();
  impl.declared_branching = 1;
  impl.preds["true"] = [](const Config&) { return true; };
  for (const auto& name : predfree.instruction_names()) {
    impl.instrs[name] = [predfree, name](const Config& c) -> std::vector<Config> {
      std::vector<Config> united;
      for (const auto& d : c.as_set()) {
        auto succ = predfree.apply_instruction(name, d);
        united.insert(united.end(), succ.begin(), succ.end());
      }
      if (united.empty()) return {};
      return {Config::set_of(std::move(united))};
    };
  }
  return Storage::make_public(std::move(impl));
}

Storage split_storage(const Storage& base, std::size_t bound) {
  if (bound < 1) fail("split bound must be at least 1");
  Storage::Impl impl;
  impl.kind = "split";
  impl.spec = {{"kind", "split"}, {"base", base.spec()}, {"bound", bound}};
  impl.initial = base.initial();
  impl.gamma = base.gamma();
  impl.max_arity = base.max_arity();
  impl.declared_branching = 1;
  for (const auto& p : base.predicate_names()) {
    impl.preds[p] = [base, p](const Config& c) { return base.check_predicate(p, c); };
  }
  for (const auto& r : base.instruction_names()) {
    for (std::size_t i = 1; i <= bound; ++i) {
      impl.instrs[r + "[" + std::to_string(i) + "]"] =
          [base, r, i, bound](const Config& c) -> std::vector<Config> {
        auto succ = base.apply_instruction(r, c);
        if (succ.size() > bound)
          fail("instruction '" + r + "' branches " + std::to_string(succ.size()) +
               " ways, exceeding the split bound " + std::to_string(bound));
        if (i > succ.size()) return {};
        return {succ[i - 1]};
      };
    }
  }
  return Storage::make_public(std::move(impl));
}

// ---------------------------------------------------------------------------
// from_spec

Storage Storage::from_spec(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw ParseError("storage spec must be an object with a \"kind\"");
  std::string kind = spec.at("kind").get<std::string>();
  auto get_gamma = [&spec]() {
    if (!spec.contains("gamma"))
      throw ParseError("storage spec is missing \"gamma\"");
    return spec.at("gamma").get<std::vector<std::string>>();
  };
  if (kind == "count") return count();
  if (kind == "none") return none();
  if (kind == "pushdown") return pushdown(get_gamma());
  if (kind == "pushdown-popstar") return pushdown_popstar(get_gamma());
  if (kind == "pushdown-ndpush") return pushdown_ndpush(get_gamma());
  if (kind == "pushdown-dagger") return pushdown_dagger(get_gamma());
  if (kind == "tree-stack") {
    std::uint32_t ma = 8;
    if (spec.contains("max_arity")) ma = spec.at("max_arity").get<std::uint32_t>();
    return tree_stack(get_gamma(), ma);
  }
  if (kind == "finite") {
    std::vector<Config> configs;
    for (const auto& c : spec.at("configurations")) configs.push_back(Config::from_json(c));
    Config initial = Config::from_json(spec.at("initial"));
    std::map<std::string, std::vector<Config>> preds;
    if (spec.contains("predicates")) {
      for (const auto& [name, arr] : spec.at("predicates").items()) {
        std::vector<Config> members;
        for (const auto& c : arr) members.push_back(Config::from_json(c));
        preds[name] = std::move(members);
      }
    }
    std::map<std::string, std::vector<std::pair<Config, Config>>> instrs;
    if (spec.contains("instructions")) {
      for (const auto& [name, arr] : spec.at("instructions").items()) {
        std::vector<std::pair<Config, Config>> pairs;
        for (const auto& pr : arr) {
          if (!pr.is_array() || pr.size() != 2)
            throw ParseError("finite storage instruction pairs must be [from, to] arrays");
          pairs.emplace_back(Config::from_json(pr[0]), Config::from_json(pr[1]));
        }
        instrs[name] = std::move(pairs);
      }
    }
    return finite(std::move(configs), std::move(initial), std::move(preds), std::move(instrs));
  }
  if (kind == "predfree") {
    Storage base = from_spec(spec.at("base"));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& pr : spec.at("pairs")) {
      if (!pr.is_array() || pr.size() != 2)
        throw ParseError("predicate-free pairs must be [predicate, instruction] arrays");
      pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
    return predicate_free_storage(base, std::move(pairs));
  }
  if (kind == "powerset") return powerset_storage(from_spec(spec.at("base")));
  if (kind == "split")
    return split_storage(from_spec(spec.at("base")), spec.at("bound").get<std::size_t>());
  throw ParseError("unknown storage kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// branching bound

BranchingBound branching_bound(const Storage& s, const std::vector<Config>& sample) {
  BranchingBound out;
  out.declared = s.declared_branching();
  for (const auto& c : sample)
    for (const auto& name : s.instruction_names())
      out.observed = std::max(out.observed, s.apply_instruction(name, c).size());
  return out;
}

}  // namespace wsa
