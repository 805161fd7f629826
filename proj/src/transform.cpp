#include "wsa/transform.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "wsa/storage.hpp"

namespace wsa {

Automaton predicate_free(const Automaton& m) {
  if (m.storage.kind() == "predfree") return m;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& t : m.transitions) pairs.emplace_back(t.pred, t.instr);
  Automaton out = m;
  out.storage = predicate_free_storage(m.storage, std::move(pairs));
  for (auto& t : out.transitions) {
    t.instr = t.instr + "|" + t.pred;
    t.pred = "true";
  }
  out.reindex();
  return out;
}

Automaton determinize_powerset(const Automaton& m) {
  Automaton out = predicate_free(m);
  out.storage = powerset_storage(out.storage);
  out.reindex();
  return out;
}

Automaton determinize_bounded(const Automaton& m, std::optional<std::size_t> bound) {
  std::optional<std::size_t> k = bound ? bound : m.storage.declared_branching();
  if (!k)
    fail("storage '" + m.storage.kind() +
         "' has no declared branching bound; pass one explicitly");
  if (*k == 0) fail("branching bound must be positive");
  Automaton out = m;
  out.storage = split_storage(m.storage, *k);
  out.transitions.clear();
  for (const auto& t : m.transitions) {
    for (std::size_t i = 1; i <= *k; ++i) {
      Transition s = t;
      s.id = t.id + "[" + std::to_string(i) + "]";
      s.instr = t.instr + "[" + std::to_string(i) + "]";
      out.transitions.push_back(std::move(s));
    }
  }
  out.reindex();
  return out;
}

Automaton to_fsa(const Automaton& m, std::size_t max_nodes) {
  // Reachability closure over (state, storage configuration) pairs.
  using Node = std::pair<int, Config>;
  std::vector<Node> nodes;
  std::map<Node, std::size_t> index;
  std::deque<std::size_t> queue;
  auto intern = [&](Node n) {
    auto it = index.find(n);
    if (it != index.end()) return it->second;
    if (nodes.size() >= max_nodes)
      fail("configuration space not finite within cap (" + std::to_string(max_nodes) +
           " nodes)");
    std::size_t id = nodes.size();
    index.emplace(n, id);
    nodes.push_back(std::move(n));
    queue.push_back(id);
    return id;
  };
  for (int q : m.initial) intern({q, m.storage.initial()});

  struct Edge {
    std::size_t from, to;
    std::size_t transition;  // index into m.transitions
    std::size_t branch, branches;
  };
  std::vector<Edge> edges;
  while (!queue.empty()) {
    std::size_t n = queue.front();
    queue.pop_front();
    auto [q, c] = nodes[n];
    for (int ti : m.outgoing(q)) {
      const Transition& t = m.transitions[ti];
      if (!m.storage.check_predicate(t.pred, c)) continue;
      auto succs = m.storage.apply_instruction(t.instr, c);
      for (std::size_t j = 0; j < succs.size(); ++j) {
        std::size_t target = intern({t.to, succs[j]});
        edges.push_back({n, target, static_cast<std::size_t>(ti), j + 1, succs.size()});
      }
    }
  }

  Automaton out;
  out.alphabet = m.alphabet;
  out.semiring = m.semiring;
  out.storage = Storage::none();
  std::set<std::string> used;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string name = m.states[nodes[i].first] + "|" + nodes[i].second.str();
    if (!used.insert(name).second) {  // str() collisions get an index suffix
      name += "#" + std::to_string(i);
      used.insert(name);
    }
    out.add_state(name);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [q, c] = nodes[i];
    if (m.is_initial(q) && c == m.storage.initial()) out.initial.push_back(static_cast<int>(i));
    if (m.is_final(q)) out.finals.push_back(static_cast<int>(i));
  }
  for (const auto& e : edges) {
    const Transition& t = m.transitions[e.transition];
    Transition f;
    f.id = t.id + "@" + std::to_string(e.from);
    if (e.branches > 1) f.id += "." + std::to_string(e.branch);
    f.from = static_cast<int>(e.from);
    f.to = static_cast<int>(e.to);
    f.read = t.read;
    f.pred = "true";
    f.instr = "id";
    f.weight = t.weight;
    out.transitions.push_back(std::move(f));
  }
  out.reindex();
  return out;
}

}  // namespace wsa
