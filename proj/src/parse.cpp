#include "wsa/parse.hpp"

#include <algorithm>
#include <set>

namespace wsa {

namespace {
constexpr char kSep = '\x1f';  // below every printable char, so joined id
                               // strings compare like id sequences
}

bool RunStream::Worse::operator()(std::size_t a, std::size_t b) const {
  const Node& na = rs->arena_[a];
  const Node& nb = rs->arena_[b];
  if (rs->sr_.lt(na.w, nb.w)) return true;  // b strictly better
  if (rs->sr_.lt(nb.w, na.w)) return false;
  if (na.key != nb.key) return na.key > nb.key;  // smaller id sequence first
  return a > b;  // insertion order settles exact duplicates
}

RunStream::RunStream(const Automaton& m, Word w, const SearchLimits& lim)
    : m_(m),
      w_(std::move(w)),
      sr_(m.semiring ? *m.semiring : Semiring::boolean()),
      lim_(lim),
      maxlen_(lim.run_length_for(w_.size())),
      pq_(Worse{this}) {
  for (int q : m_.initial) {
    arena_.push_back(Node{MachineConfig{q, m_.storage.initial(), 0}, -1, -1,
                          sr_.one(), 0, std::string()});
    pq_.push(arena_.size() - 1);
  }
}

void RunStream::expand(std::size_t idx) {
  // copy: arena_ may reallocate while children are appended
  const MachineConfig mc = arena_[idx].mc;
  const Weight pw = arena_[idx].w;
  const std::size_t depth = arena_[idx].depth;
  const std::string key = arena_[idx].key;

  if (depth >= maxlen_) {
    // runs longer than the cap stay unexplored; only certify exhaustion if
    // nothing was cut off here
    for (int ti : m_.outgoing(mc.state))
      if (!step(m_, mc, m_.transitions[ti], w_).empty()) {
        tripped_ = true;
        break;
      }
    return;
  }

  for (int ti : m_.outgoing(mc.state)) {
    const Transition& t = m_.transitions[ti];
    auto succs = step(m_, mc, t, w_);
    if (succs.empty()) continue;
    const Weight cw = sr_.times(pw, m_.tweight(t));
    auto mono = sr_.leq(cw, pw);
    if (!mono.has_value() || !*mono)
      fail("weights are not monotone along runs: transition '" + t.id +
           "' improves the run it extends, so best-first order would be wrong");
    for (auto& smc : succs) {
      if (!neutral_cycle_ && cw == pw) {
        // same machine configuration as an equal-weight ancestor: a cycle
        // that spins off endlessly many runs of this weight
        for (int a = static_cast<int>(idx); a != -1; a = arena_[a].parent) {
          if (!(arena_[a].w == cw)) break;
          if (arena_[a].mc == smc) {
            neutral_cycle_ = true;
            break;
          }
        }
      }
      arena_.push_back(Node{smc, static_cast<int>(idx), ti, cw, depth + 1,
                            key.empty() ? t.id : key + kSep + t.id});
      pq_.push(arena_.size() - 1);
    }
  }
}

Run RunStream::materialize(std::size_t idx) const {
  std::vector<std::size_t> chain;
  for (int a = static_cast<int>(idx); a != -1; a = arena_[a].parent)
    chain.push_back(static_cast<std::size_t>(a));
  std::reverse(chain.begin(), chain.end());
  Run r;
  r.weight = arena_[idx].w;
  for (std::size_t node : chain) {
    r.trace.push_back(arena_[node].mc);
    if (arena_[node].via >= 0) r.ids.push_back(m_.transitions[arena_[node].via].id);
  }
  return r;
}

std::optional<Run> RunStream::next() {
  while (!pq_.empty()) {
    if (enumerated_ >= lim_.max_enumerated || expansions_ >= lim_.max_expansions) {
      tripped_ = true;
      return std::nullopt;
    }
    const std::size_t idx = pq_.top();
    pq_.pop();
    ++expansions_;
    expand(idx);
    const Node& n = arena_[idx];
    if (n.mc.pos == w_.size() && m_.is_final(n.mc.state)) {
      ++enumerated_;
      return materialize(idx);
    }
  }
  return std::nullopt;
}

bool is_run(const Automaton& m, const std::vector<std::string>& ids) {
  if (ids.empty()) return true;
  std::vector<const Transition*> seq;
  for (const auto& id : ids) {
    int ti = m.transition_index(id);
    if (ti < 0) fail("unknown transition id '" + id + "'");
    seq.push_back(&m.transitions[ti]);
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i]->to != seq[i + 1]->from) return false;

  // start configuration is existentially quantified: try the initial one and
  // every configuration of size ≤ |ids|+1 (instructions change size by at
  // most one, so a viable start for a sequence this short is this small)
  std::set<Config> cur{m.storage.initial()};
  for (auto& c : m.storage.enumerate_configs(ids.size() + 1, 5000)) cur.insert(c);
  for (const Transition* t : seq) {
    std::set<Config> nxt;
    for (const auto& c : cur) {
      if (!m.storage.check_predicate(t->pred, c)) continue;
      for (auto& d : m.storage.apply_instruction(t->instr, c)) nxt.insert(std::move(d));
    }
    if (nxt.empty()) return false;
    cur = std::move(nxt);
  }
  return true;
}

std::vector<std::vector<std::string>> preimage_sequences(
    const Automaton& fine, const std::vector<std::string>& coarse_ids,
    const std::map<std::string, std::string>& transition_map, std::size_t cap) {
  std::map<std::string, std::vector<std::string>> fibers;
  for (const auto& t : fine.transitions) {
    auto it = transition_map.find(t.id);
    if (it != transition_map.end()) fibers[it->second].push_back(t.id);
  }
  std::vector<std::vector<std::string>> out{{}};
  for (const auto& cid : coarse_ids) {
    auto it = fibers.find(cid);
    if (it == fibers.end())
      fail("no fine transitions map onto coarse transition '" + cid + "'");
    if (out.size() * it->second.size() > cap)
      fail("preimage product exceeds " + std::to_string(cap) + " sequences");
    std::vector<std::vector<std::string>> next;
    next.reserve(out.size() * it->second.size());
    for (const auto& prefix : out)
      for (const auto& fid : it->second) {
        auto seq = prefix;
        seq.push_back(fid);
        next.push_back(std::move(seq));
      }
    out = std::move(next);
  }
  return out;
}

namespace {

// Weight of the fine run `ids` on w when it is an accepting run, nullopt
// otherwise. Storage is threaded as a set of configurations: the run stands
// if some configuration sequence supports it.
std::optional<Weight> admit_fine(const Automaton& m, const Semiring& sr,
                                 const std::vector<std::string>& ids, const Word& w) {
  if (ids.empty()) {
    if (!w.empty()) return std::nullopt;
    for (int q : m.initial)
      if (m.is_final(q)) return sr.one();
    return std::nullopt;
  }
  std::vector<const Transition*> seq;
  for (const auto& id : ids) {
    int ti = m.transition_index(id);
    if (ti < 0) return std::nullopt;
    seq.push_back(&m.transitions[ti]);
  }
  if (!m.is_initial(seq.front()->from) || !m.is_final(seq.back()->to))
    return std::nullopt;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i]->to != seq[i + 1]->from) return std::nullopt;

  std::size_t pos = 0;
  std::set<Config> cur{m.storage.initial()};
  Weight wt = sr.one();
  for (const Transition* t : seq) {
    if (!t->read.empty()) {
      if (pos >= w.size() || w[pos] != t->read) return std::nullopt;
      ++pos;
    }
    std::set<Config> nxt;
    for (const auto& c : cur) {
      if (!m.storage.check_predicate(t->pred, c)) continue;
      for (auto& d : m.storage.apply_instruction(t->instr, c)) nxt.insert(std::move(d));
    }
    if (nxt.empty()) return std::nullopt;
    cur = std::move(nxt);
    wt = sr.times(wt, m.tweight(*t));
  }
  if (pos != w.size()) return std::nullopt;
  return wt;
}

}  // namespace

NBestResult coarse_to_fine_nbest(const Automaton& fine, const Strategy& strategy,
                                 const Word& w, std::size_t n,
                                 const NBestOptions& opts) {
  if (!strategy.total)
    fail("coarse-to-fine search needs a total strategy; '" + strategy.name +
         "' is partial, so fine runs could lack a coarse image");
  NBestResult res;
  res.approx = approximate_automaton(fine, strategy);
  const Semiring sr = fine.semiring ? *fine.semiring : Semiring::boolean();

  RunStream stream(res.approx.automaton, w, opts.limits);
  std::map<std::vector<std::string>, Weight> admitted;  // dedup by id sequence
  std::optional<Weight> last_coarse;

  auto nth_weight = [&]() {
    std::vector<Weight> ws;
    ws.reserve(admitted.size());
    for (const auto& kv : admitted) ws.push_back(kv.second);
    std::sort(ws.begin(), ws.end(), [&](Weight a, Weight b) { return sr.lt(b, a); });
    return ws[n - 1];
  };

  while (n > 0) {
    if (admitted.size() >= n) {
      if (opts.stop == NBestOptions::StopRule::FirstFill) break;
      if (last_coarse) {
        // the stream is best-first, so the last coarse weight bounds every
        // remaining coarse run, and a coarse weight bounds its fine preimages
        auto le = sr.leq(*last_coarse, nth_weight());
        if (le.has_value() && *le) break;
      }
    }
    auto coarse = stream.next();
    if (!coarse) break;
    ++res.coarse_runs_consumed;
    last_coarse = coarse->weight;
    for (auto& cand : preimage_sequences(fine, coarse->ids, res.approx.transition_map)) {
      ++res.candidates_checked;
      if (admitted.count(cand)) continue;
      if (auto wt = admit_fine(fine, sr, cand, w)) admitted.emplace(std::move(cand), *wt);
    }
  }

  res.certified = !stream.limit_tripped();
  for (const auto& kv : admitted) res.runs.push_back({kv.first, kv.second});
  std::sort(res.runs.begin(), res.runs.end(),
            [&](const NBestResult::Entry& a, const NBestResult::Entry& b) {
              if (sr.lt(b.weight, a.weight)) return true;
              if (sr.lt(a.weight, b.weight)) return false;
              return a.ids < b.ids;
            });
  if (res.runs.size() > n) res.runs.resize(n);
  return res;
}

}  // namespace wsa
