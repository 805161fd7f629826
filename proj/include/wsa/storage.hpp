#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wsa/config.hpp"

namespace wsa {

// Parameterised predicate/instruction names have the canonical string form
// "name(arg1,arg2)". The file format also accepts {"name":..,"arg":..} and
// {"name":..,"args":[..]} objects; these helpers convert between the two.
std::string opname(const std::string& base, const std::vector<std::string>& args);
std::pair<std::string, std::vector<std::string>> opname_split(const std::string& full);
std::string opname_from_json(const nlohmann::json& j);
nlohmann::ordered_json opname_to_json(const std::string& full);

// A data storage: a set of configurations with named predicates (subsets) and
// named instructions (finitely branching relations), plus an initial
// configuration. Instances are immutable and cheap to copy.
//
// Built-in kinds and their operations (γ ranges over the alphabet, n over
// child indices up to max_arity):
//   count            preds nat|pos|zero; instrs inc|dec|id|id_pos
//   pushdown         preds true|bottom|top(γ); instrs stay|pop|push(γ)|stay(γ)
//   pushdown-popstar pushdown + popstar (unboundedly branching)
//   pushdown-ndpush  pushdown + push (pushes an arbitrary symbol)
//   pushdown-dagger  preds true|bottom; instrs stay|push|push(γ)|pop(γ)
//   tree-stack       preds true|bottom|equals(γ); instrs down|up(n)|push(n,γ)
//   none             trivial storage: pred true, instr id
//   finite           explicitly listed configurations and relations
// Words are stored top-leftmost: index 0 is the topmost pushdown symbol.
class Storage {
 public:
  using Predicate = std::function<bool(const Config&)>;
  using Instruction = std::function<std::vector<Config>(const Config&)>;

  Storage();

  const std::string& kind() const;
  const nlohmann::ordered_json& spec() const;
  const Config& initial() const;
  const std::vector<std::string>& gamma() const;
  std::uint32_t max_arity() const;

  bool has_predicate(const std::string& name) const;
  bool has_instruction(const std::string& name) const;
  std::vector<std::string> predicate_names() const;
  std::vector<std::string> instruction_names() const;

  bool check_predicate(const std::string& name, const Config& c) const;
  // Successor configurations, sorted and deduplicated; this order is the
  // canonical enumeration bounded determinization splits on.
  std::vector<Config> apply_instruction(const std::string& name, const Config& c) const;

  // Exact upper bound on |r(c)| over all registered instructions, when the
  // kind knows one (nullopt for unboundedly branching storages).
  std::optional<std::size_t> declared_branching() const;

  // Configurations reachable from the initial one under the registered
  // instructions, restricted to size ≤ size_bound, sorted; finite storages
  // list all configurations instead. Truncated at count_cap.
  std::vector<Config> enumerate_configs(std::size_t size_bound,
                                        std::size_t count_cap = 100000) const;

  static Storage count();
  static Storage pushdown(std::vector<std::string> gamma);
  static Storage pushdown_popstar(std::vector<std::string> gamma);
  static Storage pushdown_ndpush(std::vector<std::string> gamma);
  static Storage pushdown_dagger(std::vector<std::string> gamma);
  // Superset of every pushdown-family operation; used as the reference
  // semantics when building approximation targets. Not a file-format kind.
  static Storage pushdown_universe(std::vector<std::string> gamma);
  static Storage tree_stack(std::vector<std::string> gamma, std::uint32_t max_arity = 8);
  static Storage none();
  static Storage finite(
      std::vector<Config> configs, Config initial,
      std::map<std::string, std::vector<Config>> predicates,
      std::map<std::string, std::vector<std::pair<Config, Config>>> instructions);
  static Storage from_spec(const nlohmann::json& spec);

  bool is_pushdown_family() const;

  // Structural equality of the serialised description.
  friend bool operator==(const Storage& a, const Storage& b);

  // Internal: registration record used by factories and the derived-storage
  // builders; defined in storage.cpp only.
  struct Impl;
  static Storage make_public(Impl&& impl);

 private:
  std::shared_ptr<const Impl> impl_;
  explicit Storage(std::shared_ptr<Impl> impl);
  static Storage make(Impl&& impl);
};

// Storage with predicates folded into instructions: for every listed
// (predicate, instruction) pair the result registers "instr|pred", the
// restriction of the instruction to the predicate. Its only predicate is
// "true".
Storage predicate_free_storage(const Storage& base,
                               std::vector<std::pair<std::string, std::string>> pairs);

// Deterministic storage over finite sets of base configurations; each base
// instruction r becomes det(r), mapping a set D to the union of r over D
// (undefined when the union is empty). Base must be predicate-free.
Storage powerset_storage(const Storage& predfree);

// Splits every instruction r into deterministic slices r[1]..r[bound], the
// i-th successor under the canonical enumeration. Applying any slice to a
// configuration where |r(c)| exceeds the bound raises an error.
Storage split_storage(const Storage& base, std::size_t bound);

struct BranchingBound {
  std::size_t observed = 0;             // max |r(c)| over the given sample
  std::optional<std::size_t> declared;  // kind-level exact bound when known
};
BranchingBound branching_bound(const Storage& s, const std::vector<Config>& sample);

}  // namespace wsa
