#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsa/common.hpp"

namespace wsa {

// Child index path into a tree; indices are 1-based, the root is the empty
// path.
using TreePath = std::vector<std::uint32_t>;

// A tree over node labels together with a pointer to one of its nodes.
// Invariants: the node map is prefix-closed, the root (empty path) is present
// and carries the reserved label "@", and the pointer addresses an existing
// node.
struct TreeStack {
  std::map<TreePath, std::string> nodes;
  TreePath pointer;

  static TreeStack initial();
  bool valid() const;

  friend bool operator==(const TreeStack&, const TreeStack&) = default;
  friend bool operator<(const TreeStack& a, const TreeStack& b) {
    if (a.nodes != b.nodes) return a.nodes < b.nodes;
    return a.pointer < b.pointer;
  }
};

// A single storage configuration. One value type covers every storage kind:
// counters, pushdown words (index 0 = topmost symbol), opaque labels of
// finite storages, tree stacks, and finite sets of configurations (powerset
// storages). Total structural order and hashing make enumeration orders
// canonical everywhere.
class Config {
 public:
  enum class Kind { Unit, Nat, Word, Label, Tree, Set };

  Config() : kind_(Kind::Unit) {}

  static Config unit();
  static Config nat(std::uint64_t n);
  static Config word(std::vector<std::string> symbols);
  static Config label(std::string name);
  static Config tree(TreeStack ts);
  static Config set_of(std::vector<Config> elems);  // sorted + deduplicated

  Kind kind() const { return kind_; }
  std::uint64_t as_nat() const;
  const std::vector<std::string>& as_word() const;
  const std::string& as_label() const;
  const TreeStack& as_tree() const;
  const std::vector<Config>& as_set() const;

  // Size metric used by search budgets: counter value, word length, tree node
  // count, max over set elements; 1 for unit/label.
  std::size_t size() const;

  std::string str() const;  // compact display form, injective per kind
  nlohmann::ordered_json to_json() const;
  static Config from_json(const nlohmann::json& j);

  std::size_t hash() const;

  friend bool operator==(const Config& a, const Config& b);
  friend bool operator!=(const Config& a, const Config& b) { return !(a == b); }
  friend bool operator<(const Config& a, const Config& b);

 private:
  Kind kind_;
  std::uint64_t nat_ = 0;
  std::vector<std::string> word_;
  std::string label_;
  std::shared_ptr<const TreeStack> tree_;
  std::vector<Config> set_;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const { return c.hash(); }
};

std::string tree_path_str(const TreePath& p);

}  // namespace wsa
