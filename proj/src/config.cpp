#include "wsa/config.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wsa {

TreeStack TreeStack::initial() {
  TreeStack ts;
  ts.nodes[{}] = "@";
  return ts;
}

bool TreeStack::valid() const {
  auto root = nodes.find(TreePath{});
  if (root == nodes.end() || root->second != "@") return false;
  for (const auto& [path, label] : nodes) {
    if (path.empty()) continue;
    if (label == "@") return false;
    TreePath parent(path.begin(), path.end() - 1);
    if (!nodes.count(parent)) return false;
    if (path.back() == 0) return false;  // child indices are 1-based
  }
  return nodes.count(pointer) > 0;
}

Config Config::unit() { return Config(); }

Config Config::nat(std::uint64_t n) {
  Config c;
  c.kind_ = Kind::Nat;
  c.nat_ = n;
  return c;
}

Config Config::word(std::vector<std::string> symbols) {
  Config c;
  c.kind_ = Kind::Word;
  c.word_ = std::move(symbols);
  return c;
}

Config Config::label(std::string name) {
  Config c;
  c.kind_ = Kind::Label;
  c.label_ = std::move(name);
  return c;
}

Config Config::tree(TreeStack ts) {
  if (!ts.valid()) fail("invalid tree-stack configuration");
  Config c;
  c.kind_ = Kind::Tree;
  c.tree_ = std::make_shared<const TreeStack>(std::move(ts));
  return c;
}

Config Config::set_of(std::vector<Config> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Config c;
  c.kind_ = Kind::Set;
  c.set_ = std::move(elems);
  return c;
}

std::uint64_t Config::as_nat() const {
  if (kind_ != Kind::Nat) fail("configuration is not a counter");
  return nat_;
}

const std::vector<std::string>& Config::as_word() const {
  if (kind_ != Kind::Word) fail("configuration is not a word");
  return word_;
}

const std::string& Config::as_label() const {
  if (kind_ != Kind::Label) fail("configuration is not a label");
  return label_;
}

const TreeStack& Config::as_tree() const {
  if (kind_ != Kind::Tree) fail("configuration is not a tree stack");
  return *tree_;
}

const std::vector<Config>& Config::as_set() const {
  if (kind_ != Kind::Set) fail("configuration is not a set");
  return set_;
}

std::size_t Config::size() const {
  switch (kind_) {
    case Kind::Unit:
    case Kind::Label:
      return 1;
    case Kind::Nat:
      return static_cast<std::size_t>(nat_);
    case Kind::Word:
      return word_.size();
    case Kind::Tree:
      return tree_->nodes.size();
    case Kind::Set: {
      std::size_t m = 0;
      for (const auto& e : set_) m = std::max(m, e.size());
      return m;
    }
  }
  return 0;
}

std::string tree_path_str(const TreePath& p) {
  if (p.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

std::string Config::str() const {
  switch (kind_) {
    case Kind::Unit:
      return "()";
    case Kind::Nat:
      return std::to_string(nat_);
    case Kind::Label:
      return label_;
    case Kind::Word: {
      if (word_.empty()) return "ε";
      bool all1 = std::all_of(word_.begin(), word_.end(),
                              [](const std::string& s) { return s.size() == 1; });
      std::string out;
      for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i && !all1) out += "·";
        out += word_[i];
      }
      return out;
    }
    case Kind::Tree: {
      std::string out = "<";
      bool first = true;
      for (const auto& [path, label] : tree_->nodes) {
        if (!first) out += ",";
        first = false;
        out += tree_path_str(path) + ":" + label;
      }
      out += "|" + tree_path_str(tree_->pointer) + ">";
      return out;
    }
    case Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < set_.size(); ++i) {
        if (i) out += ",";
        out += set_[i].str();
      }
      out += "}";
      return out;
    }
  }
  return "?";
}

nlohmann::ordered_json Config::to_json() const {
  using J = nlohmann::ordered_json;
  switch (kind_) {
    case Kind::Unit:
      return nullptr;
    case Kind::Nat:
      return nat_;
    case Kind::Label:
      return label_;
    case Kind::Word:
      return J(word_);
    case Kind::Tree: {
      J nodes = J::array();
      for (const auto& [path, label] : tree_->nodes)
        nodes.push_back(J{{"path", path}, {"label", label}});
      return J{{"nodes", nodes}, {"pointer", tree_->pointer}};
    }
    case Kind::Set: {
      J elems = J::array();
      for (const auto& e : set_) elems.push_back(e.to_json());
      return J{{"set", elems}};
    }
  }
  return nullptr;
}

Config Config::from_json(const nlohmann::json& j) {
  if (j.is_null()) return unit();
  if (j.is_number_unsigned()) return nat(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw ParseError("negative counter configuration");
    return nat(static_cast<std::uint64_t>(v));
  }
  if (j.is_string()) return label(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::string> syms;
    for (const auto& e : j) {
      if (!e.is_string()) throw ParseError("word configuration must be an array of strings");
      syms.push_back(e.get<std::string>());
    }
    return word(std::move(syms));
  }
  if (j.is_object()) {
    if (j.contains("set")) {
      std::vector<Config> elems;
      for (const auto& e : j.at("set")) elems.push_back(from_json(e));
      return set_of(std::move(elems));
    }
    if (j.contains("nodes")) {
      TreeStack ts;
      for (const auto& n : j.at("nodes")) {
        TreePath p = n.at("path").get<TreePath>();
        ts.nodes[p] = n.at("label").get<std::string>();
      }
      if (j.contains("pointer")) ts.pointer = j.at("pointer").get<TreePath>();
      if (!ts.valid()) throw ParseError("invalid tree-stack configuration");
      return tree(std::move(ts));
    }
  }
  throw ParseError("unrecognised configuration value: " + j.dump());
}

std::size_t Config::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
  switch (kind_) {
    case Kind::Unit:
      break;
    case Kind::Nat:
      h = hash_combine(h, std::hash<std::uint64_t>{}(nat_));
      break;
    case Kind::Label:
      h = hash_combine(h, std::hash<std::string>{}(label_));
      break;
    case Kind::Word:
      for (const auto& s : word_) h = hash_combine(h, std::hash<std::string>{}(s));
      h = hash_combine(h, word_.size());
      break;
    case Kind::Tree:
      for (const auto& [path, label] : tree_->nodes) {
        for (auto i : path) h = hash_combine(h, i);
        h = hash_combine(h, std::hash<std::string>{}(label));
      }
      for (auto i : tree_->pointer) h = hash_combine(h, i + 17);
      break;
    case Kind::Set:
      for (const auto& e : set_) h = hash_combine(h, e.hash());
      h = hash_combine(h, set_.size());
      break;
  }
  return h;
}

bool operator==(const Config& a, const Config& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Config::Kind::Unit:
      return true;
    case Config::Kind::Nat:
      return a.nat_ == b.nat_;
    case Config::Kind::Label:
      return a.label_ == b.label_;
    case Config::Kind::Word:
      return a.word_ == b.word_;
    case Config::Kind::Tree:
      return *a.tree_ == *b.tree_;
    case Config::Kind::Set:
      return a.set_ == b.set_;
  }
  return false;
}

bool operator<(const Config& a, const Config& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  switch (a.kind_) {
    case Config::Kind::Unit:
      return false;
    case Config::Kind::Nat:
      return a.nat_ < b.nat_;
    case Config::Kind::Label:
      return a.label_ < b.label_;
    case Config::Kind::Word:
      return a.word_ < b.word_;
    case Config::Kind::Tree:
      return *a.tree_ < *b.tree_;
    case Config::Kind::Set:
      return a.set_ < b.set_;
  }
  return false;
}

}  // namespace wsa
