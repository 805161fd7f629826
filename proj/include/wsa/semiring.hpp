#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsa/common.hpp"

namespace wsa {

// Raw carrier value; its meaning depends on the semiring it is paired with
// (truth value, cost, or count).
struct Weight {
  std::uint64_t v = 0;
  friend bool operator==(const Weight&, const Weight&) = default;
};

enum class SemiringKind { Boolean, TropicalMinPlus, CountingNat };

// A commutative, positively ordered semiring. Three carriers are built in:
//   boolean   ({0,1}, or, and)
//   tropical  (ℕ ∪ {∞}, min, +) — costs; greater weight means lower cost
//   counting  (ℕ saturating at a cap, +, ·)
// leq is the natural order (a ≤ b iff a ⊕ c = b for some c); for the built-in
// carriers it is total.
class Semiring {
 public:
  static constexpr std::uint64_t kDefaultCap = 1ULL << 62;
  static constexpr std::uint64_t kInf = UINT64_MAX;  // tropical infinity

  static Semiring boolean();
  static Semiring tropical();
  static Semiring counting(std::uint64_t cap = kDefaultCap);
  // Accepts "boolean", "tropical", "viterbi" (alias of tropical), "counting".
  static Semiring from_name(const std::string& name);
  static Semiring from_json(const nlohmann::json& j);

  SemiringKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::uint64_t cap() const { return cap_; }

  Weight zero() const;
  Weight one() const;
  Weight plus(Weight a, Weight b) const;
  Weight times(Weight a, Weight b) const;
  std::optional<bool> leq(Weight a, Weight b) const;
  bool lt(Weight a, Weight b) const;  // strict: leq(a,b) and not leq(b,a)
  bool saturated(Weight w) const;     // counting cap reached

  std::string format(Weight w) const;
  Weight weight_from_json(const nlohmann::json& j) const;
  nlohmann::ordered_json weight_to_json(Weight w) const;
  nlohmann::ordered_json to_json() const;

  friend bool operator==(const Semiring&, const Semiring&) = default;

 private:
  SemiringKind kind_ = SemiringKind::Boolean;
  std::uint64_t cap_ = 0;
  std::string name_;
};

// Fold of ⊕ over a finite multiset (order irrelevant by commutativity).
Weight sum_finite(const std::vector<Weight>& ws, const Semiring& s);
// Fold of ⊗ left to right over a sequence.
Weight product_seq(const std::vector<Weight>& ws, const Semiring& s);

}  // namespace wsa
