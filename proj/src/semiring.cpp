#include "wsa/semiring.hpp"

#include <algorithm>

namespace wsa {

Semiring Semiring::boolean() {
  Semiring s;
  s.kind_ = SemiringKind::Boolean;
  s.name_ = "boolean";
  return s;
}

Semiring Semiring::tropical() {
  Semiring s;
  s.kind_ = SemiringKind::TropicalMinPlus;
  s.name_ = "tropical";
  return s;
}

Semiring Semiring::counting(std::uint64_t cap) {
  if (cap < 2) fail("counting semiring cap must be at least 2");
  Semiring s;
  s.kind_ = SemiringKind::CountingNat;
  s.cap_ = cap;
  s.name_ = "counting";
  return s;
}

Semiring Semiring::from_name(const std::string& name) {
  if (name == "boolean") return boolean();
  if (name == "tropical" || name == "viterbi") return tropical();
  if (name == "counting") return counting();
  throw ParseError("unknown semiring '" + name + "'");
}

Semiring Semiring::from_json(const nlohmann::json& j) {
  if (j.is_string()) return from_name(j.get<std::string>());
  if (j.is_object() && j.contains("name")) {
    auto name = j.at("name").get<std::string>();
    if (name == "counting" && j.contains("cap"))
      return counting(j.at("cap").get<std::uint64_t>());
    return from_name(name);
  }
  throw ParseError("malformed semiring spec: " + j.dump());
}

Weight Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return {0};
    case SemiringKind::TropicalMinPlus:
      return {kInf};
    case SemiringKind::CountingNat:
      return {0};
  }
  return {0};
}

Weight Semiring::one() const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return {1};
    case SemiringKind::TropicalMinPlus:
      return {0};
    case SemiringKind::CountingNat:
      return {1};
  }
  return {0};
}

Weight Semiring::plus(Weight a, Weight b) const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return {a.v | b.v};
    case SemiringKind::TropicalMinPlus:
      return {std::min(a.v, b.v)};
    case SemiringKind::CountingNat: {
      std::uint64_t r = (a.v > cap_ - b.v) ? cap_ : a.v + b.v;
      return {std::min(r, cap_)};
    }
  }
  return {0};
}

Weight Semiring::times(Weight a, Weight b) const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return {a.v & b.v};
    case SemiringKind::TropicalMinPlus: {
      if (a.v == kInf || b.v == kInf) return {kInf};
      std::uint64_t r = a.v + b.v;
      if (r < a.v || r >= kInf) r = kInf - 1;  // clamp below infinity
      return {r};
    }
    case SemiringKind::CountingNat: {
      if (a.v == 0 || b.v == 0) return {0};
      if (a.v >= cap_ || b.v >= cap_ || a.v > cap_ / b.v) return {cap_};
      return {a.v * b.v};
    }
  }
  return {0};
}

std::optional<bool> Semiring::leq(Weight a, Weight b) const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return a.v <= b.v;
    case SemiringKind::TropicalMinPlus:
      return b.v <= a.v;  // lower cost = greater weight
    case SemiringKind::CountingNat:
      return a.v <= b.v;
  }
  return std::nullopt;
}

bool Semiring::lt(Weight a, Weight b) const {
  auto ab = leq(a, b), ba = leq(b, a);
  return ab.value_or(false) && !ba.value_or(true);
}

bool Semiring::saturated(Weight w) const {
  return kind_ == SemiringKind::CountingNat && w.v >= cap_;
}

std::string Semiring::format(Weight w) const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return w.v ? "true" : "false";
    case SemiringKind::TropicalMinPlus:
      return w.v == kInf ? "inf" : std::to_string(w.v);
    case SemiringKind::CountingNat:
      return std::to_string(w.v) + (saturated(w) ? "(sat)" : "");
  }
  return "?";
}

static std::optional<std::uint64_t> as_uint(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v >= 0) return static_cast<std::uint64_t>(v);
  }
  return std::nullopt;
}

Weight Semiring::weight_from_json(const nlohmann::json& j) const {
  switch (kind_) {
    case SemiringKind::Boolean: {
      if (j.is_boolean()) return {j.get<bool>() ? 1ULL : 0ULL};
      if (auto v = as_uint(j)) {
        if (*v > 1) throw ParseError("boolean weight must be 0 or 1");
        return {*v};
      }
      break;
    }
    case SemiringKind::TropicalMinPlus: {
      if (j.is_string() && (j == "inf" || j == "∞")) return {kInf};
      if (auto v = as_uint(j)) return {*v};
      break;
    }
    case SemiringKind::CountingNat: {
      if (auto v = as_uint(j)) return {std::min(*v, cap_)};
      break;
    }
  }
  throw ParseError("malformed weight for semiring " + name_ + ": " + j.dump());
}

nlohmann::ordered_json Semiring::weight_to_json(Weight w) const {
  switch (kind_) {
    case SemiringKind::Boolean:
      return w.v != 0;
    case SemiringKind::TropicalMinPlus:
      if (w.v == kInf) return "inf";
      return w.v;
    case SemiringKind::CountingNat:
      return w.v;
  }
  return nullptr;
}

nlohmann::ordered_json Semiring::to_json() const {
  if (kind_ == SemiringKind::CountingNat && cap_ != kDefaultCap)
    return nlohmann::ordered_json{{"name", name_}, {"cap", cap_}};
  return name_;
}

Weight sum_finite(const std::vector<Weight>& ws, const Semiring& s) {
  Weight acc = s.zero();
  for (auto w : ws) acc = s.plus(acc, w);
  return acc;
}

Weight product_seq(const std::vector<Weight>& ws, const Semiring& s) {
  Weight acc = s.one();
  for (auto w : ws) acc = s.times(acc, w);
  return acc;
}

}  // namespace wsa
