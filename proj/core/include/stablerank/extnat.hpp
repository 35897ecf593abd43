#pragma once

// Extended naturals, rank enclosures, and three-valued flags. Every other
// component builds on these: ranks live in {1, 2, ...} u {inf}, enclosures
// only ever tighten, and flags only ever move away from "unknown".

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace stablerank {

// A natural number or inf. Dimension bounds use the full range including 0;
// rank values are restricted to >= 1 by RankInterval.
class ExtNat {
public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t n) : v_(n) {}

  static constexpr ExtNat inf() {
    ExtNat e;
    e.v_ = kInfRep;
    return e;
  }

  constexpr bool is_inf() const { return v_ == kInfRep; }
  constexpr bool is_finite() const { return v_ != kInfRep; }

  constexpr std::uint64_t value() const {
    if (is_inf()) throw std::logic_error("ExtNat: value() on inf");
    return v_;
  }

  friend constexpr auto operator<=>(ExtNat a, ExtNat b) = default;

  // Saturating successor: inf + 1 = inf.
  constexpr ExtNat succ() const { return is_inf() ? *this : ExtNat(v_ + 1); }

  // Predecessor clamped to the rank floor: pred(1) = 1, pred(inf) = inf.
  constexpr ExtNat pred_clamped() const {
    if (is_inf() || v_ <= 1) return *this;
    return ExtNat(v_ - 1);
  }

  // Saturating addition, used for dimension bounds of product spaces.
  constexpr ExtNat plus(ExtNat o) const {
    if (is_inf() || o.is_inf()) return inf();
    if (v_ > kInfRep - 1 - o.v_) return inf();
    return ExtNat(v_ + o.v_);
  }

  std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

private:
  static constexpr std::uint64_t kInfRep = ~std::uint64_t{0};
  std::uint64_t v_ = 0;
};

constexpr ExtNat min(ExtNat a, ExtNat b) { return a < b ? a : b; }
constexpr ExtNat max(ExtNat a, ExtNat b) { return a < b ? b : a; }

// ceil(a / b) for b >= 1. b = 0 is a contract violation.
constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("ceil_div: zero divisor");
  return a == 0 ? 0 : 1 + (a - 1) / b;
}

// ceil(a / b) lifted to ExtNat in the numerator: ceil(inf / b) = inf.
constexpr ExtNat ceil_div(ExtNat a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("ceil_div: zero divisor");
  if (a.is_inf()) return ExtNat::inf();
  return ExtNat(ceil_div(a.value(), b));
}

// Sound enclosure [lo, hi] of a rank, 1 <= lo <= hi <= inf. The default
// interval [1, inf] carries no information; lo = hi pins the exact value.
class RankInterval {
public:
  constexpr RankInterval() = default;

  constexpr RankInterval(ExtNat lo, ExtNat hi) : lo_(lo), hi_(hi) {
    if (lo_ < ExtNat(1) || hi_ < lo_)
      throw std::invalid_argument("RankInterval: need 1 <= lo <= hi");
  }

  static constexpr RankInterval unknown() { return RankInterval(); }
  static constexpr RankInterval exact(ExtNat v) { return RankInterval(v, v); }
  static constexpr RankInterval at_most(ExtNat hi) { return RankInterval(1, hi); }
  static constexpr RankInterval at_least(ExtNat lo) {
    return RankInterval(lo, ExtNat::inf());
  }

  constexpr ExtNat lo() const { return lo_; }
  constexpr ExtNat hi() const { return hi_; }
  constexpr bool is_exact() const { return lo_ == hi_; }
  constexpr bool is_unknown() const {
    return lo_ == ExtNat(1) && hi_.is_inf();
  }
  constexpr bool contains(ExtNat v) const { return lo_ <= v && v <= hi_; }

  friend constexpr bool operator==(RankInterval, RankInterval) = default;

  // Componentwise meet. Empty intersection (an inconsistency) yields nullopt;
  // the caller decides how to report it.
  static constexpr std::optional<RankInterval> meet(RankInterval a,
                                                    RankInterval b) {
    ExtNat lo = max(a.lo_, b.lo_);
    ExtNat hi = min(a.hi_, b.hi_);
    if (hi < lo) return std::nullopt;
    return RankInterval(lo, hi);
  }

  // "4" for exact values, "[lo, hi]" otherwise.
  std::string str() const {
    if (is_exact()) return lo_.str();
    return "[" + lo_.str() + ", " + hi_.str() + "]";
  }

private:
  ExtNat lo_{1};
  ExtNat hi_ = ExtNat::inf();
};

enum class TriBool : std::uint8_t { Unknown, Yes, No };

// Refinement may only move Unknown toward Yes/No; a Yes/No never flips.
// A Yes/No clash yields nullopt.
constexpr std::optional<TriBool> refine(TriBool cur, TriBool next) {
  if (next == TriBool::Unknown || cur == next) return cur;
  if (cur == TriBool::Unknown) return next;
  return std::nullopt;
}

constexpr const char* to_string(TriBool t) {
  switch (t) {
    case TriBool::Yes: return "yes";
    case TriBool::No: return "no";
    default: return "unknown";
  }
}

}  // namespace stablerank
