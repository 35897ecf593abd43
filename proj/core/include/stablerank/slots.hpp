#pragma once

// Stability thresholds for the block-inclusion maps GL_{m-1}(A) -> GL_m(A):
// Bott-periodicity bounds for matrix algebras over the scalars, the trivial
// bounds available inside class F, and the inj/surj slot bookkeeping.
//
// inj_k(A)  = least n such that pi_k(GL_{m-1}(A)) -> pi_k(GL_m(A)) is
//             injective for all m >= n; surj_k(A) is the surjective analogue.
// inj_X(A)  = the same for based classes [X, GL_m(A)]*, keyed by a space.
// Absent slots mean [1, inf]. Inclusion from the trivial group GL_0 is
// always injective, so every inj slot has lo = 1.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/extnat.hpp"

namespace stablerank {

struct SlotKey {
  enum class Dir : std::uint8_t { Inj, Surj };
  Dir dir = Dir::Inj;
  std::uint64_t degree = 0;

  friend auto operator<=>(const SlotKey&, const SlotKey&) = default;
};

inline SlotKey inj_slot(std::uint64_t k) { return {SlotKey::Dir::Inj, k}; }
inline SlotKey surj_slot(std::uint64_t k) { return {SlotKey::Dir::Surj, k}; }

std::string slot_name(const SlotKey& key);

struct SlotTable {
  std::map<SlotKey, RankInterval> degrees;
  // inj_X(A) for non-sphere X, keyed by the canonical space text
  std::map<std::string, RankInterval> spaces;

  RankInterval get(const SlotKey& key) const {
    auto it = degrees.find(key);
    return it == degrees.end() ? RankInterval::unknown() : it->second;
  }
  RankInterval get_space(const std::string& key) const {
    auto it = spaces.find(key);
    return it == spaces.end() ? RankInterval::unknown() : it->second;
  }
};

// Least m such that, for blocks of minimal size ell, surjectivity in degree
// k and injectivity in degree k-1 hold for all m' >= m: ceil(k/(2 ell)) + 1.
std::uint64_t bott_stable_bound(std::uint64_t k, std::uint64_t ell);

// Slot enclosures for a finite-dimensional algebra with the given block
// sizes, at threshold degree k: surj_at bounds surj_k, inj_below bounds
// inj_{k-1} (vacuous for k = 0).
struct SlotPair {
  RankInterval inj_below;
  RankInterval surj_at;
};

SlotPair slots_finite_dimensional(const std::vector<std::uint64_t>& blocks,
                                  std::uint64_t k);

// Inside class F the inclusions are weak homotopy equivalences from m = 2
// on: inj = [1, 1] and surj = [1, 2], independent of the degree.
SlotPair slots_class_f(std::uint64_t k);

// Slot tightenings implied by the ranks of D and of T D = C(T) (x) D:
//   surj_0(D) <= csr(D), inj_0(D) <= gsr(T D),
//   max{inj_0(D), surj_1(D)} <= csr(T D).
std::vector<std::pair<SlotKey, RankInterval>> slots_from_ranks(
    const RankInterval& csr_self, const RankInterval& gsr_tensor_circle,
    const RankInterval& csr_tensor_circle);

// Common upper bound for inj_0 and surj_1 of C(S^{n-1}) (x) A in terms of
// the slots of A: max{surj_1(A), surj_n(A), inj_{n-1}(A)}.
RankInterval slots_sphere_tensor(const SlotTable& a_slots, std::uint64_t n);

}  // namespace stablerank
