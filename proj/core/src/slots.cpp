#include "stablerank/slots.hpp"

#include <algorithm>
#include <stdexcept>

namespace stablerank {

std::string slot_name(const SlotKey& key) {
  return (key.dir == SlotKey::Dir::Inj ? "inj_" : "surj_") +
         std::to_string(key.degree);
}

std::uint64_t bott_stable_bound(std::uint64_t k, std::uint64_t ell) {
  if (ell < 1) throw std::invalid_argument("bott_stable_bound: ell >= 1");
  return ceil_div(k, 2 * ell) + 1;
}

SlotPair slots_finite_dimensional(const std::vector<std::uint64_t>& blocks,
                                  std::uint64_t k) {
  if (blocks.empty())
    throw std::invalid_argument("slots_finite_dimensional: empty block list");
  std::uint64_t d = *std::min_element(blocks.begin(), blocks.end());
  if (d < 1)
    throw std::invalid_argument("slots_finite_dimensional: blocks >= 1");
  ExtNat hi = bott_stable_bound(k, d);
  return {RankInterval::at_most(hi), RankInterval::at_most(hi)};
}

SlotPair slots_class_f(std::uint64_t) {
  return {RankInterval::exact(1), RankInterval(1, 2)};
}

std::vector<std::pair<SlotKey, RankInterval>> slots_from_ranks(
    const RankInterval& csr_self, const RankInterval& gsr_tensor_circle,
    const RankInterval& csr_tensor_circle) {
  std::vector<std::pair<SlotKey, RankInterval>> out;
  out.emplace_back(surj_slot(0), RankInterval::at_most(csr_self.hi()));
  out.emplace_back(inj_slot(0),
                   RankInterval::at_most(gsr_tensor_circle.hi()));
  out.emplace_back(inj_slot(0), RankInterval::at_most(csr_tensor_circle.hi()));
  out.emplace_back(surj_slot(1),
                   RankInterval::at_most(csr_tensor_circle.hi()));
  return out;
}

RankInterval slots_sphere_tensor(const SlotTable& a_slots, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("slots_sphere_tensor: n >= 1");
  ExtNat hi = a_slots.get(surj_slot(1)).hi();
  hi = max(hi, a_slots.get(surj_slot(n)).hi());
  hi = max(hi, a_slots.get(inj_slot(n - 1)).hi());
  return RankInterval::at_most(hi);
}

}  // namespace stablerank
