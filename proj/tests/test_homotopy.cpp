#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablerank/slots.hpp"

using namespace stablerank;

TEST_CASE("Bott stability threshold") {
  CHECK(bott_stable_bound(4, 1) == 3);
  CHECK(bott_stable_bound(1, 1) == 2);
  CHECK(bott_stable_bound(6, 3) == 2);
  CHECK(bott_stable_bound(0, 1) == 1);

  for (std::uint64_t ell = 1; ell <= 6; ++ell) {
    for (std::uint64_t k = 0; k <= 30; ++k) {
      CHECK(bott_stable_bound(k, ell) <= bott_stable_bound(k + 1, ell));
      CHECK(bott_stable_bound(k, ell + 1) <= bott_stable_bound(k, ell));
      CHECK((bott_stable_bound(k, ell) == 1) == (k == 0));
    }
  }
}

TEST_CASE("finite-dimensional slot pairs") {
  SlotPair p = slots_finite_dimensional({1}, 1);
  CHECK(p.surj_at == RankInterval(1, 2));

  p = slots_finite_dimensional({2, 3}, 4);
  CHECK(p.surj_at == RankInterval(1, 2));
  CHECK(p.inj_below == RankInterval(1, 2));

  p = slots_finite_dimensional({1}, 0);
  CHECK(p.surj_at == RankInterval::exact(1));

  CHECK_THROWS_AS(slots_finite_dimensional({}, 1), std::invalid_argument);
}

TEST_CASE("class F slots are degree independent") {
  for (std::uint64_t k : {0, 1, 5, 17}) {
    SlotPair p = slots_class_f(k);
    CHECK(p.inj_below == RankInterval::exact(1));
    CHECK(p.surj_at == RankInterval(1, 2));
  }
}

TEST_CASE("slot bounds from ranks") {
  auto find = [](const std::vector<std::pair<SlotKey, RankInterval>>& v,
                 SlotKey key) {
    RankInterval acc = RankInterval::unknown();
    for (const auto& [k, iv] : v)
      if (k == key) acc = *RankInterval::meet(acc, iv);
    return acc;
  };

  auto out = slots_from_ranks(RankInterval::exact(1), RankInterval::unknown(),
                              RankInterval::unknown());
  CHECK(find(out, surj_slot(0)).hi() == ExtNat(1));

  out = slots_from_ranks(RankInterval::unknown(), RankInterval(1, 3),
                         RankInterval::unknown());
  CHECK(find(out, inj_slot(0)).hi() == ExtNat(3));

  out = slots_from_ranks(RankInterval::unknown(), RankInterval::unknown(),
                         RankInterval(1, 2));
  CHECK(find(out, inj_slot(0)).hi() == ExtNat(2));
  CHECK(find(out, surj_slot(1)).hi() == ExtNat(2));
}

TEST_CASE("sphere tensor slot bound") {
  // the scalars at n = 5: surj_1 <= 2, surj_5 <= 4, inj_4 = 4 exactly
  SlotTable scalars;
  scalars.degrees[surj_slot(1)] = RankInterval(1, 2);
  scalars.degrees[surj_slot(5)] = RankInterval(1, 4);
  scalars.degrees[inj_slot(4)] = RankInterval::exact(4);
  CHECK(slots_sphere_tensor(scalars, 5).hi() == ExtNat(4));

  // inside class F every term is at most 2
  SlotTable class_f;
  class_f.degrees[surj_slot(1)] = RankInterval(1, 2);
  class_f.degrees[surj_slot(5)] = RankInterval(1, 2);
  class_f.degrees[inj_slot(4)] = RankInterval::exact(1);
  CHECK(slots_sphere_tensor(class_f, 5).hi() == ExtNat(2));

  SlotTable ones;
  ones.degrees[surj_slot(1)] = RankInterval::exact(1);
  ones.degrees[surj_slot(3)] = RankInterval::exact(1);
  ones.degrees[inj_slot(2)] = RankInterval::exact(1);
  CHECK(slots_sphere_tensor(ones, 3).hi() == ExtNat(1));

  // absent slots default to [1, inf]
  SlotTable empty;
  CHECK(slots_sphere_tensor(empty, 2).hi() == ExtNat::inf());
}
