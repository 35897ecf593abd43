#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "stablerank/extnat.hpp"

using namespace stablerank;

TEST_CASE("extended naturals order and saturate") {
  CHECK(ExtNat(3) < ExtNat(7));
  CHECK(ExtNat(7) < ExtNat::inf());
  CHECK(ExtNat::inf() == ExtNat::inf());
  CHECK(ExtNat(5).succ() == ExtNat(6));
  CHECK(ExtNat::inf().succ() == ExtNat::inf());
  CHECK(ExtNat(1).pred_clamped() == ExtNat(1));
  CHECK(ExtNat(9).pred_clamped() == ExtNat(8));
  CHECK(ExtNat::inf().pred_clamped() == ExtNat::inf());
  CHECK(ExtNat(2).plus(ExtNat(3)) == ExtNat(5));
  CHECK(ExtNat(2).plus(ExtNat::inf()) == ExtNat::inf());
  CHECK(ExtNat::inf().str() == "inf");
}

TEST_CASE("ceil_div matches the least-integer characterization") {
  CHECK(ceil_div(std::uint64_t{9}, 2) == 5);
  CHECK(ceil_div(std::uint64_t{4}, 4) == 1);
  CHECK(ceil_div(std::uint64_t{5}, 2) == 3);
  CHECK_THROWS_AS(ceil_div(std::uint64_t{1}, 0), std::invalid_argument);

  // unique n with (n-1) b < a <= n b
  for (std::uint64_t a = 1; a <= 40; ++a)
    for (std::uint64_t b = 1; b <= 7; ++b) {
      std::uint64_t n = ceil_div(a, b);
      CHECK((n - 1) * b < a);
      CHECK(a <= n * b);
    }
  CHECK(ceil_div(ExtNat::inf(), 3) == ExtNat::inf());
}

TEST_CASE("interval construction enforces the rank convention") {
  CHECK_THROWS_AS(RankInterval(ExtNat(0), ExtNat(4)), std::invalid_argument);
  CHECK_THROWS_AS(RankInterval(ExtNat(5), ExtNat(4)), std::invalid_argument);
  CHECK(RankInterval::unknown().is_unknown());
  CHECK(RankInterval::exact(4).is_exact());
  CHECK(RankInterval::exact(4).str() == "4");
  CHECK(RankInterval(1, ExtNat::inf()).str() == "[1, inf]");
}

TEST_CASE("interval meet examples") {
  auto m = [](RankInterval a, RankInterval b) {
    return RankInterval::meet(a, b);
  };
  CHECK(m(RankInterval::unknown(), RankInterval(2, 5)) == RankInterval(2, 5));
  CHECK(m(RankInterval::exact(4), RankInterval(1, 4)) ==
        RankInterval::exact(4));
  CHECK(m(RankInterval(3, 5), RankInterval(4, ExtNat::inf())) ==
        RankInterval(4, 5));
  CHECK(!m(RankInterval(1, 2), RankInterval(4, 5)).has_value());
}

TEST_CASE("interval meet is idempotent, commutative, associative") {
  std::vector<RankInterval> sample;
  std::vector<ExtNat> pts{1, 2, 3, 5, ExtNat::inf()};
  for (ExtNat lo : pts)
    for (ExtNat hi : pts)
      if (lo <= hi) sample.emplace_back(lo, hi);

  for (const auto& a : sample) {
    CHECK(RankInterval::meet(a, a) == a);
    for (const auto& b : sample) {
      auto ab = RankInterval::meet(a, b);
      auto ba = RankInterval::meet(b, a);
      CHECK(ab == ba);
      for (const auto& c : sample) {
        auto left = ab ? RankInterval::meet(*ab, c) : std::nullopt;
        auto bc = RankInterval::meet(b, c);
        auto right = bc ? RankInterval::meet(a, *bc) : std::nullopt;
        // associativity on compatible inputs; an empty meet anywhere makes
        // both sides empty
        if (ab && bc) CHECK(left == right);
      }
    }
  }
}

TEST_CASE("tri-valued refinement never flips and never oscillates") {
  CHECK(refine(TriBool::Unknown, TriBool::Yes) == TriBool::Yes);
  CHECK(refine(TriBool::Unknown, TriBool::No) == TriBool::No);
  CHECK(refine(TriBool::Yes, TriBool::Yes) == TriBool::Yes);
  CHECK(refine(TriBool::Yes, TriBool::Unknown) == TriBool::Yes);
  CHECK(!refine(TriBool::Yes, TriBool::No).has_value());
  CHECK(!refine(TriBool::No, TriBool::Yes).has_value());

  // any refinement sequence stabilizes after the first Yes/No
  for (TriBool start : {TriBool::Unknown, TriBool::Yes, TriBool::No}) {
    TriBool cur = start;
    for (TriBool next : {TriBool::Yes, TriBool::Yes, TriBool::Unknown}) {
      auto r = refine(cur, next);
      if (!r) break;
      CHECK((cur == TriBool::Unknown || *r == cur));
      cur = *r;
    }
  }
}
