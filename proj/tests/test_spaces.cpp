#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablerank/space.hpp"

using namespace stablerank;
using namespace stablerank::space;

namespace {

SpaceRef random_space(std::mt19937_64& rng, int depth) {
  switch (rng() % (depth <= 0 ? 6 : 9)) {
    case 0: return point();
    case 1: return sphere(rng() % 9);
    case 2: return torus(1 + rng() % 8);
    case 3: return disk(1 + rng() % 5);
    case 4: return cube(1 + rng() % 4);
    case 5: return cw(rng() % 9);
    case 6: return susp(random_space(rng, depth - 1));
    case 7:
      return prod(random_space(rng, depth - 1), random_space(rng, depth - 1));
    default:
      return wedge(random_space(rng, depth - 1), random_space(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("normalization contracts disks and drops point factors") {
  CHECK(equal(normalize_space(disk(7)), point()));
  CHECK(equal(normalize_space(cube(3)), point()));
  CHECK(equal(normalize_space(prod(point(), sphere(3))), sphere(3)));
  CHECK(equal(normalize_space(wedge(point(), torus(2))), torus(2)));
  CHECK(equal(normalize_space(susp(point())), point()));
  CHECK(equal(normalize_space(susp(sphere(4))), sphere(5)));
  CHECK(equal(normalize_space(torus(1)), sphere(1)));
  CHECK(equal(normalize_space(prod(disk(2), sphere(3))), sphere(3)));
}

TEST_CASE("normalization is idempotent and never raises the dimension") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    SpaceRef x = random_space(rng, 3);
    SpaceRef n = normalize_space(x);
    CHECK(equal(normalize_space(n), n));
    CHECK(dim_upper(n) <= dim_upper(x));
    SpaceRef c = canon_space(x);
    CHECK(equal(canon_space(c), c));
    CHECK(dim_upper(c) <= dim_upper(x));
  }
}

TEST_CASE("covering dimension bounds") {
  CHECK(dim_upper(torus(3)) == ExtNat(3));
  CHECK(dim_upper(prod(sphere(2), torus(2))) == ExtNat(4));
  CHECK(dim_upper(wedge(sphere(5), sphere(8))) == ExtNat(8));
  CHECK(dim_upper(susp(torus(4))) == ExtNat(5));
  CHECK(dim_upper(point()) == ExtNat(0));
  CHECK(dim_upper(cw(6)) == ExtNat(6));
}

TEST_CASE("space facts") {
  SpaceFacts pt_facts = space_facts(point());
  CHECK(pt_facts.dim_upper == ExtNat(0));
  CHECK(pt_facts.is_contractible == TriBool::Yes);
  CHECK(space_facts(disk(4)).is_contractible == TriBool::Yes);
  CHECK(space_facts(sphere(2)).is_contractible == TriBool::Unknown);
}

TEST_CASE("sphere formula") {
  CHECK(gsr_commutative_sphere(5) == ExtNat(4));
  CHECK(gsr_commutative_sphere(4) == ExtNat(1));
  CHECK(gsr_commutative_sphere(8) == ExtNat(4));
  for (std::uint64_t d = 0; d <= 4; ++d)
    CHECK(gsr_commutative_sphere(d) == ExtNat(1));
  for (std::uint64_t d = 5; d <= 40; ++d) {
    ExtNat g = gsr_commutative_sphere(d);
    std::uint64_t half = ceil_div(d, 2);
    CHECK((g == ExtNat(half) || g == ExtNat(half + 1)));
  }
}

TEST_CASE("torus formulas") {
  CHECK(gsr_commutative_torus(4) == ExtNat(1));
  CHECK(gsr_commutative_torus(5) == ExtNat(4));
  CHECK(gsr_commutative_torus(9) == ExtNat(6));
  CHECK(csr_commutative_torus(1) == ExtNat(2));
  CHECK(csr_commutative_torus(3) == ExtNat(3));
  CHECK(csr_commutative_torus(6) == ExtNat(4));
  for (std::uint64_t d = 1; d <= 40; ++d)
    CHECK(gsr_commutative_torus(d) <= csr_commutative_torus(d));
}

TEST_CASE("scalar injectivity thresholds") {
  CHECK(inj_space_scalars(sphere(4)) == RankInterval::exact(4));
  CHECK(inj_space_scalars(point()) == RankInterval::exact(1));

  // oracle for the 4-torus: substituting the torus values into
  // gsr(C(T^5)) = max{gsr(C(T^4)), x} forces x = 4
  CHECK(gsr_commutative_torus(5) == ExtNat(4));
  CHECK(gsr_commutative_torus(4) == ExtNat(1));
  CHECK(inj_space_scalars(torus(4)) == RankInterval::exact(4));

  // tori agree with the torus formula one dimension up for every d
  for (std::uint64_t d = 1; d <= 20; ++d)
    CHECK(inj_space_scalars(torus(d)) ==
          RankInterval::exact(gsr_commutative_torus(d + 1)));

  // generic spaces get the threshold interval, wide enough to hold the
  // exact value of every sphere of that dimension
  RankInterval w = inj_space_scalars(wedge(sphere(4), sphere(4)));
  CHECK(w.lo() == ExtNat(1));
  CHECK(w.contains(gsr_commutative_sphere(5)));
  CHECK(inj_space_scalars(cw(4)).contains(ExtNat(4)));
}

TEST_CASE("domination facts") {
  CHECK(dominates(susp(torus(4)), sphere(5)) == TriBool::Yes);
  CHECK(dominates(wedge(sphere(2), sphere(7)), sphere(7)) == TriBool::Yes);
  CHECK(dominates(sphere(2), sphere(3)) == TriBool::Unknown);
  CHECK(dominates(susp(prod(sphere(2), sphere(3))), sphere(6)) ==
        TriBool::Yes);
  CHECK(dominates(disk(3), point()) == TriBool::Yes);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    SpaceRef x = random_space(rng, 3);
    SpaceRef y = random_space(rng, 3);
    CHECK(dominates(x, x) == TriBool::Yes);
    CHECK(dominates(x, y) != TriBool::No);
  }
}
