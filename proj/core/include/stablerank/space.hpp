#pragma once

// Pointed compact space expressions: spheres, tori, disks, cubes, products,
// wedges, suspensions, and otherwise-unknown skeleta of bounded covering
// dimension. Provides the homotopy normal form, covering-dimension bounds,
// domination facts, and the closed-form commutative rank formulas.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stablerank/extnat.hpp"

namespace stablerank {

enum class SpaceKind : std::uint8_t {
  Point,
  Sphere,      // S^d, d >= 0
  Torus,       // T^d, d >= 1
  Disk,        // D^d, d >= 1
  Cube,        // I^k, k >= 1
  Product,
  Wedge,
  Suspension,  // reduced suspension
  CwSkeleton,  // unknown compact space of covering dimension <= n
};

struct SpaceExpr;
using SpaceRef = std::shared_ptr<const SpaceExpr>;

struct SpaceExpr {
  SpaceKind kind = SpaceKind::Point;
  std::uint64_t dim = 0;  // parameter of Sphere/Torus/Disk/Cube/CwSkeleton
  SpaceRef a;             // Product/Wedge left child, Suspension child
  SpaceRef b;             // Product/Wedge right child
};

namespace space {
SpaceRef point();
SpaceRef sphere(std::uint64_t d);
SpaceRef torus(std::uint64_t d);
SpaceRef disk(std::uint64_t d);
SpaceRef cube(std::uint64_t k);
SpaceRef prod(SpaceRef x, SpaceRef y);
SpaceRef wedge(SpaceRef x, SpaceRef y);
SpaceRef susp(SpaceRef x);
SpaceRef cw(std::uint64_t n);
}  // namespace space

// Deterministic structural total order; 0 iff structurally equal.
int compare(const SpaceRef& x, const SpaceRef& y);
bool equal(const SpaceRef& x, const SpaceRef& y);

std::string format_space(const SpaceRef& x);

// Canonical form under homeomorphism-level rewrites only: products and
// wedges are flattened, sorted, and left-associated; point factors and
// wedge summands are dropped; T(1) becomes S(1); susp(S(d)) becomes S(d+1);
// susp(pt) becomes pt. Safe for every quantity, including tsr.
SpaceRef canon_space(const SpaceRef& x);

// Homotopy normal form: canon_space plus contractions D(d) -> pt and
// I(k) -> pt. Only homotopy-invariant quantities may be transported along
// this map. Idempotent and dimension-non-increasing.
SpaceRef normalize_space(const SpaceRef& x);

// Sound upper bound on covering dimension: products add, wedges take max,
// suspension adds one.
ExtNat dim_upper(const SpaceRef& x);

struct SpaceFacts {
  ExtNat dim_upper;
  TriBool is_contractible = TriBool::Unknown;
};

SpaceFacts space_facts(const SpaceRef& x);

// gsr(C(S^d)): 1 for d <= 4; ceil(d/2) for d > 4 divisible by 4;
// ceil(d/2) + 1 otherwise.
ExtNat gsr_commutative_sphere(std::uint64_t d);

// gsr(C(T^d)): 1 for d <= 4, ceil(d/2) + 1 for d > 4.
ExtNat gsr_commutative_torus(std::uint64_t d);

// csr(C(T^d)) = ceil(d/2) + 1, exact for all d >= 1.
ExtNat csr_commutative_torus(std::uint64_t d);

// inj_X(C), the least n such that [X, GL_{m-1}(C)]* -> [X, GL_m(C)]* is
// injective for all m >= n. Exact for points, spheres, and tori; otherwise
// the sound enclosure [1, ceil((dim X + 1)/2) + 1] from the stability
// threshold of the unitary groups.
RankInterval inj_space_scalars(const SpaceRef& x);

// Homotopy domination: Yes when a known fact applies (equal normal forms, a
// wedge dominating a summand, or a suspended product of spheres/tori
// dominating the sphere of total dimension + 1). Never answers No.
TriBool dominates(const SpaceRef& x, const SpaceRef& y);

}  // namespace stablerank
