#pragma once

// Compositional descriptions of unital C*-algebras: scalars, finite
// dimensional algebras, matrix amplifications, direct sums, tensors by
// commutative algebras, pullbacks (with the standing hypothesis that at
// least one leg onto the fiber is surjective), extensions, cofinal
// inductive limits, NCCW complexes, and a handful of named atoms.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "stablerank/nccw.hpp"
#include "stablerank/space.hpp"

namespace stablerank {

enum class AlgKind : std::uint8_t {
  Scalars,       // C
  FiniteDim,     // direct sum of matrix blocks M_{l_i}(C)
  MatrixOver,    // M_n(A)
  DirectSum,     // A (+) B
  CommTensor,    // C(X) (x) A
  Pullback,      // B (+)_D C, one leg surjective
  Extension,     // the A in 0 -> J -> A -> B -> 0
  Limit,         // inductive limit; every listed algebra occurs cofinally
  Nccw,
  JiangSu,       // A (x) Z
  RealRankZero,  // A asserted to have real rank zero
  Rotation,      // irrational rotation algebra
  Cuntz,         // O_n, n >= 2
  CuntzInf,      // O_infinity
  KirchbergIbn,  // Kirchberg algebra with the IBN property
  SimpleAf,      // simple infinite dimensional unital AF algebra
  PisCorner,     // corner pAp of a purely infinite simple algebra
};

struct AlgebraExpr;
using AlgRef = std::shared_ptr<const AlgebraExpr>;

struct AlgebraExpr {
  AlgKind kind = AlgKind::Scalars;
  std::vector<std::uint64_t> blocks;  // FiniteDim block sizes
  std::uint64_t n = 0;                // MatrixOver size / Cuntz index
  SpaceRef space;                     // CommTensor factor
  std::vector<AlgRef> kids;           // children, order per kind
  std::optional<NccwComplex> nccw;
};

namespace alg {
AlgRef scalars();
AlgRef finite_dim(std::vector<std::uint64_t> blocks);
AlgRef matrix(std::uint64_t n, AlgRef a);
AlgRef direct_sum(AlgRef a, AlgRef b);
AlgRef tensor(SpaceRef x, AlgRef a);
AlgRef pullback(AlgRef b, AlgRef c, AlgRef d);
AlgRef extension(AlgRef j, AlgRef b);
AlgRef limit(std::vector<AlgRef> entries);
AlgRef nccw(NccwComplex complex);
AlgRef jiang_su(AlgRef a);
AlgRef real_rank_zero(AlgRef a);
AlgRef rotation();
AlgRef cuntz(std::uint64_t n);
AlgRef cuntz_inf();
AlgRef kirchberg_ibn();
AlgRef simple_af();
AlgRef pis_corner();
}  // namespace alg

int compare(const AlgRef& x, const AlgRef& y);
bool equal(const AlgRef& x, const AlgRef& y);

// Canonical form under exact isomorphism-level rewrites: spaces are
// canonicalized, nested commutative tensors merge into a product factor,
// tensors distribute over direct sums, M_n over scalars/finite-dimensional
// algebras folds into a FiniteDim, finite-dimensional summands merge,
// direct sums and limits flatten and sort. Safe for every quantity.
AlgRef canon(const AlgRef& x);

// Expands an NCCW complex into nested pullbacks with disk/sphere tensor
// legs (the restriction leg onto the sphere tensor is the surjective one).
AlgRef lower_to_pullback(const NccwComplex& complex);

std::size_t count_nodes(const AlgRef& x);

}  // namespace stablerank
