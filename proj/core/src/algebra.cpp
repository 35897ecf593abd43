#include "stablerank/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "stablerank/slots.hpp"

namespace stablerank {

namespace {

AlgRef make(AlgKind k) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = k;
  return e;
}

}  // namespace

namespace alg {

AlgRef scalars() {
  static const AlgRef c = make(AlgKind::Scalars);
  return c;
}

AlgRef finite_dim(std::vector<std::uint64_t> blocks) {
  if (blocks.empty())
    throw std::invalid_argument("finite_dim: need at least one block");
  for (auto b : blocks)
    if (b < 1) throw std::invalid_argument("finite_dim: blocks >= 1");
  auto e = make(AlgKind::FiniteDim);
  const_cast<AlgebraExpr&>(*e).blocks = std::move(blocks);
  return e;
}

AlgRef matrix(std::uint64_t n, AlgRef a) {
  if (n < 1) throw std::invalid_argument("matrix: n >= 1");
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::MatrixOver;
  e->n = n;
  e->kids = {std::move(a)};
  return e;
}

AlgRef direct_sum(AlgRef a, AlgRef b) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::DirectSum;
  e->kids = {std::move(a), std::move(b)};
  return e;
}

AlgRef tensor(SpaceRef x, AlgRef a) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::CommTensor;
  e->space = std::move(x);
  e->kids = {std::move(a)};
  return e;
}

AlgRef pullback(AlgRef b, AlgRef c, AlgRef d) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::Pullback;
  e->kids = {std::move(b), std::move(c), std::move(d)};
  return e;
}

AlgRef extension(AlgRef j, AlgRef b) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::Extension;
  e->kids = {std::move(j), std::move(b)};
  return e;
}

AlgRef limit(std::vector<AlgRef> entries) {
  if (entries.empty()) throw std::invalid_argument("limit: empty system");
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::Limit;
  e->kids = std::move(entries);
  return e;
}

AlgRef nccw(NccwComplex complex) {
  complex.validate();
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::Nccw;
  e->nccw = std::move(complex);
  return e;
}

AlgRef jiang_su(AlgRef a) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::JiangSu;
  e->kids = {std::move(a)};
  return e;
}

AlgRef real_rank_zero(AlgRef a) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::RealRankZero;
  e->kids = {std::move(a)};
  return e;
}

AlgRef rotation() {
  static const AlgRef r = make(AlgKind::Rotation);
  return r;
}

AlgRef cuntz(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("cuntz: n >= 2");
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = AlgKind::Cuntz;
  e->n = n;
  return e;
}

AlgRef cuntz_inf() {
  static const AlgRef o = make(AlgKind::CuntzInf);
  return o;
}

AlgRef kirchberg_ibn() {
  static const AlgRef k = make(AlgKind::KirchbergIbn);
  return k;
}

AlgRef simple_af() {
  static const AlgRef a = make(AlgKind::SimpleAf);
  return a;
}

AlgRef pis_corner() {
  static const AlgRef p = make(AlgKind::PisCorner);
  return p;
}

}  // namespace alg

int compare(const AlgRef& x, const AlgRef& y) {
  if (x.get() == y.get()) return 0;
  if (!x || !y) return x ? 1 : -1;
  if (x->kind != y->kind)
    return static_cast<int>(x->kind) < static_cast<int>(y->kind) ? -1 : 1;
  if (x->n != y->n) return x->n < y->n ? -1 : 1;
  if (x->blocks != y->blocks) return x->blocks < y->blocks ? -1 : 1;
  if (int c = compare(x->space, y->space)) return c;
  if (x->kids.size() != y->kids.size())
    return x->kids.size() < y->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < x->kids.size(); ++i)
    if (int c = compare(x->kids[i], y->kids[i])) return c;
  if (x->nccw.has_value() != y->nccw.has_value())
    return x->nccw.has_value() ? 1 : -1;
  if (x->nccw) {
    if (x->nccw->base_blocks != y->nccw->base_blocks)
      return x->nccw->base_blocks < y->nccw->base_blocks ? -1 : 1;
    auto& xs = x->nccw->stages;
    auto& ys = y->nccw->stages;
    if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].k != ys[i].k) return xs[i].k < ys[i].k ? -1 : 1;
      if (xs[i].blocks != ys[i].blocks)
        return xs[i].blocks < ys[i].blocks ? -1 : 1;
    }
  }
  return 0;
}

bool equal(const AlgRef& x, const AlgRef& y) { return compare(x, y) == 0; }

namespace {

void flatten_sum(const AlgRef& x, std::vector<AlgRef>& out) {
  if (x->kind == AlgKind::DirectSum) {
    for (const auto& k : x->kids) flatten_sum(k, out);
  } else {
    out.push_back(x);
  }
}

AlgRef fold_sum(std::vector<AlgRef> parts) {
  // merge finite-dimensional summands into a single block list
  std::vector<std::uint64_t> merged;
  std::vector<AlgRef> rest;
  for (auto& p : parts) {
    if (p->kind == AlgKind::FiniteDim)
      merged.insert(merged.end(), p->blocks.begin(), p->blocks.end());
    else
      rest.push_back(std::move(p));
  }
  if (!merged.empty()) {
    std::sort(merged.begin(), merged.end());
    rest.push_back(alg::finite_dim(std::move(merged)));
  }
  std::sort(rest.begin(), rest.end(), [](const AlgRef& l, const AlgRef& r) {
    return compare(l, r) < 0;
  });
  AlgRef acc = rest.front();
  for (std::size_t i = 1; i < rest.size(); ++i)
    acc = alg::direct_sum(acc, rest[i]);
  return acc;
}

}  // namespace

AlgRef canon(const AlgRef& x) {
  switch (x->kind) {
    case AlgKind::Scalars:
    case AlgKind::Rotation:
    case AlgKind::Cuntz:
    case AlgKind::CuntzInf:
    case AlgKind::KirchbergIbn:
    case AlgKind::SimpleAf:
    case AlgKind::PisCorner:
      return x;

    case AlgKind::FiniteDim: {
      auto blocks = x->blocks;
      std::sort(blocks.begin(), blocks.end());
      return blocks == x->blocks ? x : alg::finite_dim(std::move(blocks));
    }

    case AlgKind::MatrixOver: {
      AlgRef a = canon(x->kids[0]);
      std::uint64_t n = x->n;
      if (a->kind == AlgKind::MatrixOver) {
        n *= a->n;
        a = a->kids[0];
      }
      if (n == 1) return a;
      if (a->kind == AlgKind::Scalars) return alg::finite_dim({n});
      if (a->kind == AlgKind::FiniteDim) {
        auto blocks = a->blocks;
        for (auto& b : blocks) b *= n;
        return alg::finite_dim(std::move(blocks));
      }
      if (a->kind == AlgKind::DirectSum)
        return canon(alg::direct_sum(alg::matrix(n, a->kids[0]),
                                     alg::matrix(n, a->kids[1])));
      return alg::matrix(n, a);
    }

    case AlgKind::DirectSum: {
      std::vector<AlgRef> parts;
      flatten_sum(x, parts);
      for (auto& p : parts) p = canon(p);
      std::vector<AlgRef> flat;
      for (const auto& p : parts) flatten_sum(p, flat);
      return fold_sum(std::move(flat));
    }

    case AlgKind::CommTensor: {
      SpaceRef s = canon_space(x->space);
      AlgRef a = canon(x->kids[0]);
      if (a->kind == AlgKind::CommTensor) {
        s = canon_space(space::prod(s, a->space));
        a = a->kids[0];
      }
      if (a->kind == AlgKind::DirectSum)
        return canon(alg::direct_sum(alg::tensor(s, a->kids[0]),
                                     alg::tensor(s, a->kids[1])));
      if (s->kind == SpaceKind::Point) return a;
      return alg::tensor(s, a);
    }

    case AlgKind::Pullback: {
      AlgRef b = canon(x->kids[0]);
      AlgRef c = canon(x->kids[1]);
      AlgRef d = canon(x->kids[2]);
      if (compare(c, b) < 0) std::swap(b, c);  // the two legs are symmetric
      return alg::pullback(b, c, d);
    }

    case AlgKind::Extension:
      return alg::extension(canon(x->kids[0]), canon(x->kids[1]));

    case AlgKind::Limit: {
      std::vector<AlgRef> entries;
      entries.reserve(x->kids.size());
      for (const auto& k : x->kids) entries.push_back(canon(k));
      std::sort(entries.begin(), entries.end(),
                [](const AlgRef& l, const AlgRef& r) {
                  return compare(l, r) < 0;
                });
      entries.erase(std::unique(entries.begin(), entries.end(),
                                [](const AlgRef& l, const AlgRef& r) {
                                  return equal(l, r);
                                }),
                    entries.end());
      // even a single-entry system denotes an anonymous limit algebra, so
      // the node never collapses onto its entry
      return alg::limit(std::move(entries));
    }

    case AlgKind::Nccw: {
      NccwComplex c = *x->nccw;
      std::sort(c.base_blocks.begin(), c.base_blocks.end());
      for (auto& s : c.stages) std::sort(s.blocks.begin(), s.blocks.end());
      return alg::nccw(std::move(c));
    }

    case AlgKind::JiangSu:
      return alg::jiang_su(canon(x->kids[0]));
    case AlgKind::RealRankZero:
      return alg::real_rank_zero(canon(x->kids[0]));
  }
  return x;
}

AlgRef lower_to_pullback(const NccwComplex& complex) {
  complex.validate();
  AlgRef acc = alg::finite_dim(complex.base_blocks);
  for (const auto& stage : complex.stages) {
    AlgRef f = alg::finite_dim(stage.blocks);
    AlgRef disk_leg = alg::tensor(space::disk(stage.k), f);
    AlgRef sphere_leg = alg::tensor(space::sphere(stage.k - 1), f);
    acc = alg::pullback(acc, disk_leg, sphere_leg);
  }
  return acc;
}

ExtNat csr_upper_nccw(const NccwComplex& complex) {
  complex.validate();
  ExtNat best = 1;
  for (const auto& stage : complex.stages) {
    std::uint64_t d =
        *std::min_element(stage.blocks.begin(), stage.blocks.end());
    best = max(best, ExtNat(bott_stable_bound(stage.k, d)));
  }
  return best;
}

std::size_t count_nodes(const AlgRef& x) {
  std::size_t n = 1;
  for (const auto& k : x->kids) n += count_nodes(k);
  return n;
}

}  // namespace stablerank
