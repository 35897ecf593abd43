#include "stablerank/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace stablerank {

namespace {

SpaceRef make(SpaceKind k, std::uint64_t dim, SpaceRef a = nullptr,
              SpaceRef b = nullptr) {
  auto e = std::make_shared<SpaceExpr>();
  e->kind = k;
  e->dim = dim;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

}  // namespace

namespace space {

SpaceRef point() {
  static const SpaceRef pt = make(SpaceKind::Point, 0);
  return pt;
}

SpaceRef sphere(std::uint64_t d) { return make(SpaceKind::Sphere, d); }

SpaceRef torus(std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("torus: dimension must be >= 1");
  return make(SpaceKind::Torus, d);
}

SpaceRef disk(std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("disk: dimension must be >= 1");
  return make(SpaceKind::Disk, d);
}

SpaceRef cube(std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("cube: dimension must be >= 1");
  return make(SpaceKind::Cube, k);
}

SpaceRef prod(SpaceRef x, SpaceRef y) {
  return make(SpaceKind::Product, 0, std::move(x), std::move(y));
}

SpaceRef wedge(SpaceRef x, SpaceRef y) {
  return make(SpaceKind::Wedge, 0, std::move(x), std::move(y));
}

SpaceRef susp(SpaceRef x) {
  return make(SpaceKind::Suspension, 0, std::move(x));
}

SpaceRef cw(std::uint64_t n) { return make(SpaceKind::CwSkeleton, n); }

}  // namespace space

int compare(const SpaceRef& x, const SpaceRef& y) {
  if (x.get() == y.get()) return 0;
  if (!x || !y) return x ? 1 : -1;
  if (x->kind != y->kind)
    return static_cast<int>(x->kind) < static_cast<int>(y->kind) ? -1 : 1;
  if (x->dim != y->dim) return x->dim < y->dim ? -1 : 1;
  if (int c = compare(x->a, y->a)) return c;
  return compare(x->b, y->b);
}

bool equal(const SpaceRef& x, const SpaceRef& y) { return compare(x, y) == 0; }

std::string format_space(const SpaceRef& x) {
  switch (x->kind) {
    case SpaceKind::Point: return "pt";
    case SpaceKind::Sphere: return "S(" + std::to_string(x->dim) + ")";
    case SpaceKind::Torus: return "T(" + std::to_string(x->dim) + ")";
    case SpaceKind::Disk: return "D(" + std::to_string(x->dim) + ")";
    case SpaceKind::Cube: return "I(" + std::to_string(x->dim) + ")";
    case SpaceKind::Product:
      return "prod(" + format_space(x->a) + ", " + format_space(x->b) + ")";
    case SpaceKind::Wedge:
      return "wedge(" + format_space(x->a) + ", " + format_space(x->b) + ")";
    case SpaceKind::Suspension: return "susp(" + format_space(x->a) + ")";
    case SpaceKind::CwSkeleton: return "cw(" + std::to_string(x->dim) + ")";
  }
  return "?";
}

namespace {

bool is_point(const SpaceRef& x) { return x->kind == SpaceKind::Point; }

void flatten(SpaceKind k, const SpaceRef& x, std::vector<SpaceRef>& out) {
  if (x->kind == k) {
    flatten(k, x->a, out);
    flatten(k, x->b, out);
  } else {
    out.push_back(x);
  }
}

// Rebuild a flattened factor list left-associated after sorting and
// dropping point factors/summands. An empty list collapses to the point.
SpaceRef refold(SpaceKind k, std::vector<SpaceRef> parts) {
  std::erase_if(parts, [](const SpaceRef& p) { return is_point(p); });
  if (parts.empty()) return space::point();
  std::sort(parts.begin(), parts.end(),
            [](const SpaceRef& l, const SpaceRef& r) {
              return compare(l, r) < 0;
            });
  SpaceRef acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = make(k, 0, acc, parts[i]);
  return acc;
}

SpaceRef canon_impl(const SpaceRef& x, bool contract) {
  switch (x->kind) {
    case SpaceKind::Point:
    case SpaceKind::Sphere:
    case SpaceKind::CwSkeleton:
      return x;
    case SpaceKind::Torus:
      return x->dim == 1 ? space::sphere(1) : x;
    case SpaceKind::Disk:
    case SpaceKind::Cube:
      return contract ? space::point() : x;
    case SpaceKind::Product:
    case SpaceKind::Wedge: {
      std::vector<SpaceRef> parts;
      flatten(x->kind, x, parts);
      for (auto& p : parts) p = canon_impl(p, contract);
      // canonicalizing children may expose nested products/wedges again
      std::vector<SpaceRef> flat;
      for (const auto& p : parts) flatten(x->kind, p, flat);
      return refold(x->kind, std::move(flat));
    }
    case SpaceKind::Suspension: {
      SpaceRef inner = canon_impl(x->a, contract);
      if (is_point(inner)) return space::point();
      if (inner->kind == SpaceKind::Sphere) return space::sphere(inner->dim + 1);
      return space::susp(inner);
    }
  }
  return x;
}

}  // namespace

SpaceRef canon_space(const SpaceRef& x) { return canon_impl(x, false); }

SpaceRef normalize_space(const SpaceRef& x) { return canon_impl(x, true); }

ExtNat dim_upper(const SpaceRef& x) {
  switch (x->kind) {
    case SpaceKind::Point: return 0;
    case SpaceKind::Sphere:
    case SpaceKind::Torus:
    case SpaceKind::Disk:
    case SpaceKind::Cube:
    case SpaceKind::CwSkeleton:
      return x->dim;
    case SpaceKind::Product: return dim_upper(x->a).plus(dim_upper(x->b));
    case SpaceKind::Wedge: return max(dim_upper(x->a), dim_upper(x->b));
    case SpaceKind::Suspension: return dim_upper(x->a).plus(1);
  }
  return ExtNat::inf();
}

SpaceFacts space_facts(const SpaceRef& x) {
  SpaceFacts f{dim_upper(x), TriBool::Unknown};
  if (is_point(normalize_space(x))) f.is_contractible = TriBool::Yes;
  return f;
}

ExtNat gsr_commutative_sphere(std::uint64_t d) {
  if (d <= 4) return 1;
  std::uint64_t half = ceil_div(d, 2);
  return d % 4 == 0 ? half : half + 1;
}

ExtNat gsr_commutative_torus(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("gsr_commutative_torus: d >= 1");
  if (d <= 4) return 1;
  return ceil_div(d, 2) + 1;
}

ExtNat csr_commutative_torus(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("csr_commutative_torus: d >= 1");
  return ceil_div(d, 2) + 1;
}

RankInterval inj_space_scalars(const SpaceRef& x) {
  SpaceRef n = normalize_space(x);
  switch (n->kind) {
    case SpaceKind::Point:
      return RankInterval::exact(1);
    case SpaceKind::Sphere:
      // based classes over S^d are pi_d; the exact value is the suspended
      // sphere formula
      return RankInterval::exact(gsr_commutative_sphere(n->dim + 1));
    case SpaceKind::Torus:
      // susp(T^d) splits as a wedge of spheres S^2, ..., S^{d+1}, so the
      // exact value coincides with the torus formula one dimension up
      return RankInterval::exact(gsr_commutative_torus(n->dim + 1));
    default: {
      ExtNat k = dim_upper(n);
      if (k.is_inf()) return RankInterval::unknown();
      return RankInterval::at_most(ceil_div(k.value() + 1, 2) + 1);
    }
  }
}

namespace {

// Collects the factors of a product when all of them are spheres or tori;
// returns false otherwise.
bool sphere_torus_factors(const SpaceRef& x, std::vector<SpaceRef>& out) {
  switch (x->kind) {
    case SpaceKind::Sphere:
    case SpaceKind::Torus:
      out.push_back(x);
      return true;
    case SpaceKind::Product:
      return sphere_torus_factors(x->a, out) &&
             sphere_torus_factors(x->b, out);
    default:
      return false;
  }
}

}  // namespace

TriBool dominates(const SpaceRef& x, const SpaceRef& y) {
  SpaceRef nx = normalize_space(x);
  SpaceRef ny = normalize_space(y);
  if (equal(nx, ny)) return TriBool::Yes;

  // pinching all other summands of a wedge onto the base point retracts
  // onto any single summand
  if (nx->kind == SpaceKind::Wedge) {
    std::vector<SpaceRef> parts;
    flatten(SpaceKind::Wedge, nx, parts);
    for (const auto& p : parts)
      if (equal(p, ny)) return TriBool::Yes;
  }

  // a suspended product of spheres/tori splits off the top sphere
  if (nx->kind == SpaceKind::Suspension && ny->kind == SpaceKind::Sphere) {
    std::vector<SpaceRef> factors;
    if (sphere_torus_factors(nx->a, factors)) {
      ExtNat n = dim_upper(nx->a);
      if (n.is_finite() && n.value() + 1 == ny->dim) return TriBool::Yes;
    }
  }

  return TriBool::Unknown;
}

}  // namespace stablerank
