#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablerank/dsl.hpp"
#include "stablerank/selfcheck.hpp"

using namespace stablerank;

TEST_CASE("parsing structure") {
  auto r = parse("M(2, Cx(S(5)))");
  REQUIRE(r.ok());
  CHECK(r.expr->kind == AlgKind::MatrixOver);
  CHECK(r.expr->n == 2);
  CHECK(r.expr->kids[0]->kind == AlgKind::CommTensor);
  CHECK(r.expr->kids[0]->space->kind == SpaceKind::Sphere);
  CHECK(r.expr->kids[0]->space->dim == 5);
  CHECK(r.expr->kids[0]->kids[0]->kind == AlgKind::Scalars);

  r = parse("F(2,3) (+) C");
  REQUIRE(r.ok());
  CHECK(r.expr->kind == AlgKind::DirectSum);
  CHECK(r.expr->kids[0]->kind == AlgKind::FiniteDim);
  CHECK(r.expr->kids[0]->blocks == std::vector<std::uint64_t>{2, 3});
  CHECK(r.expr->kids[1]->kind == AlgKind::Scalars);

  // "(+)" is left associative
  r = parse("C (+) C (+) F(2)");
  REQUIRE(r.ok());
  CHECK(r.expr->kind == AlgKind::DirectSum);
  CHECK(r.expr->kids[0]->kind == AlgKind::DirectSum);

  // "*" after Cx binds one primary
  r = parse("Cx(T(2))*F(2) (+) C");
  REQUIRE(r.ok());
  CHECK(r.expr->kind == AlgKind::DirectSum);
  CHECK(r.expr->kids[0]->kind == AlgKind::CommTensor);

  r = parse("pullback(Cx(D(5)), Cx(D(5)); Cx(S(4)))");
  REQUIRE(r.ok());
  CHECK(r.expr->kind == AlgKind::Pullback);
  CHECK(r.expr->kids.size() == 3);

  r = parse("nccw(F(1,1); 1:F(1); 3:F(2,2))");
  REQUIRE(r.ok());
  CHECK(r.expr->kind == AlgKind::Nccw);
  CHECK(r.expr->nccw->base_blocks == std::vector<std::uint64_t>{1, 1});
  CHECK(r.expr->nccw->stages.size() == 2);
  CHECK(r.expr->nccw->stages[1].k == 3);

  for (const char* atom : {"AF", "rot", "cuntz(2)", "Oinf", "kirchberg_ibn",
                           "pisc", "zstable(C)", "rr0(F(2))"})
    CHECK(parse(atom).ok());
}

TEST_CASE("parse errors carry 1-based offsets") {
  auto r = parse("M(2,");
  REQUIRE(!r.ok());
  CHECK(r.expr == nullptr);
  CHECK(r.error->offset == 5);

  r = parse("");
  REQUIRE(!r.ok());
  CHECK(r.error->offset == 1);

  r = parse("Cx(S(1)) trailing");
  REQUIRE(!r.ok());
  CHECK(r.error->offset == 10);

  r = parse("T(0)");
  CHECK(!r.ok());
  r = parse("cuntz(1)");
  CHECK(!r.ok());
  r = parse("F()");
  CHECK(!r.ok());
  r = parse("M(0, C)");
  CHECK(!r.ok());
}

TEST_CASE("formatting") {
  CHECK(format(alg::scalars()) == "C");
  CHECK(format(alg::tensor(space::torus(6), alg::scalars())) == "Cx(T(6))");
  CHECK(format(alg::finite_dim({3, 2})) == "F(2,3)");
  CHECK(format(alg::matrix(2, alg::scalars())) == "F(2)");
  CHECK(format(alg::direct_sum(alg::finite_dim({2}), alg::finite_dim({3}))) ==
        "F(2,3)");
  // nested commutative tensors merge into a product spectrum
  CHECK(format(alg::tensor(space::torus(1),
                           alg::tensor(space::sphere(4), alg::scalars()))) ==
        "Cx(prod(S(1), S(4)))");
}

TEST_CASE("round trip is the canonical fixed point") {
  for (const AlgRef& e : make_corpus(400, 99)) {
    std::string text = format(e);
    auto r = parse(text);
    REQUIRE(r.ok());
    CHECK(equal(canon(r.expr), canon(e)));
    CHECK(format(r.expr) == text);
  }
}

TEST_CASE("parsing is total on mangled inputs") {
  std::mt19937_64 rng(4242);
  auto corpus = make_corpus(150, 5);
  const std::string junk = "()+*;:,CxSTDIFMpw0123456789 ";
  for (const AlgRef& e : corpus) {
    std::string text = format(e);
    for (int round = 0; round < 4; ++round) {
      std::string broken = text;
      switch (rng() % 3) {
        case 0:
          if (!broken.empty()) broken.resize(rng() % broken.size());
          break;
        case 1:
          if (!broken.empty())
            broken[rng() % broken.size()] = junk[rng() % junk.size()];
          break;
        default:
          broken.insert(broken.begin() + static_cast<long>(rng() % (broken.size() + 1)),
                        junk[rng() % junk.size()]);
          break;
      }
      auto r = parse(broken);  // must not crash
      if (!r.ok()) {
        CHECK(r.error->offset >= 1);
        CHECK(r.error->offset <= broken.size() + 1);
        CHECK(!r.error->message.empty());
      }
    }
  }

  // pathological nesting depth fails cleanly instead of overflowing
  std::string deep;
  for (int i = 0; i < 5000; ++i) deep += "M(2,";
  auto r = parse(deep);
  CHECK(!r.ok());
}
