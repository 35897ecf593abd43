#include "stablerank/selfcheck.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <sstream>

#include "stablerank/dsl.hpp"

namespace stablerank {

namespace {

class ExprGen {
public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  SpaceRef gen_space(int depth) {
    int roll = pick(depth <= 0 ? 6 : 9);
    switch (roll) {
      case 0: return space::point();
      case 1: return space::sphere(pick(9));
      case 2: return space::torus(1 + pick(8));
      case 3: return space::disk(1 + pick(5));
      case 4: return space::cube(1 + pick(4));
      case 5: return space::cw(pick(9));
      case 6: return space::susp(gen_space(depth - 1));
      case 7:
        return space::prod(gen_space(depth - 1), gen_space(depth - 1));
      default:
        return space::wedge(gen_space(depth - 1), gen_space(depth - 1));
    }
  }

  AlgRef gen_alg(int depth) {
    int roll = pick(depth <= 0 ? 8 : 17);
    switch (roll) {
      case 0: return alg::scalars();
      case 1: return alg::finite_dim(gen_blocks());
      case 2: return alg::rotation();
      case 3: return alg::cuntz(2 + pick(4));
      case 4: return alg::cuntz_inf();
      case 5: return alg::kirchberg_ibn();
      case 6: return alg::simple_af();
      case 7: return alg::pis_corner();
      case 8: return alg::matrix(1 + pick(4), gen_alg(depth - 1));
      case 9: return alg::direct_sum(gen_alg(depth - 1), gen_alg(depth - 1));
      case 10: return alg::tensor(gen_space(2), gen_alg(depth - 1));
      case 11:
        return alg::pullback(gen_alg(depth - 1), gen_alg(depth - 1),
                             gen_alg(depth - 1));
      case 12:
        return alg::extension(gen_alg(depth - 1), gen_alg(depth - 1));
      case 13: {
        std::vector<AlgRef> entries;
        std::size_t n = 2 + pick(2);
        for (std::size_t i = 0; i < n; ++i)
          entries.push_back(gen_alg(depth - 1));
        return alg::limit(std::move(entries));
      }
      case 14: {
        NccwComplex c;
        c.base_blocks = gen_blocks();
        std::size_t stages = 1 + pick(3);
        for (std::size_t i = 0; i < stages; ++i) {
          NccwComplex::Stage s;
          s.k = 1 + pick(5);
          s.blocks = gen_blocks();
          c.stages.push_back(std::move(s));
        }
        return alg::nccw(std::move(c));
      }
      case 15: return alg::jiang_su(gen_alg(depth - 1));
      default: return alg::real_rank_zero(gen_alg(depth - 1));
    }
  }

private:
  std::mt19937_64 rng_;

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  std::vector<std::uint64_t> gen_blocks() {
    std::vector<std::uint64_t> blocks;
    std::size_t n = 1 + pick(3);
    for (std::size_t i = 0; i < n; ++i)
      blocks.push_back(1 + pick(4));
    return blocks;
  }
};

void collect_exacts(const AlgRef& e, std::vector<KnownExact>& out) {
  auto all_one = [&] {
    out.push_back({"tsr", 1});
    out.push_back({"gsr", 1});
    out.push_back({"csr", 1});
  };
  switch (e->kind) {
    case AlgKind::Scalars:
    case AlgKind::FiniteDim:
      all_one();
      break;
    case AlgKind::SimpleAf:
      all_one();
      break;
    case AlgKind::Rotation:
      out.push_back({"tsr", 1});
      out.push_back({"gsr", 1});
      out.push_back({"csr", 2});
      break;
    case AlgKind::CuntzInf:
    case AlgKind::KirchbergIbn:
      out.push_back({"gsr", 2});
      out.push_back({"csr", 2});
      break;
    case AlgKind::Cuntz:
      out.push_back({"gsr", ExtNat::inf()});
      out.push_back({"csr", ExtNat::inf()});
      break;
    case AlgKind::CommTensor: {
      const SpaceRef x = normalize_space(e->space);
      const AlgRef& a = e->kids[0];
      if (a->kind == AlgKind::Scalars) {
        if (x->kind == SpaceKind::Sphere) {
          out.push_back({"gsr", gsr_commutative_sphere(x->dim)});
          if (x->dim == 1) out.push_back({"csr", 2});
        } else if (x->kind == SpaceKind::Torus) {
          out.push_back({"gsr", gsr_commutative_torus(x->dim)});
          out.push_back({"csr", csr_commutative_torus(x->dim)});
        } else if (x->kind == SpaceKind::Point) {
          out.push_back({"gsr", 1});
          out.push_back({"csr", 1});
        }
      } else if (a->kind == AlgKind::Rotation) {
        out.push_back({"gsr", 1});
        out.push_back({"csr", 2});
      } else if (a->kind == AlgKind::CuntzInf ||
                 a->kind == AlgKind::KirchbergIbn) {
        out.push_back({"gsr", 2});
        out.push_back({"csr", 2});
      } else if (a->kind == AlgKind::Cuntz) {
        out.push_back({"gsr", ExtNat::inf()});
        out.push_back({"csr", ExtNat::inf()});
      }
      break;
    }
    default:
      break;
  }
}

}  // namespace

std::vector<AlgRef> make_corpus(std::size_t count, std::uint64_t seed) {
  ExprGen gen(seed);
  std::vector<AlgRef> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.gen_alg(3));
  return out;
}

std::vector<KnownExact> known_exact_values(const AlgRef& expr) {
  std::vector<KnownExact> out;
  collect_exacts(expr, out);
  return out;
}

std::string state_signature(const InferResult& result) {
  std::ostringstream os;
  for (const auto& node : result.nodes) {
    const RankState& s = node.state;
    os << node.name << "|tsr=" << s.tsr.str() << "|gsr=" << s.gsr.str()
       << "|csr=" << s.csr.str();
    for (const auto& [key, iv] : s.slots.degrees)
      if (!iv.is_unknown()) os << "|" << slot_name(key) << "=" << iv.str();
    for (const auto& [key, iv] : s.slots.spaces)
      if (!iv.is_unknown()) os << "|inj[" << key << "]=" << iv.str();
    os << "|" << to_string(s.k1_zero) << to_string(s.finite)
       << to_string(s.stably_finite) << to_string(s.ibn)
       << to_string(s.class_f) << to_string(s.real_rank_zero) << "\n";
  }
  return os.str();
}

namespace {

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  const RankState& state_of(const InferResult& r, const std::string& name) {
    for (const auto& n : r.nodes)
      if (n.name == name) return n.state;
    static RankState empty;
    failures.push_back("node not materialized: " + name);
    return empty;
  }
};

}  // namespace

std::vector<std::string> run_self_check(std::size_t corpus_size) {
  Checker c;

  // arithmetic and closed-form examples
  c.expect(ceil_div(std::uint64_t{9}, 2) == 5, "ceil_div(9,2) != 5");
  c.expect(ceil_div(std::uint64_t{4}, 4) == 1, "ceil_div(4,4) != 1");
  c.expect(ceil_div(std::uint64_t{5}, 2) == 3, "ceil_div(5,2) != 3");
  c.expect(gsr_commutative_sphere(5) == ExtNat(4), "gsr(C(S^5)) != 4");
  c.expect(gsr_commutative_sphere(4) == ExtNat(1), "gsr(C(S^4)) != 1");
  c.expect(gsr_commutative_sphere(8) == ExtNat(4), "gsr(C(S^8)) != 4");
  c.expect(gsr_commutative_sphere(12) == ExtNat(6), "gsr(C(S^12)) != 6");
  c.expect(gsr_commutative_torus(4) == ExtNat(1), "gsr(C(T^4)) != 1");
  c.expect(gsr_commutative_torus(5) == ExtNat(4), "gsr(C(T^5)) != 4");
  c.expect(gsr_commutative_torus(9) == ExtNat(6), "gsr(C(T^9)) != 6");
  c.expect(csr_commutative_torus(1) == ExtNat(2), "csr(C(T^1)) != 2");
  c.expect(csr_commutative_torus(3) == ExtNat(3), "csr(C(T^3)) != 3");
  c.expect(csr_commutative_torus(6) == ExtNat(4), "csr(C(T^6)) != 4");
  c.expect(bott_stable_bound(4, 1) == 3, "bott(4,1) != 3");
  c.expect(bott_stable_bound(1, 1) == 2, "bott(1,1) != 2");
  c.expect(bott_stable_bound(6, 3) == 2, "bott(6,3) != 2");

  // engine closed-form checks
  auto rank_of = [&](const std::string& text) {
    auto parsed = parse(text);
    if (!parsed.ok()) {
      c.failures.push_back("self-check parse failure: " + text);
      return InferResult{};
    }
    return infer(parsed.expr);
  };

  {
    InferResult r = rank_of("Cx(S(5))");
    c.expect(r.root_state().gsr == RankInterval::exact(4),
             "infer(C(S^5)) gsr != [4,4]");
    c.expect(r.root_state().csr == RankInterval::exact(4),
             "infer(C(S^5)) csr != [4,4]");
    c.expect(c.state_of(r, "C").slots.get(inj_slot(4)) ==
                 RankInterval::exact(4),
             "inj_4 of the scalars != [4,4]");
  }
  {
    InferResult r = rank_of("F(2,3)");
    c.expect(r.root_state().tsr == RankInterval::exact(1) &&
                 r.root_state().gsr == RankInterval::exact(1) &&
                 r.root_state().csr == RankInterval::exact(1),
             "infer(F(2,3)) not all [1,1]");
  }
  {
    InferResult r = rank_of("M(3, Cx(T(6)))");
    c.expect(r.root_state().csr == RankInterval(1, 2),
             "infer(M_3(C(T^6))) csr != [1,2]");
  }
  for (std::uint64_t n = 0; n <= 8; ++n) {
    InferResult r = rank_of("Cx(cw(" + std::to_string(n) + "))*Oinf");
    c.expect(r.root_state().gsr == RankInterval::exact(2) &&
                 r.root_state().csr == RankInterval::exact(2),
             "O_inf tensor over cw(" + std::to_string(n) + ") not [2,2]");
  }
  {
    InferResult r = rank_of("Cx(cw(3))*rot");
    c.expect(r.root_state().gsr == RankInterval::exact(1),
             "rotation tensor gsr != [1,1]");
    c.expect(r.root_state().csr == RankInterval::exact(2),
             "rotation tensor csr != [2,2]");
  }
  for (std::uint64_t d = 1; d <= 10; ++d) {
    InferResult r = rank_of("Cx(T(" + std::to_string(d) + "))");
    c.expect(r.root_state().gsr ==
                 RankInterval::exact(gsr_commutative_torus(d)),
             "torus gsr mismatch at d=" + std::to_string(d));
    c.expect(r.root_state().csr ==
                 RankInterval::exact(csr_commutative_torus(d)),
             "torus csr mismatch at d=" + std::to_string(d));
  }
  for (std::uint64_t d = 1; d <= 12; ++d) {
    InferResult r = rank_of("Cx(S(" + std::to_string(d) + "))");
    c.expect(r.root_state().gsr ==
                 RankInterval::exact(gsr_commutative_sphere(d)),
             "sphere gsr mismatch at d=" + std::to_string(d));
  }
  for (std::uint64_t d = 5; d <= 10; ++d) {
    std::string text = "pullback(Cx(D(" + std::to_string(d) + ")), Cx(D(" +
                       std::to_string(d) + ")); Cx(S(" +
                       std::to_string(d - 1) + ")))";
    InferResult r = rank_of(text);
    c.expect(r.root_state().gsr.hi() == gsr_commutative_sphere(d),
             "pullback sphere gsr.hi mismatch at d=" + std::to_string(d));
  }
  {
    InferResult r = rank_of("Cx(wedge(S(5), S(8)))");
    c.expect(r.root_state().gsr == RankInterval::exact(4),
             "wedge of spheres gsr != [4,4]");
  }

  // a contradictory axiom must abort, naming both derivations
  {
    auto parsed = parse("C");
    bool threw = false;
    try {
      infer(parsed.expr, {Axiom{"", "csr", RankInterval::exact(5), {}}});
    } catch (const InconsistencyError&) {
      threw = true;
    }
    c.expect(threw, "bad axiom csr(C) = 5 did not raise an inconsistency");
  }

  // corpus: soundness, confluence, round trip, trace coverage
  std::vector<AlgRef> corpus = make_corpus(corpus_size, 0x5eed);
  std::mt19937_64 fuzz_rng(0xf022);
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const AlgRef& expr = corpus[idx];
    std::string tag = " (corpus #" + std::to_string(idx) + ")";
    InferResult base;
    try {
      base = infer(expr);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("inference failed: ") + ex.what() +
                           tag);
      continue;
    }

    for (const auto& v : check_consistency(base))
      c.failures.push_back("consistency violation: " + v.what + " on " +
                           base.nodes[static_cast<std::size_t>(v.node)].name +
                           tag);

    for (const auto& node : base.nodes) {
      AlgRef e = node.expr;
      for (const auto& known : known_exact_values(e)) {
        const RankInterval& iv = known.quantity == "tsr"   ? node.state.tsr
                                 : known.quantity == "gsr" ? node.state.gsr
                                                           : node.state.csr;
        c.expect(iv.contains(known.value),
                 "report drops the exact value " + known.quantity + " = " +
                     known.value.str() + " of " + node.name + tag);
      }
    }

    // order-independence of the fixpoint
    InferOptions opt_a, opt_b;
    opt_a.rule_seed = 0x1234 + idx;
    opt_b.rule_seed = 0x9876 + idx;
    std::string sig = state_signature(base);
    c.expect(state_signature(infer(expr, {}, opt_a)) == sig,
             "rule order changed the fixpoint" + tag);
    c.expect(state_signature(infer(expr, {}, opt_b)) == sig,
             "rule order changed the fixpoint" + tag);

    // parse/format round trip is a fixed point after one cycle
    std::string text = format(expr);
    auto reparsed = parse(text);
    if (!reparsed.ok()) {
      c.failures.push_back("canonical text failed to reparse: " + text + tag);
    } else {
      c.expect(format(reparsed.expr) == text,
               "format/parse cycle not a fixed point: " + text + tag);
      c.expect(equal(canon(reparsed.expr), canon(expr)),
               "reparse changed the canonical expression: " + text + tag);
    }

    // mutated text never crashes the parser and errors stay in range
    std::string broken = text;
    if (!broken.empty()) {
      std::size_t cut = fuzz_rng() % broken.size();
      broken.resize(cut);
    }
    auto fuzzed = parse(broken);
    if (!fuzzed.ok())
      c.expect(fuzzed.error->offset >= 1 &&
                   fuzzed.error->offset <= broken.size() + 1,
               "parse error offset out of range on: " + broken + tag);

    // every non-trivial bound in the report carries a cited trace step
    const RankState& root = base.root_state();
    auto covered = [&](const char* q) {
      for (const Step& s : base.trace.steps)
        if (s.node == base.root && s.quantity == q) {
          bool rule_ok = s.rule.size() >= 2 && s.rule[0] == 'R';
          if (rule_ok && !s.citation.empty()) return true;
        }
      return false;
    };
    if (!root.tsr.is_unknown())
      c.expect(covered("tsr"), "tsr bound lacks a cited trace step" + tag);
    if (!root.gsr.is_unknown())
      c.expect(covered("gsr"), "gsr bound lacks a cited trace step" + tag);
    if (!root.csr.is_unknown())
      c.expect(covered("csr"), "csr bound lacks a cited trace step" + tag);
  }

  return c.failures;
}

}  // namespace stablerank
