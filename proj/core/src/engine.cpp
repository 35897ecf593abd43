#include "stablerank/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "stablerank/dsl.hpp"

namespace stablerank {

namespace {

constexpr std::size_t kDefaultMaxNodes = 10000;
constexpr std::size_t kMaxSteps = 2'000'000;
constexpr std::uint64_t kDegreeCap = 64;

enum class Rank : int { Tsr = 0, Gsr = 1, Csr = 2 };

const char* rank_name(Rank r) {
  switch (r) {
    case Rank::Tsr: return "tsr";
    case Rank::Gsr: return "gsr";
    case Rank::Csr: return "csr";
  }
  return "?";
}

enum class Flag : int { K1Zero, Finite, StablyFinite, Ibn, ClassF, Rr0 };

const char* flag_name(Flag f) {
  switch (f) {
    case Flag::K1Zero: return "k1_zero";
    case Flag::Finite: return "finite";
    case Flag::StablyFinite: return "stably_finite";
    case Flag::Ibn: return "ibn";
    case Flag::ClassF: return "class_f";
    case Flag::Rr0: return "real_rank_zero";
  }
  return "?";
}

// A readable reference to one interval-valued quantity of one node.
struct QRef {
  enum class Kind : int { Rank, Slot, SpaceSlot };
  int node = 0;
  Kind kind = Kind::Rank;
  Rank rank = Rank::Tsr;
  SlotKey slot{};
  std::string space_key;

  static QRef of_rank(int n, Rank r) {
    QRef q;
    q.node = n;
    q.kind = Kind::Rank;
    q.rank = r;
    return q;
  }
  static QRef of_slot(int n, SlotKey k) {
    QRef q;
    q.node = n;
    q.kind = Kind::Slot;
    q.slot = k;
    return q;
  }
  static QRef of_space_slot(int n, std::string key) {
    QRef q;
    q.node = n;
    q.kind = Kind::SpaceSlot;
    q.space_key = std::move(key);
    return q;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Rank: return rank_name(rank);
      case Kind::Slot: return slot_name(slot);
      case Kind::SpaceSlot:
        return (slot.dir == SlotKey::Dir::Inj ? "inj[" : "surj[") +
               space_key + "]";
    }
    return "?";
  }
};

struct RuleInst {
  std::vector<int> reads;
  std::function<void()> fn;
};

// Flattens the factor list of a canonical product space.
void product_factors(const SpaceRef& x, std::vector<SpaceRef>& out) {
  if (x->kind == SpaceKind::Product) {
    product_factors(x->a, out);
    product_factors(x->b, out);
  } else {
    out.push_back(x);
  }
}

void wedge_summands(const SpaceRef& x, std::vector<SpaceRef>& out) {
  if (x->kind == SpaceKind::Wedge) {
    wedge_summands(x->a, out);
    wedge_summands(x->b, out);
  } else {
    out.push_back(x);
  }
}

SpaceRef refold_product(const std::vector<SpaceRef>& parts) {
  if (parts.empty()) return space::point();
  SpaceRef acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = space::prod(acc, parts[i]);
  return canon_space(acc);
}

bool is_finite_dim_like(const AlgRef& a) {
  return a->kind == AlgKind::Scalars || a->kind == AlgKind::FiniteDim;
}

std::vector<std::uint64_t> block_sizes(const AlgRef& a) {
  if (a->kind == AlgKind::Scalars) return {1};
  return a->blocks;
}

std::size_t env_max_nodes() {
  if (const char* s = std::getenv("STABLERANK_MAX_NODES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxNodes;
}

class Engine {
public:
  Engine(const AlgRef& expr, const std::vector<Axiom>& axioms,
         const InferOptions& options)
      : options_(options) {
    max_nodes_ = options.max_nodes ? options.max_nodes : env_max_nodes();
    AlgRef root = canon(expr);
    root_ = intern(root);
    resolve_axioms(expr, axioms);
    register_domination_rules();
  }

  InferResult run() {
    std::mt19937_64 rng(options_.rule_seed);
    bool permute = options_.rule_seed != 0;

    std::vector<std::size_t> seed_order(seeds_.size());
    for (std::size_t i = 0; i < seed_order.size(); ++i) seed_order[i] = i;
    if (permute) std::shuffle(seed_order.begin(), seed_order.end(), rng);
    for (std::size_t i : seed_order) seeds_[i]();

    // dependency index: node -> rules reading it
    std::vector<std::vector<std::size_t>> deps(nodes_.size());
    for (std::size_t r = 0; r < rules_.size(); ++r)
      for (int n : rules_[r].reads) deps[static_cast<std::size_t>(n)].push_back(r);

    std::vector<std::size_t> prio(rules_.size());
    for (std::size_t i = 0; i < prio.size(); ++i) prio[i] = i;
    if (permute) std::shuffle(prio.begin(), prio.end(), rng);

    std::set<std::pair<std::size_t, std::size_t>> queue;
    std::vector<bool> queued(rules_.size(), false);
    auto enqueue = [&](std::size_t r) {
      if (!queued[r]) {
        queued[r] = true;
        queue.emplace(prio[r], r);
      }
    };
    for (std::size_t r = 0; r < rules_.size(); ++r) enqueue(r);

    // drain the pending changes produced by seeding
    changed_.clear();

    std::size_t fired = 0;
    while (!queue.empty()) {
      auto it = queue.begin();
      std::size_t r = it->second;
      queue.erase(it);
      queued[r] = false;
      if (++fired > kMaxSteps)
        throw LimitError("rule firing budget exceeded");
      rules_[r].fn();
      for (int n : changed_)
        for (std::size_t d : deps[static_cast<std::size_t>(n)]) enqueue(d);
      changed_.clear();
    }

    InferResult result;
    result.nodes = nodes_;
    result.root = root_;
    result.trace.steps = std::move(trace_);
    return result;
  }

private:
  InferOptions options_;
  std::size_t max_nodes_ = kDefaultMaxNodes;
  std::vector<NodeReport> nodes_;
  std::unordered_map<std::string, int> index_;
  std::vector<RuleInst> rules_;
  std::vector<std::function<void()>> seeds_;
  std::vector<Step> trace_;
  std::set<int> changed_;
  int root_ = 0;
  std::map<int, std::set<std::uint64_t>> needed_degrees_;
  std::map<int, std::map<std::string, SpaceRef>> needed_space_keys_;

  // ---- state access -------------------------------------------------

  RankInterval& rank_ref(int node, Rank r) {
    RankState& s = nodes_[static_cast<std::size_t>(node)].state;
    switch (r) {
      case Rank::Tsr: return s.tsr;
      case Rank::Gsr: return s.gsr;
      default: return s.csr;
    }
  }

  RankInterval get(const QRef& q) {
    RankState& s = nodes_[static_cast<std::size_t>(q.node)].state;
    switch (q.kind) {
      case QRef::Kind::Rank: return rank_ref(q.node, q.rank);
      case QRef::Kind::Slot: return s.slots.get(q.slot);
      case QRef::Kind::SpaceSlot: return s.slots.get_space(q.space_key);
    }
    return RankInterval::unknown();
  }

  TriBool get_flag(int node, Flag f) {
    const RankState& s = nodes_[static_cast<std::size_t>(node)].state;
    switch (f) {
      case Flag::K1Zero: return s.k1_zero;
      case Flag::Finite: return s.finite;
      case Flag::StablyFinite: return s.stably_finite;
      case Flag::Ibn: return s.ibn;
      case Flag::ClassF: return s.class_f;
      case Flag::Rr0: return s.real_rank_zero;
    }
    return TriBool::Unknown;
  }

  const std::string& node_name(int node) {
    return nodes_[static_cast<std::size_t>(node)].name;
  }

  std::string last_provenance(int node, const std::string& quantity) {
    for (auto it = trace_.rbegin(); it != trace_.rend(); ++it)
      if (it->node == node && it->quantity == quantity)
        return it->rule + ": " + it->citation;
    return "initial state";
  }

  [[noreturn]] void inconsistent(const QRef& q, const RankInterval& cur,
                                 const RankInterval& incoming,
                                 const char* rule,
                                 const std::string& citation) {
    throw InconsistencyError(
        "inconsistent meet on node '" + node_name(q.node) + "' quantity " +
        q.name() + ": established " + cur.str() + " (" +
        last_provenance(q.node, q.name()) + ") cannot meet " +
        incoming.str() + " (" + rule + ": " + citation + ")");
  }

  void record(const char* rule, const std::string& citation, const QRef& q,
              const std::string& before, const std::string& after,
              const std::vector<QRef>& inputs) {
    Step step;
    step.rule = rule;
    step.citation = citation;
    step.node = q.node;
    step.node_name = node_name(q.node);
    step.quantity = q.name();
    step.before = before;
    step.after = after;
    for (const auto& in : inputs) step.inputs.emplace_back(in.node, in.name());
    trace_.push_back(std::move(step));
  }

  // Meets `bound` into the quantity; records a step iff strictly tighter.
  void meet_q(const QRef& q, const RankInterval& bound, const char* rule,
              const std::string& citation, const std::vector<QRef>& inputs) {
    RankState& s = nodes_[static_cast<std::size_t>(q.node)].state;
    RankInterval cur = get(q);
    auto met = RankInterval::meet(cur, bound);
    if (!met) inconsistent(q, cur, bound, rule, citation);
    if (*met == cur) return;
    switch (q.kind) {
      case QRef::Kind::Rank: rank_ref(q.node, q.rank) = *met; break;
      case QRef::Kind::Slot: s.slots.degrees[q.slot] = *met; break;
      case QRef::Kind::SpaceSlot: s.slots.spaces[q.space_key] = *met; break;
    }
    record(rule, citation, q, cur.str(), met->str(), inputs);
    changed_.insert(q.node);
  }

  void set_flag(int node, Flag f, TriBool value, const char* rule,
                const std::string& citation, const std::vector<QRef>& inputs) {
    RankState& s = nodes_[static_cast<std::size_t>(node)].state;
    TriBool cur = get_flag(node, f);
    auto refined = refine(cur, value);
    if (!refined)
      throw InconsistencyError(
          "conflicting flag " + std::string(flag_name(f)) + " on node '" +
          node_name(node) + "': established " + to_string(cur) + " (" +
          last_provenance(node, flag_name(f)) + ") cannot become " +
          to_string(value) + " (" + rule + ": " + citation + ")");
    if (*refined == cur) return;
    switch (f) {
      case Flag::K1Zero: s.k1_zero = *refined; break;
      case Flag::Finite: s.finite = *refined; break;
      case Flag::StablyFinite: s.stably_finite = *refined; break;
      case Flag::Ibn: s.ibn = *refined; break;
      case Flag::ClassF: s.class_f = *refined; break;
      case Flag::Rr0: s.real_rank_zero = *refined; break;
    }
    Step step;
    step.rule = rule;
    step.citation = citation;
    step.node = node;
    step.node_name = node_name(node);
    step.quantity = flag_name(f);
    step.before = to_string(cur);
    step.after = to_string(value);
    for (const auto& in : inputs) step.inputs.emplace_back(in.node, in.name());
    trace_.push_back(std::move(step));
    changed_.insert(node);
  }

  // v = max(args): propagate every monotone consequence of the equality.
  void max_equal(const QRef& v, const std::vector<QRef>& args,
                 const char* rule, const std::string& citation) {
    RankInterval vv = get(v);
    std::vector<RankInterval> av;
    av.reserve(args.size());
    for (const auto& a : args) av.push_back(get(a));

    ExtNat hi = 0, lo = 0;
    for (const auto& a : av) {
      hi = max(hi, a.hi());
      lo = max(lo, a.lo());
    }
    meet_q(v, RankInterval::at_most(hi), rule, citation, args);
    meet_q(v, RankInterval::at_least(lo), rule, citation, args);

    vv = get(v);
    for (std::size_t i = 0; i < args.size(); ++i)
      meet_q(args[i], RankInterval::at_most(vv.hi()), rule, citation, {v});

    // when all other arguments fall short of v's lower bound, the remaining
    // one must attain it
    std::size_t candidates = 0, last = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!(get(args[i]).hi() < vv.lo())) {
        ++candidates;
        last = i;
      }
    }
    if (candidates == 1)
      meet_q(args[last], RankInterval::at_least(vv.lo()), rule, citation, {v});
  }

  // v <= max(args), upper endpoints only.
  void upper_max(const QRef& v, const std::vector<QRef>& args,
                 const char* rule, const std::string& citation) {
    ExtNat hi = 0;
    for (const auto& a : args) hi = max(hi, get(a).hi());
    meet_q(v, RankInterval::at_most(hi), rule, citation, args);
  }

  void add_rule(std::vector<int> reads, std::function<void()> fn) {
    rules_.push_back({std::move(reads), std::move(fn)});
  }

  void add_seed(std::function<void()> fn) { seeds_.push_back(std::move(fn)); }

  void need_degree(int node, std::uint64_t k) {
    if (k <= kDegreeCap) needed_degrees_[node].insert(k);
  }

  void need_space_key(int node, const SpaceRef& x) {
    needed_space_keys_[node].emplace(format_space(x), x);
  }

  // ---- universe construction ----------------------------------------

  int intern(const AlgRef& expr) {
    if (expr->kind == AlgKind::Nccw) {
      // the complex denotes the same algebra as its pullback expansion;
      // the specialized bound is attached to the expanded node
      NccwComplex complex = *expr->nccw;
      int id = intern(canon(lower_to_pullback(complex)));
      ExtNat bound = csr_upper_nccw(complex);
      add_seed([this, id, bound] {
        meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::at_most(bound),
               "R12",
               "csr(A_n) <= max_k ceil(k/(2 d_k)) + 1 for NCCW complexes "
               "(Thm 4.5, corollary of Thm 2.12)",
               {});
      });
      return id;
    }

    std::string key = format(expr);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    if (nodes_.size() >= max_nodes_)
      throw LimitError("expression universe exceeds node limit (" +
                       std::to_string(max_nodes_) +
                       "); raise STABLERANK_MAX_NODES to override");
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(NodeReport{expr, key, RankState{}});
    index_.emplace(std::move(key), id);

    register_node(id, expr);
    return id;
  }

  void register_node(int id, const AlgRef& e) {
    register_order_rules(id);

    switch (e->kind) {
      case AlgKind::Scalars: register_scalars(id); break;
      case AlgKind::FiniteDim: register_finite_dim(id, e); break;
      case AlgKind::MatrixOver: register_matrix(id, e); break;
      case AlgKind::DirectSum: register_direct_sum(id, e); break;
      case AlgKind::CommTensor: register_tensor(id, e); break;
      case AlgKind::Pullback: register_pullback(id, e); break;
      case AlgKind::Extension: register_extension(id, e); break;
      case AlgKind::Limit: register_limit(id, e); break;
      case AlgKind::JiangSu: {
        intern(e->kids[0]);
        add_seed([this, id] {
          set_flag(id, Flag::ClassF, TriBool::Yes, "R17",
                   "A (x) Z lies in class F for any A (Sec. 3.2, Jiang-Su)",
                   {});
        });
        break;
      }
      case AlgKind::RealRankZero: register_rr0(id, e); break;
      case AlgKind::Rotation: {
        add_seed([this, id] {
          const std::string cit =
              "irrational rotation algebras: tsr = 1, gsr = 1, csr = 2, "
              "K_1 != 0 (Ex. 3.14(2), Rieffel)";
          meet_q(QRef::of_rank(id, Rank::Tsr), RankInterval::exact(1), "R24",
                 cit, {});
          meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(1), "R24",
                 cit, {});
          meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(2), "R24",
                 cit, {});
          set_flag(id, Flag::K1Zero, TriBool::No, "R24", cit, {});
          set_flag(id, Flag::Finite, TriBool::Yes, "R24", cit, {});
          set_flag(id, Flag::ClassF, TriBool::Yes, "R17",
                   "irrational rotation algebras lie in class F (Sec. 3.2)",
                   {});
        });
        break;
      }
      case AlgKind::Cuntz: {
        add_seed([this, id] {
          const std::string cit =
              "Cuntz algebras O_n (n >= 2) fail IBN, forcing gsr = csr = inf "
              "(Sec. 1.1 swindle; Ex. 3.14(3), Xue)";
          set_flag(id, Flag::Ibn, TriBool::No, "R24", cit, {});
          meet_q(QRef::of_rank(id, Rank::Gsr),
                 RankInterval::exact(ExtNat::inf()), "R24", cit, {});
          meet_q(QRef::of_rank(id, Rank::Csr),
                 RankInterval::exact(ExtNat::inf()), "R24", cit, {});
          set_flag(id, Flag::ClassF, TriBool::Yes, "R17",
                   "purely infinite simple algebras lie in class F "
                   "(Sec. 3.2, Zhang)",
                   {});
        });
        break;
      }
      case AlgKind::CuntzInf:
      case AlgKind::KirchbergIbn: {
        add_seed([this, id] {
          const std::string cit =
              "Kirchberg algebras with IBN: gsr = csr = 2 (Ex. 3.14(3), Xue)";
          meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(2), "R24",
                 cit, {});
          meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(2), "R24",
                 cit, {});
          set_flag(id, Flag::Ibn, TriBool::Yes, "R24", cit, {});
          set_flag(id, Flag::ClassF, TriBool::Yes, "R17",
                   "Kirchberg algebras lie in class F (Sec. 3.2, Zhang)", {});
        });
        break;
      }
      case AlgKind::SimpleAf: {
        add_seed([this, id] {
          const std::string cit =
              "simple infinite-dimensional unital AF algebras: tsr = csr = 1, "
              "stably finite (Ex. 3.14(1))";
          meet_q(QRef::of_rank(id, Rank::Tsr), RankInterval::exact(1), "R24",
                 cit, {});
          meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(1), "R24",
                 cit, {});
          set_flag(id, Flag::StablyFinite, TriBool::Yes, "R24", cit, {});
          set_flag(id, Flag::Finite, TriBool::Yes, "R24", cit, {});
          set_flag(id, Flag::ClassF, TriBool::Yes, "R17",
                   "A (x) B lies in class F for simple infinite-dimensional "
                   "AF A (Sec. 3.2, Thomsen)",
                   {});
        });
        break;
      }
      case AlgKind::PisCorner: {
        add_seed([this, id] {
          set_flag(id, Flag::ClassF, TriBool::Yes, "R17",
                   "corners pAp of purely infinite simple algebras lie in "
                   "class F (Sec. 3.2, Zhang)",
                   {});
        });
        break;
      }
      case AlgKind::Nccw:
        break;  // handled in intern()
    }

    register_class_f_slots(id);
  }

  // R2 + R7 + R8 + R9, per node.
  void register_order_rules(int id) {
    add_rule({id}, [this, id] {
      QRef tsr = QRef::of_rank(id, Rank::Tsr);
      QRef gsr = QRef::of_rank(id, Rank::Gsr);
      QRef csr = QRef::of_rank(id, Rank::Csr);
      const std::string cit = "gsr(A) <= csr(A) <= tsr(A) + 1 (Rem. 1.1(2))";
      meet_q(csr, RankInterval::at_least(get(gsr).lo()), "R2", cit, {gsr});
      meet_q(gsr, RankInterval::at_most(get(csr).hi()), "R2", cit, {csr});
      meet_q(csr, RankInterval::at_most(get(tsr).hi().succ()), "R2", cit,
             {tsr});
      meet_q(tsr, RankInterval::at_least(get(csr).lo().pred_clamped()), "R2",
             cit, {csr});
    });
    add_rule({id}, [this, id] {
      QRef gsr = QRef::of_rank(id, Rank::Gsr);
      if (get(gsr).hi() == ExtNat(1))
        set_flag(id, Flag::StablyFinite, TriBool::Yes, "R7",
                 "gsr(A) = 1 implies A stably finite (Rem. 1.1(8))", {gsr});
      if (get_flag(id, Flag::Finite) == TriBool::Yes &&
          get(gsr).hi() <= ExtNat(2))
        meet_q(gsr, RankInterval::exact(1), "R7",
               "gsr(A) <= 2 and A finite imply gsr(A) = 1 (Rem. 1.1(8))",
               {gsr});
    });
    add_rule({id}, [this, id] {
      QRef tsr = QRef::of_rank(id, Rank::Tsr);
      QRef csr = QRef::of_rank(id, Rank::Csr);
      if (get(csr).hi() == ExtNat(1))
        set_flag(id, Flag::K1Zero, TriBool::Yes, "R8",
                 "csr(A) = 1 implies K_1(A) = 0 (Rem. 1.1(9))", {csr});
      if (get(tsr).hi() == ExtNat(1) &&
          get_flag(id, Flag::K1Zero) == TriBool::Yes)
        meet_q(csr, RankInterval::exact(1), "R8",
               "K_1(A) = 0 and tsr(A) = 1 imply csr(A) = 1 (Rem. 1.1(9))",
               {tsr});
      if (get_flag(id, Flag::K1Zero) == TriBool::No)
        meet_q(csr, RankInterval::at_least(2), "R8",
               "K_1(A) != 0 implies csr(A) >= 2 (Rem. 1.1(9))", {});
    });
    add_rule({id}, [this, id] {
      QRef tsr = QRef::of_rank(id, Rank::Tsr);
      QRef gsr = QRef::of_rank(id, Rank::Gsr);
      if (get(tsr).hi() == ExtNat(1))
        meet_q(gsr, RankInterval::exact(1), "R9",
               "tsr(A) = 1 gives cancellation, so gsr(A) = 1 (Rem. 1.1(10))",
               {tsr});
    });
  }

  // Fires once class_f turns Yes: inj slots are exactly 1, surj slots at
  // most 2, for every degree and space key the node is asked about.
  void register_class_f_slots(int id) {
    add_rule({id}, [this, id] {
      if (get_flag(id, Flag::ClassF) != TriBool::Yes) return;
      const std::string cit =
          "theta is a weak homotopy equivalence from m = 2 inside class F "
          "(Sec. 3.2)";
      std::set<std::uint64_t> degrees = needed_degrees_[id];
      for (const auto& [k, v] : nodes_[static_cast<std::size_t>(id)]
                                    .state.slots.degrees)
        degrees.insert(k.degree);
      for (std::uint64_t k : degrees) {
        SlotPair p = slots_class_f(k);
        meet_q(QRef::of_slot(id, inj_slot(k)), p.inj_below, "R16", cit, {});
        meet_q(QRef::of_slot(id, surj_slot(k)), p.surj_at, "R16", cit, {});
      }
      std::set<std::string> keys;
      for (const auto& [key, x] : needed_space_keys_[id]) keys.insert(key);
      for (const auto& [key, v] :
           nodes_[static_cast<std::size_t>(id)].state.slots.spaces)
        keys.insert(key);
      for (const auto& key : keys)
        meet_q(QRef::of_space_slot(id, key), RankInterval::exact(1), "R16",
               cit, {});
    });
  }

  void register_scalars(int id) {
    add_seed([this, id] {
      const std::string cit = "tsr = gsr = csr = 1 for the scalars (Sec. 1.1)";
      meet_q(QRef::of_rank(id, Rank::Tsr), RankInterval::exact(1), "R26", cit,
             {});
      meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(1), "R26", cit,
             {});
      meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(1), "R26", cit,
             {});
      set_flag(id, Flag::K1Zero, TriBool::Yes, "R26",
               "K_1(C) = 0 (Cor. 4.1 proof)", {});
      set_flag(id, Flag::Finite, TriBool::Yes, "R26",
               "the scalars are finite (Sec. 1.1)", {});
      set_flag(id, Flag::ClassF, TriBool::No, "R26",
               "pi_3(GL_1(C)) = 0 but pi_3(GL_2(C)) != 0, so C is not in "
               "class F (Sec. 3.2)",
               {});
    });
    register_finite_dim_slots(id, {1});
  }

  void register_finite_dim(int id, const AlgRef& e) {
    auto blocks = e->blocks;
    add_seed([this, id] {
      const std::string cit =
          "finite-dimensional algebras: tsr = gsr = csr = 1, K_1 = 0 "
          "(Sec. 4.2: csr(F) = 1)";
      meet_q(QRef::of_rank(id, Rank::Tsr), RankInterval::exact(1), "R24", cit,
             {});
      meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(1), "R24", cit,
             {});
      meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(1), "R24", cit,
             {});
      set_flag(id, Flag::K1Zero, TriBool::Yes, "R24", cit, {});
      set_flag(id, Flag::Finite, TriBool::Yes, "R24", cit, {});
    });
    register_finite_dim_slots(id, blocks);
  }

  // Bott stability thresholds for the degree slots of a finite-dimensional
  // algebra (the scalars included, with the exact sphere values there).
  void register_finite_dim_slots(int id, std::vector<std::uint64_t> blocks) {
    bool is_scalars = blocks.size() == 1 && blocks[0] == 1;
    add_seed([this, id, blocks = std::move(blocks), is_scalars] {
      const char* rule = is_scalars ? "R26" : "R24";
      for (std::uint64_t k : needed_degrees_[id]) {
        SlotPair at_k = slots_finite_dimensional(blocks, k);
        SlotPair above = slots_finite_dimensional(blocks, k + 1);
        meet_q(QRef::of_slot(id, surj_slot(k)), at_k.surj_at, rule,
               "surj_k(F) <= ceil(k/(2 d)) + 1 by Bott periodicity "
               "(Sec. 4.2, Thm 4.5)",
               {});
        meet_q(QRef::of_slot(id, inj_slot(k)), above.inj_below, rule,
               "inj_k(F) <= ceil((k+1)/(2 d)) + 1 by Bott periodicity "
               "(Sec. 4.2, Thm 4.5)",
               {});
        if (is_scalars)
          meet_q(QRef::of_slot(id, inj_slot(k)),
                 RankInterval::exact(gsr_commutative_sphere(k + 1)), "R23",
                 "inj_k(C) = gsr(C(S^{k+1})), exact by the sphere formula "
                 "(Eq. 3.1, Ex. 3.2)",
                 {});
      }
      meet_q(QRef::of_slot(id, inj_slot(0)), RankInterval::exact(1), rule,
             "GL_n of a finite-dimensional algebra is connected, so "
             "inj_0 = surj_0 = 1 (Cor. 4.1 proof)",
             {});
      meet_q(QRef::of_slot(id, surj_slot(0)), RankInterval::exact(1), rule,
             "GL_n of a finite-dimensional algebra is connected, so "
             "inj_0 = surj_0 = 1 (Cor. 4.1 proof)",
             {});
      if (is_scalars)
        for (const auto& [key, x] : needed_space_keys_[id])
          meet_q(QRef::of_space_slot(id, key), inj_space_scalars(x), "R23",
                 "inj_X(C): exact for points, spheres and tori via "
                 "gsr(C(Sigma X)) = inj_X(C) (Eq. 3.1, Ex. 3.2, Ex. 4.4); "
                 "bounded by the Bott threshold otherwise (Sec. 4.2)",
                 {});
    });
    need_degree(id, 0);
    need_degree(id, 1);
  }

  void register_matrix(int id, const AlgRef& e) {
    int a = intern(e->kids[0]);
    std::uint64_t n = e->n;
    add_rule({a}, [this, id, a, n] {
      const std::string cit =
          "csr(M_n(A)) <= ceil((csr(A) - 1)/n) + 1, and likewise for gsr "
          "(Rem. 1.1(3))";
      for (Rank r : {Rank::Gsr, Rank::Csr}) {
        RankInterval ia = get(QRef::of_rank(a, r));
        ExtNat hi = ia.hi();
        ExtNat bound =
            hi.is_inf() ? ExtNat::inf()
                        : ExtNat(ceil_div(hi.value() - 1, n) + 1);
        meet_q(QRef::of_rank(id, r), RankInterval::at_most(bound), "R3", cit,
               {QRef::of_rank(a, r)});
      }
    });
  }

  void register_direct_sum(int id, const AlgRef& e) {
    int l = intern(e->kids[0]);
    int r = intern(e->kids[1]);
    add_rule({id, l, r}, [this, id, l, r] {
      const std::string cit =
          "gsr(A + B) = max{gsr(A), gsr(B)}, likewise csr and tsr "
          "(Rem. 1.1(1))";
      for (Rank rank : {Rank::Tsr, Rank::Gsr, Rank::Csr})
        max_equal(QRef::of_rank(id, rank),
                  {QRef::of_rank(l, rank), QRef::of_rank(r, rank)}, "R1", cit);
    });
  }

  void register_extension(int id, const AlgRef& e) {
    int j = intern(e->kids[0]);
    int b = intern(e->kids[1]);
    add_rule({j, b}, [this, id, j, b] {
      upper_max(QRef::of_rank(id, Rank::Csr),
                {QRef::of_rank(j, Rank::Csr), QRef::of_rank(b, Rank::Csr)},
                "R5", "csr(A) <= max{csr(J), csr(B)} for 0->J->A->B->0 "
                      "(Rem. 1.1(6))");
      upper_max(QRef::of_rank(id, Rank::Gsr),
                {QRef::of_rank(j, Rank::Gsr), QRef::of_rank(b, Rank::Csr)},
                "R5", "gsr(A) <= max{gsr(J), csr(B)} for 0->J->A->B->0 "
                      "(Rem. 1.1(6))");
    });
    add_rule({id}, [this, id, b] {
      upper_max(QRef::of_rank(b, Rank::Csr),
                {QRef::of_rank(id, Rank::Csr), QRef::of_rank(id, Rank::Tsr)},
                "R25", "csr(B) <= max{csr(A), tsr(A)} for quotients "
                       "(Rem. 1.1(4))");
      upper_max(QRef::of_rank(b, Rank::Gsr),
                {QRef::of_rank(id, Rank::Gsr), QRef::of_rank(id, Rank::Tsr)},
                "R25", "gsr(B) <= max{gsr(A), tsr(A)} for quotients "
                       "(Rem. 1.1(4))");
    });
  }

  void register_limit(int id, const AlgRef& e) {
    std::vector<int> entries;
    entries.reserve(e->kids.size());
    for (const auto& k : e->kids) entries.push_back(intern(k));
    add_rule(entries, [this, id, entries] {
      const std::string cit =
          "csr(lim A_i) <= liminf csr(A_i) <= min over cofinal entries, "
          "likewise gsr (Rem. 1.1(7))";
      for (Rank r : {Rank::Gsr, Rank::Csr}) {
        ExtNat hi = ExtNat::inf();
        std::vector<QRef> inputs;
        for (int n : entries) {
          hi = min(hi, get(QRef::of_rank(n, r)).hi());
          inputs.push_back(QRef::of_rank(n, r));
        }
        meet_q(QRef::of_rank(id, r), RankInterval::at_most(hi), "R6", cit,
               inputs);
      }
    });
  }

  void register_pullback(int id, const AlgRef& e) {
    int b = intern(e->kids[0]);
    int c = intern(e->kids[1]);
    int d = intern(e->kids[2]);
    int td = intern(canon(alg::tensor(space::torus(1), e->kids[2])));
    need_degree(d, 0);
    need_degree(d, 1);

    add_rule({b, c}, [this, id, b, c] {
      upper_max(QRef::of_rank(id, Rank::Tsr),
                {QRef::of_rank(b, Rank::Tsr), QRef::of_rank(c, Rank::Tsr)},
                "R10",
                "tsr(A) <= max{tsr(B), tsr(C)} for pullbacks "
                "(Brown-Pedersen, Sec. 1)");
    });

    add_rule({b, c, d}, [this, id, b, c, d] {
      QRef inj0 = QRef::of_slot(d, inj_slot(0));
      upper_max(QRef::of_rank(id, Rank::Gsr),
                {QRef::of_rank(b, Rank::Csr), QRef::of_rank(c, Rank::Csr),
                 inj0},
                "R11",
                "gsr(A) <= max{csr(B), csr(C), inj_0(D)} for pullbacks "
                "(Thm 2.6)");
      if (get_flag(d, Flag::K1Zero) == TriBool::Yes)
        upper_max(QRef::of_rank(id, Rank::Gsr),
                  {QRef::of_rank(b, Rank::Gsr), QRef::of_rank(c, Rank::Gsr),
                   inj0},
                  "R11",
                  "gsr(A) <= max{gsr(B), gsr(C), inj_0(D)} when K_1(D) = 0 "
                  "(Thm 2.6)");
      upper_max(QRef::of_rank(id, Rank::Csr),
                {QRef::of_rank(b, Rank::Csr), QRef::of_rank(c, Rank::Csr),
                 inj0, QRef::of_slot(d, surj_slot(1))},
                "R12",
                "csr(A) <= max{csr(B), csr(C), inj_0(D), surj_1(D)} for "
                "pullbacks (Thm 2.12)");
    });

    // the slot bounds of Prop. 2.4 feeding the two estimates above
    add_rule({d, td}, [this, d, td] {
      meet_q(QRef::of_slot(d, inj_slot(0)),
             RankInterval::at_most(get(QRef::of_rank(td, Rank::Gsr)).hi()),
             "R11", "inj_0(D) <= gsr(T D) (Prop. 2.4)",
             {QRef::of_rank(td, Rank::Gsr)});
      ExtNat circle_csr = get(QRef::of_rank(td, Rank::Csr)).hi();
      meet_q(QRef::of_slot(d, inj_slot(0)), RankInterval::at_most(circle_csr),
             "R12", "max{inj_0(D), surj_1(D)} <= csr(T D) (Prop. 2.4)",
             {QRef::of_rank(td, Rank::Csr)});
      meet_q(QRef::of_slot(d, surj_slot(1)), RankInterval::at_most(circle_csr),
             "R12", "max{inj_0(D), surj_1(D)} <= csr(T D) (Prop. 2.4)",
             {QRef::of_rank(td, Rank::Csr)});
      meet_q(QRef::of_slot(d, surj_slot(0)),
             RankInterval::at_most(get(QRef::of_rank(d, Rank::Csr)).hi()),
             "R12", "surj_0(D) <= csr(D) (Prop. 2.4)",
             {QRef::of_rank(d, Rank::Csr)});
    });
  }

  void register_rr0(int id, const AlgRef& e) {
    int a = intern(e->kids[0]);
    add_seed([this, id] {
      set_flag(id, Flag::Rr0, TriBool::Yes, "R24",
               "declared real rank zero (Ex. 3.14(4))", {});
      meet_q(QRef::of_slot(id, inj_slot(0)), RankInterval::exact(1), "R24",
             "real rank zero implies inj_0(A) = 1 (Ex. 3.14(4), Lin)", {});
    });
    // rr0(A) denotes A itself; every quantity transfers both ways
    add_rule({id, a}, [this, id, a] {
      const std::string cit =
          "rr0(A) denotes the same algebra as A (Ex. 3.14(4))";
      for (Rank r : {Rank::Tsr, Rank::Gsr, Rank::Csr}) {
        meet_q(QRef::of_rank(id, r), get(QRef::of_rank(a, r)), "R24", cit,
               {QRef::of_rank(a, r)});
        meet_q(QRef::of_rank(a, r), get(QRef::of_rank(id, r)), "R24", cit,
               {QRef::of_rank(id, r)});
      }
      transfer_slots(id, a, "R24", cit);
      transfer_slots(a, id, "R24", cit);
      for (Flag f : {Flag::K1Zero, Flag::Finite, Flag::StablyFinite, Flag::Ibn,
                     Flag::ClassF, Flag::Rr0}) {
        TriBool fa = get_flag(a, f);
        TriBool fi = get_flag(id, f);
        if (fa != TriBool::Unknown) set_flag(id, f, fa, "R24", cit, {});
        if (fi != TriBool::Unknown) set_flag(a, f, fi, "R24", cit, {});
      }
    });
  }

  void transfer_slots(int to, int from, const char* rule,
                      const std::string& cit) {
    const SlotTable& src =
        nodes_[static_cast<std::size_t>(from)].state.slots;
    auto degrees = src.degrees;   // copy: meet_q may mutate the tables
    auto spaces = src.spaces;
    for (const auto& [key, iv] : degrees)
      meet_q(QRef::of_slot(to, key), iv, rule, cit, {QRef::of_slot(from, key)});
    for (const auto& [key, iv] : spaces)
      meet_q(QRef::of_space_slot(to, key), iv, rule, cit,
             {QRef::of_space_slot(from, key)});
  }

  // ---- commutative tensors -------------------------------------------

  void register_tensor(int id, const AlgRef& e) {
    const SpaceRef& x = e->space;  // canonical, never the bare point
    int a = intern(e->kids[0]);
    bool scalar = e->kids[0]->kind == AlgKind::Scalars;

    // split epimorphism by evaluation: csr/gsr of A sit below the tensor
    add_rule({id, a}, [this, id, a] {
      const std::string cit =
          "evaluation splits, so csr(C(X) (x) A) >= csr(A) and likewise gsr "
          "(Rem. 2.3)";
      for (Rank r : {Rank::Gsr, Rank::Csr}) {
        meet_q(QRef::of_rank(id, r),
               RankInterval::at_least(get(QRef::of_rank(a, r)).lo()), "R4",
               cit, {QRef::of_rank(a, r)});
        meet_q(QRef::of_rank(a, r),
               RankInterval::at_most(get(QRef::of_rank(id, r)).hi()), "R4",
               cit, {QRef::of_rank(id, r)});
      }
    });

    SpaceRef xn = normalize_space(x);
    if (!equal(xn, x)) {
      // homotopy-equivalent twin: gsr, csr, the slots and K_1 transfer both
      // ways; tsr is not homotopy invariant and stays put
      int twin = intern(canon(alg::tensor(xn, e->kids[0])));
      add_rule({id, twin}, [this, id, twin] {
        const std::string cit =
            "homotopy equivalent algebras share gsr, csr, K_1 and the "
            "homotopy slots (Thm 1.6)";
        for (Rank r : {Rank::Gsr, Rank::Csr}) {
          meet_q(QRef::of_rank(id, r), get(QRef::of_rank(twin, r)), "R20", cit,
                 {QRef::of_rank(twin, r)});
          meet_q(QRef::of_rank(twin, r), get(QRef::of_rank(id, r)), "R20", cit,
                 {QRef::of_rank(id, r)});
        }
        transfer_slots(id, twin, "R20", cit);
        transfer_slots(twin, id, "R20", cit);
        TriBool k1 = get_flag(twin, Flag::K1Zero);
        if (k1 != TriBool::Unknown) set_flag(id, Flag::K1Zero, k1, "R20", cit, {});
        k1 = get_flag(id, Flag::K1Zero);
        if (k1 != TriBool::Unknown)
          set_flag(twin, Flag::K1Zero, k1, "R20", cit, {});
      });
      return;  // the twin carries the structural tensor rules
    }

    ExtNat dim = dim_upper(x);

    // R13: inj_0 of the tensor is inj_X(A)
    QRef inj_x = (x->kind == SpaceKind::Sphere)
                     ? QRef::of_slot(a, inj_slot(x->dim))
                     : QRef::of_space_slot(a, format_space(x));
    if (x->kind == SpaceKind::Sphere)
      need_degree(a, x->dim);
    else
      need_space_key(a, x);
    add_rule({id, a}, [this, id, inj_x] {
      const std::string cit = "inj_0(C(X) (x) A) = inj_X(A) (Lem. 3.10)";
      meet_q(QRef::of_slot(id, inj_slot(0)), get(inj_x), "R13", cit, {inj_x});
      meet_q(inj_x, get(QRef::of_slot(id, inj_slot(0))), "R13", cit,
             {QRef::of_slot(id, inj_slot(0))});
    });

    // R14: over a suspension the general stable rank is exactly
    // max{gsr(A), inj_X(A)}
    std::optional<QRef> inner_inj;
    if (x->kind == SpaceKind::Sphere && x->dim >= 1) {
      inner_inj = QRef::of_slot(a, inj_slot(x->dim - 1));
      need_degree(a, x->dim - 1);
    } else if (x->kind == SpaceKind::Suspension) {
      inner_inj = QRef::of_space_slot(a, format_space(x->a));
      need_space_key(a, x->a);
    }
    if (inner_inj) {
      add_rule({id, a}, [this, id, a, inner = *inner_inj] {
        max_equal(QRef::of_rank(id, Rank::Gsr),
                  {QRef::of_rank(a, Rank::Gsr), inner}, "R14",
                  "gsr(C(Sigma X) (x) A) = max{gsr(A), inj_X(A)} (Thm 3.9)");
      });
    }

    // a circle factor of the spectrum is a suspension coordinate:
    // C(T x Y) (x) A = T (C(Y) (x) A), so Thm 3.9 applies with S^0.
    // A torus factor carries circles too, but splitting one off is only
    // done when no explicit circle exists, to keep T^d x T factors cheap.
    if (x->kind == SpaceKind::Product) {
      std::vector<SpaceRef> factors;
      product_factors(x, factors);
      auto circle = std::find_if(factors.begin(), factors.end(),
                                 [](const SpaceRef& f) {
                                   return f->kind == SpaceKind::Sphere &&
                                          f->dim == 1;
                                 });
      std::vector<SpaceRef> rest(factors.begin(), factors.end());
      bool peeled = false;
      if (circle != factors.end()) {
        rest.erase(rest.begin() + (circle - factors.begin()));
        peeled = true;
      } else {
        // canonical products hold tori of dimension >= 2 only
        auto torus = std::find_if(factors.begin(), factors.end(),
                                  [](const SpaceRef& f) {
                                    return f->kind == SpaceKind::Torus;
                                  });
        if (torus != factors.end()) {
          rest[static_cast<std::size_t>(torus - factors.begin())] =
              space::torus((*torus)->dim - 1);
          peeled = true;
        }
      }
      if (peeled) {
        SpaceRef rest_space = refold_product(rest);
        int base = intern(canon(alg::tensor(rest_space, e->kids[0])));
        need_degree(base, 0);
        add_rule({id, base}, [this, id, base] {
          max_equal(QRef::of_rank(id, Rank::Gsr),
                    {QRef::of_rank(base, Rank::Gsr),
                     QRef::of_slot(base, inj_slot(0))},
                    "R14",
                    "gsr(T B) = max{gsr(B), inj_0(B)} with B = C(Y) (x) A "
                    "(Thm 3.9)");
        });
        if (scalar) {
          int susp = intern(canon(
              alg::tensor(canon_space(space::susp(rest_space)), e->kids[0])));
          add_rule({id, base, susp}, [this, id, base, susp] {
            max_equal(
                QRef::of_rank(id, Rank::Gsr),
                {QRef::of_rank(base, Rank::Gsr),
                 QRef::of_rank(susp, Rank::Gsr)},
                "R19",
                "gsr(C(T x Y)) = max{gsr(C(Y)), gsr(C(Sigma Y))} (Cor. 4.2)");
          });
        }
      }
    }

    // R15: csr bound through the slots of A up to the covering dimension
    if (dim.is_finite()) {
      std::uint64_t n = dim.value();
      std::uint64_t capped = std::min(n, kDegreeCap);
      for (std::uint64_t k = 1; k <= capped; ++k) {
        need_degree(a, k);
        need_degree(a, k - 1);
      }
      bool tail = n > kDegreeCap;
      std::optional<std::vector<std::uint64_t>> tail_blocks;
      if (is_finite_dim_like(e->kids[0]))
        tail_blocks = block_sizes(e->kids[0]);
      add_rule({id, a}, [this, id, a, n, capped, tail, tail_blocks] {
        const std::string cit =
            "csr(C(X) (x) A) <= max{csr(A), surj_k(A), inj_{k-1}(A) : "
            "1 <= k <= dim X} (Thm 3.12)";
        std::vector<QRef> terms{QRef::of_rank(a, Rank::Csr)};
        for (std::uint64_t k = 1; k <= capped; ++k) {
          terms.push_back(QRef::of_slot(a, surj_slot(k)));
          terms.push_back(QRef::of_slot(a, inj_slot(k - 1)));
        }
        ExtNat hi = 0;
        for (const auto& t : terms) hi = max(hi, get(t).hi());
        if (tail) {
          // degrees past the cap: closed forms where available
          if (tail_blocks) {
            hi = max(hi, ExtNat(bott_stable_bound(
                             n, *std::min_element(tail_blocks->begin(),
                                                  tail_blocks->end()))));
          } else if (get_flag(a, Flag::ClassF) == TriBool::Yes) {
            hi = max(hi, ExtNat(2));
          } else {
            hi = ExtNat::inf();
          }
        }
        meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::at_most(hi), "R15",
               cit, terms);
      });
    }

    // Lem. 3.11: slots of a sphere tensor from the slots of A
    if (x->kind == SpaceKind::Sphere) {
      std::uint64_t n = x->dim + 1;
      need_degree(a, 1);
      need_degree(a, n);
      need_degree(a, n - 1);
      add_rule({id, a}, [this, id, a, n] {
        const std::string cit =
            "max{inj_0(D), surj_1(D)} <= max{surj_1(A), surj_n(A), "
            "inj_{n-1}(A)} for D = C(S^{n-1}) (x) A (Lem. 3.11)";
        RankInterval bound = slots_sphere_tensor(
            nodes_[static_cast<std::size_t>(a)].state.slots, n);
        std::vector<QRef> inputs{QRef::of_slot(a, surj_slot(1)),
                                 QRef::of_slot(a, surj_slot(n)),
                                 QRef::of_slot(a, inj_slot(n - 1))};
        meet_q(QRef::of_slot(id, inj_slot(0)), bound, "R15", cit, inputs);
        meet_q(QRef::of_slot(id, surj_slot(1)), bound, "R15", cit, inputs);
      });
    }

    // R16: rigidity over class F
    add_rule({id, a}, [this, id, a] {
      if (get_flag(a, Flag::ClassF) != TriBool::Yes) return;
      const std::string cit =
          "for A in class F, gsr(C(X) (x) A) = gsr(A) and csr is csr(A) "
          "when csr(A) >= 2, else at most 2 (Thm 3.13)";
      QRef tg = QRef::of_rank(id, Rank::Gsr);
      QRef ag = QRef::of_rank(a, Rank::Gsr);
      meet_q(tg, get(ag), "R16", cit, {ag});
      meet_q(ag, get(tg), "R16", cit, {tg});
      QRef tc = QRef::of_rank(id, Rank::Csr);
      QRef ac = QRef::of_rank(a, Rank::Csr);
      ExtNat cap = max(ExtNat(2), get(ag).hi());
      meet_q(tc, RankInterval::at_most(cap), "R16", cit, {ag});
      if (get(ac).lo() >= ExtNat(2)) {
        meet_q(tc, get(ac), "R16", cit, {ac});
        meet_q(ac, get(tc), "R16", cit, {tc});
      }
    });

    if (scalar) register_scalar_tensor(id, x, dim);

    // csr(T A) = 2 for a simple infinite-dimensional unital AF algebra
    if (e->kids[0]->kind == AlgKind::SimpleAf &&
        x->kind == SpaceKind::Sphere && x->dim == 1) {
      add_seed([this, id] {
        meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(2), "R24",
               "K_1(T A) != 0 for stably finite A, so csr(T A) = 2 "
               "(Ex. 3.14(1))",
               {});
      });
    }
  }

  void register_scalar_tensor(int id, const SpaceRef& x, ExtNat dim) {
    // R21 (Nistor) and R22 (low dimension) are constants of the spectrum
    if (dim.is_finite()) {
      ExtNat nistor = ceil_div(dim, 2).succ();
      add_seed([this, id, nistor] {
        meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::at_most(nistor),
               "R21", "csr(C(X)) <= ceil(dim X / 2) + 1 (Cor. 4.6, Nistor)",
               {});
      });
      if (dim <= ExtNat(4))
        add_seed([this, id] {
          meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(1), "R22",
                 "gsr(C(X)) = 1 when dim X <= 4 (Sec. 4.1, Nica)", {});
        });
    }

    // R23: closed forms for spheres and tori
    if (x->kind == SpaceKind::Sphere) {
      ExtNat g = gsr_commutative_sphere(x->dim);
      add_seed([this, id, g] {
        meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(g), "R23",
               "gsr(C(S^d)) piecewise in d (Ex. 3.2, Nica)", {});
      });
      if (x->dim == 1)
        add_seed([this, id] {
          meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(2), "R23",
                 "the circle is the 1-torus: csr(C(T^d)) = ceil(d/2) + 1 "
                 "(Sec. 4.1, Nica)",
                 {});
        });
    } else if (x->kind == SpaceKind::Torus) {
      ExtNat g = gsr_commutative_torus(x->dim);
      ExtNat c = csr_commutative_torus(x->dim);
      add_seed([this, id, g, c] {
        meet_q(QRef::of_rank(id, Rank::Gsr), RankInterval::exact(g), "R23",
               "gsr(C(T^d)): 1 for d <= 4, ceil(d/2) + 1 above (Ex. 4.4)",
               {});
        meet_q(QRef::of_rank(id, Rank::Csr), RankInterval::exact(c), "R23",
               "csr(C(T^d)) = ceil(d/2) + 1 (Sec. 4.1, Nica)", {});
      });
    }

    // R18: wedges split exactly
    if (x->kind == SpaceKind::Wedge) {
      std::vector<SpaceRef> parts;
      wedge_summands(x, parts);
      std::vector<int> comps;
      comps.reserve(parts.size());
      for (const auto& p : parts)
        comps.push_back(intern(canon(alg::tensor(p, alg::scalars()))));
      std::vector<int> reads = comps;
      reads.push_back(id);
      add_rule(reads, [this, id, comps] {
        const std::string cit =
            "gsr(C(X v Y)) = max{gsr(C(X)), gsr(C(Y))}, likewise csr "
            "(Cor. 4.1)";
        for (Rank r : {Rank::Gsr, Rank::Csr}) {
          std::vector<QRef> args;
          args.reserve(comps.size());
          for (int c : comps) args.push_back(QRef::of_rank(c, r));
          max_equal(QRef::of_rank(id, r), args, "R18", cit);
        }
      });
    }

    // Lem. 4.3: a suspended product of spheres/tori dominates the top sphere
    if (x->kind == SpaceKind::Suspension) {
      std::vector<SpaceRef> factors;
      bool all_st = true;
      std::function<void(const SpaceRef&)> walk = [&](const SpaceRef& s) {
        if (s->kind == SpaceKind::Product) {
          walk(s->a);
          walk(s->b);
        } else if (s->kind == SpaceKind::Sphere ||
                   s->kind == SpaceKind::Torus) {
          factors.push_back(s);
        } else {
          all_st = false;
        }
      };
      walk(x->a);
      if (all_st && !factors.empty()) {
        ExtNat n = dim_upper(x->a);
        if (n.is_finite())
          intern(canon(alg::tensor(space::sphere(n.value() + 1),
                                   alg::scalars())));
      }
    }
  }

  // R20 over every pair of commutative tensor nodes with a known
  // domination fact between their spectra.
  void register_domination_rules() {
    struct Entry {
      int node;
      SpaceRef x;
    };
    std::vector<Entry> tensors;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      const AlgRef& e = nodes_[static_cast<std::size_t>(i)].expr;
      if (e->kind == AlgKind::CommTensor &&
          e->kids[0]->kind == AlgKind::Scalars)
        tensors.push_back({i, e->space});
    }
    for (const auto& upper : tensors) {
      for (const auto& lower : tensors) {
        if (upper.node == lower.node) continue;
        if (dominates(upper.x, lower.x) != TriBool::Yes) continue;
        int un = upper.node, ln = lower.node;
        add_rule({ln}, [this, un, ln] {
          const std::string cit =
              "homotopy domination pushes lower bounds up: csr(A) >= csr(B) "
              "and gsr(A) >= gsr(B) (Thm 1.6, Lem. 4.3)";
          for (Rank r : {Rank::Gsr, Rank::Csr})
            meet_q(QRef::of_rank(un, r),
                   RankInterval::at_least(get(QRef::of_rank(ln, r)).lo()),
                   "R20", cit, {QRef::of_rank(ln, r)});
        });
      }
    }
  }

  // ---- axioms ---------------------------------------------------------

  void resolve_axioms(const AlgRef& original,
                      const std::vector<Axiom>& axioms) {
    for (const auto& ax : axioms) {
      AlgRef target = original;
      if (!ax.node_path.empty()) {
        std::size_t pos = 0;
        while (pos < ax.node_path.size()) {
          std::size_t dot = ax.node_path.find('.', pos);
          std::string part = ax.node_path.substr(
              pos, dot == std::string::npos ? std::string::npos : dot - pos);
          std::size_t idx = 0;
          try {
            idx = std::stoul(part);
          } catch (const std::exception&) {
            throw std::invalid_argument("axiom node path: bad index '" +
                                        part + "'");
          }
          if (idx >= target->kids.size())
            throw std::invalid_argument("axiom node path out of range: " +
                                        ax.node_path);
          target = target->kids[idx];
          pos = dot == std::string::npos ? ax.node_path.size() : dot + 1;
        }
      }
      int id = intern(canon(target));
      add_seed([this, id, ax] {
        static const std::map<std::string, Rank> ranks{
            {"tsr", Rank::Tsr}, {"gsr", Rank::Gsr}, {"csr", Rank::Csr}};
        static const std::map<std::string, Flag> flags{
            {"k1_zero", Flag::K1Zero},
            {"finite", Flag::Finite},
            {"stably_finite", Flag::StablyFinite},
            {"ibn", Flag::Ibn},
            {"class_f", Flag::ClassF},
            {"real_rank_zero", Flag::Rr0}};
        if (auto it = ranks.find(ax.quantity); it != ranks.end()) {
          if (!ax.interval)
            throw std::invalid_argument("axiom on " + ax.quantity +
                                        " needs an interval");
          meet_q(QRef::of_rank(id, it->second), *ax.interval, "AXIOM",
                 "user axiom", {});
        } else if (auto fit = flags.find(ax.quantity); fit != flags.end()) {
          if (!ax.flag)
            throw std::invalid_argument("axiom on " + ax.quantity +
                                        " needs a yes/no value");
          set_flag(id, fit->second, *ax.flag, "AXIOM", "user axiom", {});
        } else {
          throw std::invalid_argument("axiom on unknown quantity '" +
                                      ax.quantity + "'");
        }
      });
    }
  }
};

}  // namespace

InferResult infer(const AlgRef& expr, const std::vector<Axiom>& axioms,
                  const InferOptions& options) {
  Engine engine(expr, axioms, options);
  return engine.run();
}

std::vector<Step> explain(const InferResult& result, int node,
                          const std::string& quantity) {
  const auto& steps = result.trace.steps;
  std::set<std::size_t> chain;
  std::vector<std::pair<int, std::string>> frontier{{node, quantity}};
  bool found_any = false;

  // last step on each (node, quantity) before a given index
  auto last_before = [&](int n, const std::string& q,
                         std::size_t before) -> std::optional<std::size_t> {
    for (std::size_t i = std::min(before, steps.size()); i-- > 0;)
      if (steps[i].node == n && steps[i].quantity == q) return i;
    return std::nullopt;
  };

  // seed with every step on the requested quantity: each one tightened an
  // endpoint of the final bound
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i].node == node && steps[i].quantity == quantity) {
      chain.insert(i);
      found_any = true;
    }
  if (!found_any)
    throw std::invalid_argument("explain: no derivation step for quantity '" +
                                quantity + "' on that node");

  std::vector<std::size_t> work(chain.begin(), chain.end());
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    for (const auto& [n, q] : steps[i].inputs)
      if (auto j = last_before(n, q, i))
        if (chain.insert(*j).second) work.push_back(*j);
  }

  std::vector<Step> out;
  out.reserve(chain.size());
  for (std::size_t i : chain) out.push_back(steps[i]);
  return out;
}

std::vector<Violation> check_consistency(const InferResult& result) {
  std::vector<Violation> out;
  for (int i = 0; i < static_cast<int>(result.nodes.size()); ++i) {
    const RankState& s = result.nodes[static_cast<std::size_t>(i)].state;
    auto bad = [&](const std::string& what) { out.push_back({i, what}); };
    if (s.gsr.hi() > s.csr.hi())
      bad("gsr.hi > csr.hi (" + s.gsr.str() + " vs " + s.csr.str() + ")");
    if (s.csr.hi() > s.tsr.hi().succ())
      bad("csr.hi > tsr.hi + 1 (" + s.csr.str() + " vs " + s.tsr.str() + ")");
    for (const auto& [key, iv] : s.slots.degrees)
      if (iv.lo() > iv.hi()) bad("invalid slot " + slot_name(key));
  }
  return out;
}

}  // namespace stablerank
