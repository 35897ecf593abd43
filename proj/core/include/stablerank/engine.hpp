#pragma once

// The rule catalog and the worklist fixpoint. infer() assigns a RankState
// to every node of an algebra expression (including derived nodes such as
// the circle tensor over a pullback fiber), running all rules to a fixpoint
// of monotone meets. Every interval in the result is a sound enclosure and
// every tightening is traced.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablerank/algebra.hpp"
#include "stablerank/state.hpp"

namespace stablerank {

// A meet produced an empty interval or a Yes/No flag clash. This aborts the
// whole inference: sound rules cannot contradict each other, so either a
// user axiom is wrong or a rule is buggy. The message names both
// contributing derivations.
class InconsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Node or step budget exhausted (see StablerankLimits / STABLERANK_MAX_NODES).
class LimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// User-supplied fact, merged before iteration and trace-tagged AXIOM.
// node_path addresses a subexpression of the input by dot-joined child
// indices ("" is the root, "0.1" the second child of the first child).
struct Axiom {
  std::string node_path;
  std::string quantity;  // "tsr" | "gsr" | "csr" | flag name
  std::optional<RankInterval> interval;
  std::optional<TriBool> flag;
};

struct InferOptions {
  std::uint64_t rule_seed = 0;   // permutes rule firing order; 0 = natural
  std::size_t max_nodes = 0;     // 0 = STABLERANK_MAX_NODES env or 10000
};

struct NodeReport {
  AlgRef expr;
  std::string name;  // canonical text, also the node key
  RankState state;
};

struct InferResult {
  std::vector<NodeReport> nodes;
  int root = 0;
  Derivation trace;

  const RankState& root_state() const { return nodes[root].state; }
};

InferResult infer(const AlgRef& expr, const std::vector<Axiom>& axioms = {},
                  const InferOptions& options = {});

// Minimal ordered chain of steps whose outputs feed the final bound on the
// given quantity of the given node. Throws std::invalid_argument when the
// node or quantity has no recorded step.
std::vector<Step> explain(const InferResult& result, int node,
                          const std::string& quantity);

struct Violation {
  int node = 0;
  std::string what;
};

// Empty iff every node satisfies gsr.hi <= csr.hi <= tsr.hi + 1 and all
// interval validity invariants.
std::vector<Violation> check_consistency(const InferResult& result);

}  // namespace stablerank
