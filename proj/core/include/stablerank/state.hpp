#pragma once

// Per-node rank state and the derivation trace. Every tightening of an
// interval, slot, or flag is recorded as a step carrying the rule id, its
// citation anchor, and the inputs the bound was computed from.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/extnat.hpp"
#include "stablerank/slots.hpp"

namespace stablerank {

struct RankState {
  RankInterval tsr;
  RankInterval gsr;
  RankInterval csr;
  SlotTable slots;
  TriBool k1_zero = TriBool::Unknown;
  TriBool finite = TriBool::Unknown;
  TriBool stably_finite = TriBool::Unknown;
  TriBool ibn = TriBool::Unknown;
  TriBool class_f = TriBool::Unknown;
  TriBool real_rank_zero = TriBool::Unknown;
};

struct Step {
  std::string rule;      // "R1".."R26" or "AXIOM"
  std::string citation;
  int node = 0;
  std::string node_name;
  std::string quantity;  // "tsr", "gsr", "csr", "inj_3", "inj[X]", flag name
  std::string before;
  std::string after;
  std::vector<std::pair<int, std::string>> inputs;  // (node, quantity) pairs
};

struct Derivation {
  std::vector<Step> steps;
};

}  // namespace stablerank
