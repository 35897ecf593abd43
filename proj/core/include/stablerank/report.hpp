#pragma once

// Query reports: the root quantities, flags, and optionally the trace, with
// a stable JSON shape:
//   {"query": str, "tsr": {"lo": int|"inf", "hi": int|"inf"}, "gsr": {...},
//    "csr": {...}, "flags": {...}, "trace": [steps], "engine": str}
// Identical input and options produce byte-identical output.

#include <optional>
#include <string>

#include "stablerank/engine.hpp"

namespace stablerank {

inline constexpr const char* kEngineVersion = "stablerank 0.1.0";

struct Report {
  std::string query;
  RankInterval tsr, gsr, csr;
  TriBool k1_zero, finite, stably_finite, ibn, class_f, real_rank_zero;
  std::optional<Derivation> trace;
  std::string engine_version = kEngineVersion;
};

Report make_report(const std::string& query, const InferResult& result,
                   bool include_trace);

std::string to_json(const Report& report);
std::string to_text(const Report& report);

}  // namespace stablerank
