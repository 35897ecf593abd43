#pragma once

// Seeded pseudo-random expression corpus and the embedded consistency
// check: the closed-form examples, soundness of every corpus report,
// order-independence of the fixpoint, and the parse/format round trip.

#include <cstdint>
#include <string>
#include <vector>

#include "stablerank/engine.hpp"

namespace stablerank {

std::vector<AlgRef> make_corpus(std::size_t count, std::uint64_t seed);

// Exact rank values the engine axiomatizes for this (canonical) expression;
// recomputed here independently of the engine so reports can be audited.
struct KnownExact {
  std::string quantity;  // "tsr" | "gsr" | "csr"
  ExtNat value;
};
std::vector<KnownExact> known_exact_values(const AlgRef& expr);

// Deterministic digest of every node state of a result, trace excluded.
std::string state_signature(const InferResult& result);

// Runs the whole embedded check; returns one message per failure.
std::vector<std::string> run_self_check(std::size_t corpus_size = 1000);

}  // namespace stablerank
