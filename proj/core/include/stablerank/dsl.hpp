#pragma once

// Text syntax for algebra and space expressions.
//
//   algebra := "C" | "F(" nat {"," nat} ")" | "M(" nat "," algebra ")"
//            | algebra "(+)" algebra | "Cx(" space ")" ["*" algebra]
//            | "pullback(" algebra "," algebra ";" algebra ")"
//            | "ext(" algebra "," algebra ")"
//            | "limit(" algebra {"," algebra} ")" | "nccw(" nccwspec ")"
//            | atom
//   space   := "pt" | "S(" nat ")" | "T(" nat ")" | "D(" nat ")"
//            | "I(" nat ")" | "prod(" space "," space ")"
//            | "wedge(" space "," space ")" | "susp(" space ")"
//            | "cw(" nat ")"
//   nccwspec := "F(" nat {"," nat} ")" {";" nat ":" "F(" nat {"," nat} ")"}
//   atom    := "AF" | "rot" | "cuntz(" nat ")" | "Oinf" | "kirchberg_ibn"
//            | "pisc" | "zstable(" algebra ")" | "rr0(" algebra ")"
//
// Whitespace is insignificant. "(+)" is left-associative and binds loosest;
// the "*" after "Cx(X)" binds one primary expression. "Cx(X)" alone means
// Cx(X)*C. Parsing never throws: malformed input yields a ParseError with a
// 1-based byte offset.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablerank/algebra.hpp"

namespace stablerank {

struct ParseError {
  std::size_t offset = 0;  // 1-based; len + 1 points past the end
  std::vector<std::string> expected;
  std::string message;
};

struct ParseResult {
  AlgRef expr;
  std::optional<ParseError> error;
  bool ok() const { return expr != nullptr; }
};

ParseResult parse(std::string_view src);

// Canonical text: the expression is canonicalized (see canon) and printed.
// parse(format(e)) structurally equals canon(e) for every expression, and
// format is a fixed point after one parse/format cycle.
std::string format(const AlgRef& expr);

}  // namespace stablerank
