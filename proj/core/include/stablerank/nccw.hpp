#pragma once

// Noncommutative CW-complex descriptors: a finite-dimensional base and an
// ordered list of stages, each gluing C(D^k) (x) F_k along the boundary
// restriction onto C(S^{k-1}) (x) F_k.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stablerank/extnat.hpp"

namespace stablerank {

struct NccwComplex {
  std::vector<std::uint64_t> base_blocks;  // block sizes of the 0-stage

  struct Stage {
    std::uint64_t k = 1;                  // stage dimension, >= 1
    std::vector<std::uint64_t> blocks;    // block sizes of F_k, all >= 1
  };
  std::vector<Stage> stages;

  void validate() const {
    if (base_blocks.empty())
      throw std::invalid_argument("nccw: empty base");
    for (auto b : base_blocks)
      if (b < 1) throw std::invalid_argument("nccw: base blocks >= 1");
    for (const auto& s : stages) {
      if (s.k < 1) throw std::invalid_argument("nccw: stage dimension >= 1");
      if (s.blocks.empty())
        throw std::invalid_argument("nccw: empty stage algebra");
      for (auto b : s.blocks)
        if (b < 1) throw std::invalid_argument("nccw: stage blocks >= 1");
    }
  }
};

// max over stages of ceil(k/(2 d_k)) + 1 with d_k the minimal block size of
// F_k; 1 when there are no stages. Never exceeds ceil(n/2) + 1 for n the
// maximal stage dimension.
ExtNat csr_upper_nccw(const NccwComplex& complex);

}  // namespace stablerank
