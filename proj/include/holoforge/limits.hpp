#pragma once

#include <cstdint>

namespace holoforge {

// Size limits for the exhaustive algorithms. Every operation that enumerates
// elements checks the relevant bound up front and throws kThresholdExceeded.
struct Limits {
  std::uint64_t enumeration = 20000;    // element lists, centers, normal subgroups
  std::uint64_t generic_aut = 512;      // |G| for backtracking automorphism groups
  std::uint64_t isomorphism = 50000;    // |G| for generic isomorphism search
  std::uint64_t gl_enumeration = 20000; // |GL(n,p)| for explicit enumeration
  std::uint64_t degree = 1u << 20;      // points for matrix/affine actions
  std::uint64_t coset_budget = 1000000; // live cosets in coset enumeration
};

// Process-wide defaults; HOLOFORGE_BUDGET is folded into coset_budget the
// first time this is called.
Limits& default_limits();

}  // namespace holoforge
