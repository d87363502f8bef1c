#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spca/execution.h"
#include "spca/matrix.h"
#include "spca/spca_ds.h"

namespace spca {

inline constexpr std::uint64_t kOracleEnumerationCap = 1'000'000;
// Entries within this (relative above 1) of the best are reported as maximizers.
inline constexpr double kOracleTieTol = 1e-10;

struct OracleReport {
  double objective = 0.0;
  // Every maximizer, sorted lexicographically. Plain SPCA reports one-element
  // families.
  std::vector<SupportFamily> argmax_supports;
  std::uint64_t instances_enumerated = 0;
};

// max over |S| = s of the top-d eigenvalue sum of K_SS. Throws TooLarge past
// `cap` subsets and InvalidParameters unless 1 <= d <= s <= n.
OracleReport brute_force_spca(const SymmetricMatrix& k, std::size_t d, std::size_t s,
                              Execution execution = Execution::kParallel,
                              std::uint64_t cap = kOracleEnumerationCap);

// max over maps [n] -> {none, 0..d-1} with class sizes in [1, s] of
// sum_i lambda_max(K_{S_i S_i}). Throws TooLarge past `cap` maps.
OracleReport brute_force_spca_ds(const SymmetricMatrix& k, std::size_t d,
                                 std::size_t s,
                                 Execution execution = Execution::kParallel,
                                 std::uint64_t cap = kOracleEnumerationCap);

}  // namespace spca
