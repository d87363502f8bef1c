#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spca/arrangement.h"
#include "spca/execution.h"
#include "spca/extension.h"
#include "spca/linalg.h"

namespace spca {

using Support = std::vector<std::size_t>;  // sorted, 0-based

enum class CellMode { kExact, kRandomized };

struct SolverOptions {
  double tol_rank = kDefaultTolRank;
  Execution execution = Execution::kParallel;
  CellMode cell_mode = CellMode::kExact;
  std::size_t random_samples = 20000;  // kRandomized only
  std::uint64_t seed = 0;              // kRandomized only
};

// Objectives within this relative gap count as tied; ties go to the
// lexicographically smallest support.
inline constexpr double kObjectiveTieTol = 1e-10;

// max trace(X^T K X) over n x d X with X^T X = I and at most s nonzero rows.
class SpcaInstance {
 public:
  // Throws InvalidParameters unless 1 <= d <= s <= n; factorization errors
  // propagate.
  SpcaInstance(SymmetricMatrix k, std::size_t d, std::size_t s,
               double tol_rank = kDefaultTolRank);

  const SymmetricMatrix& k() const { return k_; }
  std::size_t n() const { return k_.dim(); }
  std::size_t d() const { return d_; }
  std::size_t s() const { return s_; }
  const PsdFactor& factor() const { return factor_; }
  std::size_t rank() const { return factor_.rank(); }
  // d' = min(d, r): columns of the reduced variable Y.
  std::size_t reduced_components() const { return std::min(d_, rank()); }

 private:
  SymmetricMatrix k_;
  std::size_t d_;
  std::size_t s_;
  PsdFactor factor_;
};

struct SpcaTimings {
  double arrangement_ms = 0.0;  // hyperplanes, cells and per-cell supports
  double evaluation_ms = 0.0;
  double recovery_ms = 0.0;
};

struct SpcaDiagnostics {
  std::size_t rank = 0;
  std::size_t extension_dim = 0;
  std::size_t hyperplanes = 0;             // after dropping ties and parallels
  std::size_t identical_row_pairs = 0;     // pairs with l_j == l_j' exactly
  std::size_t cells_enumerated = 0;
  std::size_t candidates_evaluated = 0;    // distinct supports
  std::size_t nonzero_rows = 0;            // rows of X above 1e-12
  SignVector best_cell_signs;
  bool shortcut = false;                   // r = 0 or s = n: no enumeration
  SpcaTimings timings;
};

struct SpcaSolution {
  Support support;  // |support| = s
  Matrix x;         // n x d
  double objective = 0.0;
  SpcaDiagnostics diagnostics;
};

struct SpcaCandidates {
  std::vector<Support> supports;  // distinct, sorted
  std::vector<std::size_t> first_cell;  // a cell index that produced each support
  std::vector<Cell> cells;
  std::size_t hyperplanes = 0;
  std::size_t identical_row_pairs = 0;
};

// The s largest values, ties to the smaller index; returned sorted.
Support top_s_support(const std::vector<double>& values, std::size_t s);

// Top-s support of l_j(z) over the given functionals.
Support candidate_support_from_point(const ExtendedPoint& z,
                                     const std::vector<ExtendedFunctional>& functionals,
                                     std::size_t s);

// l_j for every row of the factor, over E with d' components.
std::vector<ExtendedFunctional> row_functionals(const SpcaInstance& instance);

// One support per arrangement cell of the hyperplanes l_j = l_j', deduplicated.
// Requires rank >= 1.
SpcaCandidates enumerate_candidate_supports(const SpcaInstance& instance,
                                            const SolverOptions& options = {});

// sum of the top-d' eigenvalues of R_S^T R_S.
double evaluate_support(const SpcaInstance& instance, const Support& support);

SpcaSolution solve_spca(const SpcaInstance& instance,
                        const SolverOptions& options = {});

}  // namespace spca
