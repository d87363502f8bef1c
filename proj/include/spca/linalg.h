#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spca/matrix.h"

namespace spca {

inline constexpr double kDefaultTolRank = 1e-10;
inline constexpr int kJacobiSweepLimit = 100;
inline constexpr double kJacobiOffDiagonalTol = 1e-12;

// K ~= R R^T with R of size n x rank. Columns are in pivot order, so their
// norms decrease.
class PsdFactor {
 public:
  PsdFactor(Matrix factor, std::vector<std::size_t> pivots)
      : factor_(std::move(factor)), pivots_(std::move(pivots)) {}

  std::size_t n() const { return factor_.rows(); }
  std::size_t rank() const { return factor_.cols(); }
  const Matrix& factor() const { return factor_; }
  std::span<const double> row(std::size_t j) const { return factor_.row(j); }
  Matrix rows(std::span<const std::size_t> indices) const {
    return factor_.select_rows(indices);
  }
  // Original row index chosen at each elimination step.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  Matrix factor_;
  std::vector<std::size_t> pivots_;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

struct PcaResult {
  double value = 0.0;
  Matrix components;  // dim x d, orthonormal columns
};

// Cholesky with complete (diagonal) pivoting. Elimination stops once the
// largest remaining pivot is <= tol_rank * max(diag(K)).
PsdFactor pivoted_cholesky(const SymmetricMatrix& k,
                           double tol_rank = kDefaultTolRank);

// Cyclic Jacobi. Eigenvectors are sign-normalised so that their first
// non-negligible coordinate is positive.
EigenResult symmetric_eig(const SymmetricMatrix& a);

// max trace(X^T A X) over dim x d matrices with orthonormal columns.
PcaResult solve_pca(const SymmetricMatrix& a, std::size_t d);

// Sum of the top-d eigenvalues only; skips the eigenvector bookkeeping.
double top_eigenvalue_sum(const SymmetricMatrix& a, std::size_t d);

}  // namespace spca
