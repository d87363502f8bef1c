#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "spca/execution.h"
#include "spca/extension.h"

namespace spca {

// Margins at or below this are treated as "not strictly inside".
inline constexpr double kMinWitnessMargin = 1e-9;

// Central hyperplane {z : normal . z = 0}.
struct Hyperplane {
  std::vector<double> normal;
  std::size_t tag = 0;
};

using SignVector = std::vector<std::int8_t>;

struct Cell {
  SignVector signs;       // +1 / -1 per input hyperplane
  ExtendedPoint witness;  // strictly inside
  double margin = 0.0;    // min_h |normal_h . witness|, w.r.t. the given normals
};

struct Witness {
  ExtendedPoint point;
  double margin = 0.0;
};

// Max-margin point of the open region {z : signs[h] * (normal_h . z) > 0}
// inside the box |z|_inf <= 1. nullopt when the best margin is
// <= kMinWitnessMargin.
std::optional<Witness> witness_for_signs(const std::vector<Hyperplane>& hyperplanes,
                                         const SignVector& signs,
                                         std::size_t dim);

struct ArrangementOptions {
  Execution execution = Execution::kParallel;
};

// All full-dimensional cells, by incremental insertion. Output is sorted
// lexicographically by sign vector (-1 before +1, hyperplanes in input
// order) so it does not depend on scheduling. Throws Degenerate on a zero
// normal and DimensionMismatch on a wrongly sized one.
std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hyperplanes,
                                  std::size_t dim,
                                  const ArrangementOptions& options = {});

// Approximate mode for benchmarking: cells hit by `samples` Gaussian
// directions. Never authoritative; may miss thin cells.
std::vector<Cell> sample_cells(const std::vector<Hyperplane>& hyperplanes,
                               std::size_t dim, std::size_t samples,
                               std::uint64_t seed);

// Drops hyperplanes that are parallel (up to sign and scale) to an earlier
// one. Comparison is on unit normals with an absolute tolerance.
std::vector<Hyperplane> deduplicate_hyperplanes(
    const std::vector<Hyperplane>& hyperplanes, double tol = 1e-12);

SignVector sign_vector(const std::vector<Hyperplane>& hyperplanes,
                       const std::vector<double>& z);

// 2 * sum_{k<q} C(p-1, k): cell count of p central hyperplanes in general
// position in R^q.
std::uint64_t generic_central_cell_count(std::size_t p, std::size_t q);

}  // namespace spca
