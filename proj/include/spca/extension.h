#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spca/matrix.h"

namespace spca {

// Index of the monomial y_{k,i} * y_{k',i} (k <= k') in the extended space.
struct MonomialIndex {
  std::size_t component;
  std::size_t k;
  std::size_t k2;
  friend bool operator==(const MonomialIndex&, const MonomialIndex&) = default;
};

// The space E of per-column degree-2 monomials for `components` columns
// y_i in R^rank. Coordinates are ordered lexicographically by (i, k, k').
class ExtensionSpace {
 public:
  ExtensionSpace(std::size_t rank, std::size_t components);

  std::size_t rank() const { return rank_; }
  std::size_t components() const { return components_; }
  std::size_t block_size() const { return rank_ * (rank_ + 1) / 2; }
  std::size_t dim() const { return components_ * block_size(); }

  std::size_t index(std::size_t component, std::size_t k, std::size_t k2) const;
  MonomialIndex monomial(std::size_t flat) const;

 private:
  std::size_t rank_;
  std::size_t components_;
};

struct ExtendedPoint {
  std::vector<double> coords;
};

// Linear functional on E. `tag` records where it came from: a row index j
// for the SPCA functionals, a circuit id for the disjoint-support ones.
struct ExtendedFunctional {
  std::vector<double> coeffs;
  std::size_t tag = 0;

  double operator()(std::span<const double> z) const { return dot(coeffs, z); }
  double operator()(const ExtendedPoint& z) const { return dot(coeffs, z.coords); }
  // Exact test: every coefficient is 0.0.
  bool is_zero() const;
};

// ext(Y) for Y of size rank x components. Throws DimensionMismatch.
ExtendedPoint ext(const ExtensionSpace& space, const Matrix& y);

// l with l(ext(Y)) = ||row Y||^2 summed over all components.
ExtendedFunctional build_row_functional(const ExtensionSpace& space,
                                        std::span<const double> row,
                                        std::size_t tag = 0);

// l with l(ext(Y)) = (row . y_component)^2; zero outside that component's
// block. These are the arc functionals of the disjoint-support model.
ExtendedFunctional build_arc_functional(const ExtensionSpace& space,
                                        std::span<const double> row,
                                        std::size_t component);

}  // namespace spca
