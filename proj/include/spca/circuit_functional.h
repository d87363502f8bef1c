#pragma once

#include <cstddef>
#include <vector>

#include "spca/circulation.h"
#include "spca/extension.h"

namespace spca {

// Arc functionals l_{u_i w_j} with l(ext({y_i})) = (R_j . y_i)^2, stored
// row-major by (i, j).
class ArcFunctionals {
 public:
  ArcFunctionals(const ExtensionSpace& space, const Matrix& factor);

  std::size_t d() const { return d_; }
  std::size_t n() const { return n_; }
  const ExtendedFunctional& at(std::size_t i, std::size_t j) const {
    return arcs_[i * n_ + j];
  }
  // profits(i, j) = l_{u_i w_j}(z).
  Matrix profits_at(const ExtendedPoint& z) const;

 private:
  std::size_t d_;
  std::size_t n_;
  std::vector<ExtendedFunctional> arcs_;
};

// l_{C'} = sum over A_0 arcs of chi * l_{u_i w_j}, so that
// l_{C'}(ext({y_i})) = p(C'). Throws InvalidCircuit if chi references an arc
// outside the table.
ExtendedFunctional build_circuit_functional(const UndirectedCircuit& circuit,
                                            const ArcFunctionals& arcs,
                                            std::size_t tag = 0);

}  // namespace spca
