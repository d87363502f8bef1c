#include "spca/circuit_functional.h"

namespace spca {

ArcFunctionals::ArcFunctionals(const ExtensionSpace& space, const Matrix& factor)
    : d_(space.components()), n_(factor.rows()) {
  if (factor.cols() != space.rank()) {
    throw Error(ErrorCode::kDimensionMismatch, "factor width must equal the rank");
  }
  arcs_.reserve(d_ * n_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      arcs_.push_back(build_arc_functional(space, factor.row(j), i));
}

Matrix ArcFunctionals::profits_at(const ExtendedPoint& z) const {
  Matrix p(d_, n_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < n_; ++j) p(i, j) = at(i, j)(z);
  return p;
}

ExtendedFunctional build_circuit_functional(const UndirectedCircuit& circuit,
                                            const ArcFunctionals& arcs,
                                            std::size_t tag) {
  if (circuit.chi.empty()) {
    throw Error(ErrorCode::kInvalidCircuit, "circuit has no A_0 arcs");
  }
  const std::size_t dim = arcs.at(0, 0).coeffs.size();
  ExtendedFunctional f{std::vector<double>(dim, 0.0), tag};
  for (const auto& e : circuit.chi) {
    if (e.u >= arcs.d() || e.w >= arcs.n() || (e.sign != 1 && e.sign != -1)) {
      throw Error(ErrorCode::kInvalidCircuit, "chi entry out of range");
    }
    const auto& arc = arcs.at(e.u, e.w).coeffs;
    for (std::size_t k = 0; k < dim; ++k) f.coeffs[k] += e.sign * arc[k];
  }
  return f;
}

}  // namespace spca
