#pragma once

#include <cstddef>
#include <vector>

#include "spca/matrix.h"

namespace spca::detail {

struct LpSolution {
  bool bounded = true;
  double objective = 0.0;
  std::vector<double> x;
};

// max c^T x  s.t.  A x <= b, x >= 0, with b >= 0 so the origin is a
// feasible starting basis. Dense tableau.
LpSolution maximize_from_origin(const Matrix& a, const std::vector<double>& b,
                                const std::vector<double>& c);

}  // namespace spca::detail
