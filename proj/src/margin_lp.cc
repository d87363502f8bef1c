#include "margin_lp.h"

#include "simplex.h"

namespace spca::detail {

// Variables (z+, z-, t), all >= 0:
//   w t - sign normal.(z+ - z-) <= 0,  +-(z+_k - z-_k) <= 1.
std::optional<MarginPoint> max_margin(const std::vector<MarginRow>& rows,
                                      std::size_t dim, double min_t) {
  const std::size_t p = rows.size();
  const std::size_t vars = 2 * dim + 1;
  Matrix a(p + 2 * dim, vars);
  std::vector<double> b(p + 2 * dim, 0.0);
  for (std::size_t h = 0; h < p; ++h) {
    for (std::size_t k = 0; k < dim; ++k) {
      a(h, k) = -rows[h].sign * rows[h].normal[k];
      a(h, dim + k) = rows[h].sign * rows[h].normal[k];
    }
    a(h, 2 * dim) = rows[h].margin ? 1.0 : 0.0;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    a(p + 2 * k, k) = 1.0;
    a(p + 2 * k, dim + k) = -1.0;
    b[p + 2 * k] = 1.0;
    a(p + 2 * k + 1, k) = -1.0;
    a(p + 2 * k + 1, dim + k) = 1.0;
    b[p + 2 * k + 1] = 1.0;
  }
  std::vector<double> c(vars, 0.0);
  c[2 * dim] = 1.0;

  const LpSolution lp = maximize_from_origin(a, b, c);
  if (!lp.bounded) {
    // Only possible with no margin row: t is then free and any z works.
    return MarginPoint{std::vector<double>(dim, 0.0), lp.objective};
  }
  if (lp.objective <= min_t) return std::nullopt;
  MarginPoint out{std::vector<double>(dim), lp.objective};
  for (std::size_t k = 0; k < dim; ++k) out.z[k] = lp.x[k] - lp.x[dim + k];
  return out;
}

}  // namespace spca::detail
