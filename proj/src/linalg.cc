#include "spca/linalg.h"

#include <limits>
#include <numeric>
#include <string>

namespace spca {

PsdFactor pivoted_cholesky(const SymmetricMatrix& k, double tol_rank) {
  if (!(tol_rank >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameters, "tol_rank must be >= 0");
  }
  const std::size_t n = k.dim();
  Matrix schur = k.matrix();

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, schur(i, i));
  const double threshold = tol_rank * scale;

  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> pivots;
  std::vector<std::vector<double>> columns;

  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < remaining.size(); ++a) {
      if (schur(remaining[a], remaining[a]) >
          schur(remaining[best], remaining[best])) {
        best = a;
      }
    }
    const std::size_t p = remaining[best];
    const double pivot = schur(p, p);
    if (!(pivot > threshold)) break;

    const double root = std::sqrt(pivot);
    std::vector<double> col(n, 0.0);
    col[p] = root;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    for (std::size_t i : remaining) col[i] = schur(i, p) / root;
    for (std::size_t i : remaining)
      for (std::size_t j : remaining) schur(i, j) -= col[i] * col[j];
    pivots.push_back(p);
    columns.push_back(std::move(col));
  }

  // A PSD Schur complement has |S_ij| <= max diag; anything larger, or a
  // clearly negative diagonal, means K was indefinite.
  const double eps = std::numeric_limits<double>::epsilon();
  const double slack = 2.0 * threshold + 64.0 * static_cast<double>(n) * eps * scale;
  for (std::size_t i : remaining) {
    if (schur(i, i) < -threshold) {
      throw Error(ErrorCode::kNotPositiveSemidefinite,
                  "pivot " + std::to_string(schur(i, i)) + " at row " +
                      std::to_string(i));
    }
    for (std::size_t j : remaining) {
      if (i != j && std::abs(schur(i, j)) > slack) {
        throw Error(ErrorCode::kNotPositiveSemidefinite,
                    "residual coupling between rows " + std::to_string(i) +
                        " and " + std::to_string(j));
      }
    }
  }

  Matrix r(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) r(i, c) = columns[c][i];
  return PsdFactor(std::move(r), std::move(pivots));
}

namespace {

struct JacobiOutput {
  std::vector<double> values;
  Matrix vectors;
};

JacobiOutput jacobi(const SymmetricMatrix& input, bool want_vectors) {
  const std::size_t n = input.dim();
  Matrix a = input.matrix();
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix();
  const double tol = kJacobiOffDiagonalTol * a.max_abs();

  auto off_max = [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
  };

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiSweepLimit; ++sweep) {
    if (off_max() <= tol) {
      converged = true;
      break;
    }
    if (sweep == kJacobiSweepLimit) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "Jacobi exceeded " + std::to_string(kJacobiSweepLimit) +
                    " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x) > a(y, y);
  });

  JacobiOutput out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]);
  if (want_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t src = order[k];
      // Coordinates below 1e-10 are rounding noise for a unit vector.
      double sign = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v(i, src)) > 1e-10) {
          sign = v(i, src) > 0.0 ? 1.0 : -1.0;
          break;
        }
      }
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
    }
  }
  return out;
}

void check_component_count(std::size_t dim, std::size_t d) {
  if (d < 1 || d > dim) {
    throw Error(ErrorCode::kInvalidParameters,
                "need 1 <= d <= " + std::to_string(dim) + ", got d=" +
                    std::to_string(d));
  }
}

}  // namespace

EigenResult symmetric_eig(const SymmetricMatrix& a) {
  JacobiOutput j = jacobi(a, true);
  return EigenResult{std::move(j.values), std::move(j.vectors)};
}

PcaResult solve_pca(const SymmetricMatrix& a, std::size_t d) {
  check_component_count(a.dim(), d);
  EigenResult eig = symmetric_eig(a);
  PcaResult out;
  out.components = Matrix(a.dim(), d);
  for (std::size_t k = 0; k < d; ++k) {
    out.value += eig.eigenvalues[k];
    for (std::size_t i = 0; i < a.dim(); ++i)
      out.components(i, k) = eig.eigenvectors(i, k);
  }
  return out;
}

double top_eigenvalue_sum(const SymmetricMatrix& a, std::size_t d) {
  check_component_count(a.dim(), d);
  if (a.dim() == 1) return a(0, 0);
  JacobiOutput j = jacobi(a, false);
  double sum = 0.0;
  for (std::size_t k = 0; k < d; ++k) sum += j.values[k];
  return sum;
}

}  // namespace spca
