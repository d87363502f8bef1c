#include "simplex.h"

#include <cmath>
#include <limits>
#include <string>

namespace spca::detail {

namespace {
constexpr double kPivotEps = 1e-12;
}

LpSolution maximize_from_origin(const Matrix& a, const std::vector<double>& b,
                                const std::vector<double>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "LP shape");
  }

  // Row i < m: x_B[i] = t(i,n) - sum_j t(i,j) x_N[j]. Row m holds -c.
  Matrix t(m + 1, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      throw Error(ErrorCode::kInvalidParameters, "LP rhs must be >= 0");
    }
    for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
    t(i, n) = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) t(m, j) = -c[j];

  std::vector<std::size_t> basic(m), nonbasic(n);
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;

  auto pivot = [&](std::size_t r, std::size_t s) {
    const double inv = 1.0 / t(r, s);
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || std::abs(t(i, s)) <= 0.0) continue;
      const double factor = t(i, s) * inv;
      for (std::size_t j = 0; j <= n; ++j) t(i, j) -= t(r, j) * factor;
      t(i, s) = t(r, s) * factor;
    }
    for (std::size_t j = 0; j <= n; ++j)
      if (j != s) t(r, j) *= inv;
    for (std::size_t i = 0; i <= m; ++i)
      if (i != r) t(i, s) *= -inv;
    t(r, s) = inv;
    std::swap(basic[r], nonbasic[s]);
  };

  const std::size_t max_iterations = 100 * (m + n) + 1000;
  // Dantzig's rule, switching to Bland's after a run of degenerate pivots.
  const std::size_t degenerate_limit = m + n;
  std::size_t degenerate_run = 0;
  LpSolution out;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_iterations) {
      throw Error(ErrorCode::kNoConvergence, "simplex iteration limit");
    }
    const bool bland = degenerate_run > degenerate_limit;
    std::size_t s = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t(m, j) >= -kPivotEps) continue;
      if (s == n || (bland ? nonbasic[j] < nonbasic[s] : t(m, j) < t(m, s))) s = j;
    }
    if (s == n) break;

    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, s) > kPivotEps) best_ratio = std::min(best_ratio, t(i, n) / t(i, s));
    }
    std::size_t r = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, s) <= kPivotEps) continue;
      if (t(i, n) / t(i, s) <= best_ratio + kPivotEps &&
          (r == m || (bland ? basic[i] < basic[r] : t(i, s) > t(r, s)))) {
        r = i;
      }
    }
    if (r == m) {
      out.bounded = false;
      return out;
    }
    degenerate_run = t(r, n) <= kPivotEps ? degenerate_run + 1 : 0;
    pivot(r, s);
  }

  out.objective = t(m, n);
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] < n) out.x[basic[i]] = std::max(0.0, t(i, n));
  return out;
}

}  // namespace spca::detail
