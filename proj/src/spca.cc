#include "spca/spca.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.h"
#include "timer.h"

namespace spca {

namespace {

const SymmetricMatrix& check_sizes(const SymmetricMatrix& k, std::size_t d,
                                   std::size_t s) {
  if (d < 1 || d > s || s > k.dim()) {
    throw Error(ErrorCode::kInvalidParameters, "need 1 <= d <= s <= n");
  }
  return k;
}

}  // namespace

SpcaInstance::SpcaInstance(SymmetricMatrix k, std::size_t d, std::size_t s,
                           double tol_rank)
    : k_(std::move(k)),
      d_(d),
      s_(s),
      factor_(pivoted_cholesky(check_sizes(k_, d_, s_), tol_rank)) {}

Support top_s_support(const std::vector<double>& values, std::size_t s) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  s = std::min(s, values.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  order.resize(s);
  std::sort(order.begin(), order.end());
  return order;
}

Support candidate_support_from_point(const ExtendedPoint& z,
                                     const std::vector<ExtendedFunctional>& functionals,
                                     std::size_t s) {
  std::vector<double> values(functionals.size());
  for (std::size_t j = 0; j < functionals.size(); ++j) values[j] = functionals[j](z);
  return top_s_support(values, s);
}

std::vector<ExtendedFunctional> row_functionals(const SpcaInstance& instance) {
  const ExtensionSpace space(instance.rank(), instance.reduced_components());
  std::vector<ExtendedFunctional> out;
  out.reserve(instance.n());
  for (std::size_t j = 0; j < instance.n(); ++j)
    out.push_back(build_row_functional(space, instance.factor().row(j), j));
  return out;
}

SpcaCandidates enumerate_candidate_supports(const SpcaInstance& instance,
                                            const SolverOptions& options) {
  if (instance.rank() == 0) {
    throw Error(ErrorCode::kInvalidParameters, "candidate enumeration needs rank >= 1");
  }
  const ExtensionSpace space(instance.rank(), instance.reduced_components());
  const auto functionals = row_functionals(instance);
  const std::size_t n = instance.n();

  SpcaCandidates out;
  std::vector<Hyperplane> raw;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t j2 = j + 1; j2 < n; ++j2) {
      Hyperplane h{std::vector<double>(space.dim()), j * n + j2};
      bool zero = true;
      for (std::size_t k = 0; k < space.dim(); ++k) {
        h.normal[k] = functionals[j].coeffs[k] - functionals[j2].coeffs[k];
        zero = zero && h.normal[k] == 0.0;
      }
      if (zero) {
        ++out.identical_row_pairs;
      } else {
        raw.push_back(std::move(h));
      }
    }
  }
  const auto hyperplanes = deduplicate_hyperplanes(raw);
  out.hyperplanes = hyperplanes.size();
  out.cells = options.cell_mode == CellMode::kExact
                  ? enumerate_cells(hyperplanes, space.dim(), {options.execution})
                  : sample_cells(hyperplanes, space.dim(), options.random_samples,
                                 options.seed);

  std::vector<Support> per_cell(out.cells.size());
  detail::for_each_index(out.cells.size(), options.execution, [&](std::size_t c) {
    per_cell[c] = candidate_support_from_point(out.cells[c].witness, functionals,
                                               instance.s());
  });
  std::vector<std::size_t> order(per_cell.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return per_cell[a] < per_cell[b];
  });
  for (std::size_t c : order) {
    if (!out.supports.empty() && out.supports.back() == per_cell[c]) continue;
    out.supports.push_back(per_cell[c]);
    out.first_cell.push_back(c);
  }
  return out;
}

double evaluate_support(const SpcaInstance& instance, const Support& support) {
  if (support.empty() || instance.rank() == 0) return 0.0;
  const Matrix rs = instance.factor().rows(support);
  return top_eigenvalue_sum(SymmetricMatrix(gram_cols(rs)),
                            instance.reduced_components());
}

namespace {

// X with the s x d block `local` placed on rows `support`.
Matrix pad_rows(const Matrix& local, const Support& support, std::size_t n) {
  Matrix x(n, local.cols());
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t c = 0; c < local.cols(); ++c) x(support[a], c) = local(a, c);
  return x;
}

std::size_t count_nonzero_rows(const Matrix& x) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    if (std::any_of(row.begin(), row.end(), [](double v) { return std::abs(v) > 1e-12; }))
      ++count;
  }
  return count;
}

Support first_indices(std::size_t s) {
  Support out(s);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

}  // namespace

SpcaSolution solve_spca(const SpcaInstance& instance, const SolverOptions& options) {
  SpcaSolution sol;
  auto& diag = sol.diagnostics;
  diag.rank = instance.rank();
  const std::size_t n = instance.n();
  const std::size_t d = instance.d();
  const std::size_t s = instance.s();

  if (instance.rank() == 0) {
    diag.shortcut = true;
    sol.support = first_indices(s);
    sol.x = Matrix(n, d);
    for (std::size_t c = 0; c < d; ++c) sol.x(c, c) = 1.0;
    diag.nonzero_rows = d;
    return sol;
  }
  if (s == n) {
    diag.shortcut = true;
    detail::Stopwatch watch;
    auto pca = solve_pca(instance.k(), d);
    diag.timings.recovery_ms = watch.elapsed_ms();
    sol.support = first_indices(n);
    sol.x = std::move(pca.components);
    sol.objective = pca.value;
    diag.nonzero_rows = count_nonzero_rows(sol.x);
    return sol;
  }

  detail::Stopwatch watch;
  auto candidates = enumerate_candidate_supports(instance, options);
  diag.timings.arrangement_ms = watch.elapsed_ms();
  diag.extension_dim =
      ExtensionSpace(instance.rank(), instance.reduced_components()).dim();
  diag.hyperplanes = candidates.hyperplanes;
  diag.identical_row_pairs = candidates.identical_row_pairs;
  diag.cells_enumerated = candidates.cells.size();
  diag.candidates_evaluated = candidates.supports.size();

  watch.reset();
  std::vector<double> values(candidates.supports.size());
  detail::for_each_index(values.size(), options.execution, [&](std::size_t c) {
    values[c] = evaluate_support(instance, candidates.supports[c]);
  });
  diag.timings.evaluation_ms = watch.elapsed_ms();

  // Supports are sorted, so the first near-maximal entry is the
  // lexicographically smallest.
  const double best_value = *std::max_element(values.begin(), values.end());
  const double tol = kObjectiveTieTol * (1.0 + std::abs(best_value));
  std::size_t best = 0;
  while (values[best] < best_value - tol) ++best;
  diag.best_cell_signs = candidates.cells[candidates.first_cell[best]].signs;

  watch.reset();
  sol.support = candidates.supports[best];
  const Matrix rs = instance.factor().rows(sol.support);
  auto pca = solve_pca(SymmetricMatrix(gram_rows(rs)), d);
  sol.x = pad_rows(pca.components, sol.support, n);
  sol.objective = pca.value;
  diag.timings.recovery_ms = watch.elapsed_ms();
  diag.nonzero_rows = count_nonzero_rows(sol.x);
  return sol;
}

}  // namespace spca
