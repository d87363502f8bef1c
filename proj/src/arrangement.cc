#include "spca/arrangement.h"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "parallel.h"
#include "margin_lp.h"

namespace spca {

namespace {

void check_normals(const std::vector<Hyperplane>& hyperplanes, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidParameters, "dim must be >= 1");
  for (std::size_t h = 0; h < hyperplanes.size(); ++h) {
    const auto& normal = hyperplanes[h].normal;
    if (normal.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "hyperplane " + std::to_string(h) + " has " +
                      std::to_string(normal.size()) + " coordinates, expected " +
                      std::to_string(dim));
    }
    if (std::all_of(normal.begin(), normal.end(), [](double v) { return v == 0.0; })) {
      throw Error(ErrorCode::kDegenerate,
                  "hyperplane " + std::to_string(h) + " has a zero normal");
    }
  }
}

double margin_of(const std::vector<Hyperplane>& hyperplanes, const SignVector& signs,
                 const std::vector<double>& z) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < signs.size(); ++h)
    margin = std::min(margin, signs[h] * dot(hyperplanes[h].normal, z));
  return margin;
}

// Max-margin witness for the first signs.size() hyperplanes.
std::optional<Witness> solve_margin_lp(const std::vector<Hyperplane>& hyperplanes,
                                       const SignVector& signs, std::size_t dim) {
  if (signs.empty()) {
    return Witness{ExtendedPoint{std::vector<double>(dim, 0.0)},
                   std::numeric_limits<double>::infinity()};
  }
  std::vector<detail::MarginRow> rows;
  rows.reserve(signs.size());
  for (std::size_t h = 0; h < signs.size(); ++h)
    rows.push_back({hyperplanes[h].normal, static_cast<double>(signs[h]), true});
  auto lp = detail::max_margin(rows, dim, kMinWitnessMargin);
  if (!lp) return std::nullopt;
  // The LP value is only a hint; the certificate is the recomputed margin.
  const double margin = margin_of(hyperplanes, signs, lp->z);
  if (!(margin > kMinWitnessMargin)) return std::nullopt;
  return Witness{ExtendedPoint{std::move(lp->z)}, margin};
}

std::vector<Hyperplane> unit_normals(const std::vector<Hyperplane>& hyperplanes) {
  std::vector<Hyperplane> out = hyperplanes;
  for (auto& h : out) {
    const double len = norm2(h.normal);
    for (double& v : h.normal) v /= len;
  }
  return out;
}

bool sign_less(const SignVector& a, const SignVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Partial {
  SignVector signs;
  std::vector<double> witness;
};

}  // namespace

std::optional<Witness> witness_for_signs(const std::vector<Hyperplane>& hyperplanes,
                                         const SignVector& signs,
                                         std::size_t dim) {
  check_normals(hyperplanes, dim);
  if (signs.size() != hyperplanes.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one sign per hyperplane");
  }
  for (auto s : signs) {
    if (s != 1 && s != -1) {
      throw Error(ErrorCode::kInvalidParameters, "signs must be +1 or -1");
    }
  }
  return solve_margin_lp(hyperplanes, signs, dim);
}

std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hyperplanes,
                                  std::size_t dim,
                                  const ArrangementOptions& options) {
  check_normals(hyperplanes, dim);
  const std::vector<Hyperplane> unit = unit_normals(hyperplanes);

  std::vector<Partial> cells{Partial{{}, std::vector<double>(dim, 0.0)}};
  for (std::size_t h = 0; h < unit.size(); ++h) {
    std::vector<std::vector<Partial>> split(cells.size());
    detail::for_each_index(cells.size(), options.execution, [&](std::size_t c) {
      const Partial& cell = cells[c];
      const double side = dot(unit[h].normal, cell.witness);
      for (std::int8_t s : {std::int8_t{-1}, std::int8_t{1}}) {
        SignVector signs = cell.signs;
        signs.push_back(s);
        if (s * side > kMinWitnessMargin) {
          split[c].push_back(Partial{std::move(signs), cell.witness});
        } else if (auto w = solve_margin_lp(unit, signs, dim)) {
          split[c].push_back(Partial{std::move(signs), std::move(w->point.coords)});
        }
      }
    });
    std::vector<Partial> next;
    next.reserve(cells.size() * 2);
    for (auto& parts : split)
      for (auto& part : parts) next.push_back(std::move(part));
    cells = std::move(next);
  }

  // Final pass replaces incremental witnesses with max-margin ones.
  std::vector<Cell> out(cells.size());
  detail::for_each_index(cells.size(), options.execution, [&](std::size_t c) {
    auto w = solve_margin_lp(unit, cells[c].signs, dim);
    std::vector<double> z = w ? std::move(w->point.coords) : cells[c].witness;
    Cell cell;
    cell.margin = margin_of(hyperplanes, cells[c].signs, z);
    cell.signs = std::move(cells[c].signs);
    cell.witness = ExtendedPoint{std::move(z)};
    out[c] = std::move(cell);
  });
  std::sort(out.begin(), out.end(),
            [](const Cell& a, const Cell& b) { return sign_less(a.signs, b.signs); });
  return out;
}

SignVector sign_vector(const std::vector<Hyperplane>& hyperplanes,
                       const std::vector<double>& z) {
  SignVector signs(hyperplanes.size());
  for (std::size_t h = 0; h < hyperplanes.size(); ++h)
    signs[h] = dot(hyperplanes[h].normal, z) > 0.0 ? 1 : -1;
  return signs;
}

std::vector<Cell> sample_cells(const std::vector<Hyperplane>& hyperplanes,
                               std::size_t dim, std::size_t samples,
                               std::uint64_t seed) {
  check_normals(hyperplanes, dim);
  const std::vector<Hyperplane> unit = unit_normals(hyperplanes);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::map<SignVector, Cell> found;
  std::vector<double> z(dim);
  for (std::size_t n = 0; n < samples; ++n) {
    for (double& v : z) v = gauss(rng);
    const SignVector signs = sign_vector(unit, z);
    if (!(margin_of(unit, signs, z) > kMinWitnessMargin)) continue;
    if (found.contains(signs)) continue;
    Cell cell{signs, ExtendedPoint{z}, margin_of(hyperplanes, signs, z)};
    found.emplace(signs, std::move(cell));
  }
  std::vector<Cell> out;
  out.reserve(found.size());
  for (auto& [signs, cell] : found) out.push_back(std::move(cell));
  return out;
}

std::vector<Hyperplane> deduplicate_hyperplanes(
    const std::vector<Hyperplane>& hyperplanes, double tol) {
  std::vector<Hyperplane> kept;
  std::vector<std::vector<double>> canonical;
  for (const auto& h : hyperplanes) {
    std::vector<double> u = h.normal;
    const double len = norm2(u);
    if (len == 0.0) continue;
    double sign = 0.0;
    for (double v : u) {
      if (std::abs(v) > tol * len) {
        sign = v > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (double& v : u) v *= sign / len;
    const bool seen = std::any_of(canonical.begin(), canonical.end(), [&](const auto& c) {
      for (std::size_t k = 0; k < u.size(); ++k)
        if (std::abs(c[k] - u[k]) > tol) return false;
      return true;
    });
    if (seen) continue;
    canonical.push_back(std::move(u));
    kept.push_back(h);
  }
  return kept;
}

std::uint64_t generic_central_cell_count(std::size_t p, std::size_t q) {
  if (p == 0) return 1;
  std::uint64_t sum = 0;
  std::uint64_t binom = 1;  // C(p-1, k)
  for (std::size_t k = 0; k < q && k <= p - 1; ++k) {
    sum += binom;
    binom = binom * (p - 1 - k) / (k + 1);
  }
  return 2 * sum;
}

}  // namespace spca
