#include "spca/extension.h"

#include <string>

namespace spca {

ExtensionSpace::ExtensionSpace(std::size_t rank, std::size_t components)
    : rank_(rank), components_(components) {
  if (rank == 0 || components == 0) {
    throw Error(ErrorCode::kInvalidParameters,
                "extension space needs rank >= 1 and components >= 1");
  }
}

std::size_t ExtensionSpace::index(std::size_t component, std::size_t k,
                                  std::size_t k2) const {
  if (k > k2) std::swap(k, k2);
  // Offset of row k in the packed upper triangle: sum_{a<k} (rank - a).
  const std::size_t row_offset = k * rank_ - k * (k - 1) / 2;
  return component * block_size() + row_offset + (k2 - k);
}

MonomialIndex ExtensionSpace::monomial(std::size_t flat) const {
  const std::size_t component = flat / block_size();
  std::size_t rest = flat % block_size();
  std::size_t k = 0;
  while (rest >= rank_ - k) {
    rest -= rank_ - k;
    ++k;
  }
  return {component, k, k + rest};
}

bool ExtendedFunctional::is_zero() const {
  for (double c : coeffs)
    if (c != 0.0) return false;
  return true;
}

ExtendedPoint ext(const ExtensionSpace& space, const Matrix& y) {
  if (y.rows() != space.rank() || y.cols() != space.components()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ext expects " + std::to_string(space.rank()) + "x" +
                    std::to_string(space.components()) + ", got " +
                    std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
  ExtendedPoint z{std::vector<double>(space.dim())};
  std::size_t at = 0;
  for (std::size_t i = 0; i < space.components(); ++i)
    for (std::size_t k = 0; k < space.rank(); ++k)
      for (std::size_t k2 = k; k2 < space.rank(); ++k2)
        z.coords[at++] = y(k, i) * y(k2, i);
  return z;
}

namespace {

void write_block(const ExtensionSpace& space, std::span<const double> row,
                 std::size_t component, std::vector<double>& coeffs) {
  std::size_t at = component * space.block_size();
  for (std::size_t k = 0; k < space.rank(); ++k) {
    coeffs[at++] = row[k] * row[k];
    for (std::size_t k2 = k + 1; k2 < space.rank(); ++k2)
      coeffs[at++] = 2.0 * row[k] * row[k2];
  }
}

void check_row(const ExtensionSpace& space, std::span<const double> row) {
  if (row.size() != space.rank()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row has " + std::to_string(row.size()) + " entries, rank is " +
                    std::to_string(space.rank()));
  }
}

}  // namespace

ExtendedFunctional build_row_functional(const ExtensionSpace& space,
                                        std::span<const double> row,
                                        std::size_t tag) {
  check_row(space, row);
  ExtendedFunctional f{std::vector<double>(space.dim(), 0.0), tag};
  for (std::size_t i = 0; i < space.components(); ++i)
    write_block(space, row, i, f.coeffs);
  return f;
}

ExtendedFunctional build_arc_functional(const ExtensionSpace& space,
                                        std::span<const double> row,
                                        std::size_t component) {
  check_row(space, row);
  if (component >= space.components()) {
    throw Error(ErrorCode::kDimensionMismatch, "component out of range");
  }
  ExtendedFunctional f{std::vector<double>(space.dim(), 0.0), component};
  write_block(space, row, component, f.coeffs);
  return f;
}

}  // namespace spca
