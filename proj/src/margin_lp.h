#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace spca::detail {

// sign * normal . z >= t when `margin`, >= 0 otherwise.
struct MarginRow {
  std::span<const double> normal;
  double sign = 1.0;
  bool margin = true;
};

struct MarginPoint {
  std::vector<double> z;
  double t = 0.0;  // LP value, not a certified margin
};

// max t over |z|_inf <= 1. nullopt when the optimum is <= min_t.
std::optional<MarginPoint> max_margin(const std::vector<MarginRow>& rows,
                                      std::size_t dim, double min_t);

}  // namespace spca::detail
