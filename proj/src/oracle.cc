#include "spca/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.h"

namespace spca {

namespace {

// C(n, k), saturating at cap + 1.
std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > cap) return cap + 1;
  }
  return c;
}

std::uint64_t power_capped(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    p *= base;
    if (p > cap) return cap + 1;
  }
  return p;
}

void collect(OracleReport& report, const std::vector<double>& values,
             const auto& family_of) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : values) best = std::max(best, v);
  const double tol = kOracleTieTol * std::max(1.0, std::abs(best));
  report.objective = best;
  for (std::size_t c = 0; c < values.size(); ++c)
    if (values[c] >= best - tol) report.argmax_supports.push_back(family_of(c));
  std::sort(report.argmax_supports.begin(), report.argmax_supports.end());
}

}  // namespace

OracleReport brute_force_spca(const SymmetricMatrix& k, std::size_t d, std::size_t s,
                              Execution execution, std::uint64_t cap) {
  const std::size_t n = k.dim();
  if (d < 1 || d > s || s > n) {
    throw Error(ErrorCode::kInvalidParameters, "need 1 <= d <= s <= n");
  }
  if (binomial_capped(n, s, cap) > cap) {
    throw Error(ErrorCode::kTooLarge, "too many subsets to enumerate");
  }

  std::vector<Support> subsets;
  Support current(s);
  for (std::size_t i = 0; i < s; ++i) current[i] = i;
  while (true) {
    subsets.push_back(current);
    std::size_t i = s;
    while (i > 0 && current[i - 1] == n - s + i - 1) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < s; ++j) current[j] = current[j - 1] + 1;
  }

  std::vector<double> values(subsets.size());
  detail::for_each_index(subsets.size(), execution, [&](std::size_t c) {
    values[c] = top_eigenvalue_sum(k.principal(subsets[c]), d);
  });
  OracleReport report;
  report.instances_enumerated = subsets.size();
  collect(report, values, [&](std::size_t c) { return SupportFamily{subsets[c]}; });
  return report;
}

OracleReport brute_force_spca_ds(const SymmetricMatrix& k, std::size_t d,
                                 std::size_t s, Execution execution,
                                 std::uint64_t cap) {
  const std::size_t n = k.dim();
  if (d < 1 || d > n || s < 1) {
    throw Error(ErrorCode::kInvalidParameters, "need 1 <= d <= n and s >= 1");
  }
  const std::uint64_t total = power_capped(d + 1, n, cap);
  if (total > cap) {
    throw Error(ErrorCode::kTooLarge, "too many assignments to enumerate");
  }

  // Digit j of `code` in base d + 1: 0 leaves j out, c puts it in S_{c-1}.
  auto decode = [&](std::uint64_t code) {
    SupportFamily family(d);
    for (std::size_t j = 0; j < n; ++j, code /= d + 1)
      if (code % (d + 1) != 0) family[code % (d + 1) - 1].push_back(j);
    return family;
  };

  const double infeasible = -std::numeric_limits<double>::infinity();
  std::vector<double> values(total);
  detail::for_each_index(total, execution, [&](std::size_t c) {
    const SupportFamily family = decode(c);
    double value = 0.0;
    for (const auto& set : family) {
      if (set.empty() || set.size() > s) {
        value = infeasible;
        break;
      }
      value += top_eigenvalue_sum(k.principal(set), 1);
    }
    values[c] = value;
  });
  OracleReport report;
  report.instances_enumerated = total;
  collect(report, values, decode);
  return report;
}

}  // namespace spca
