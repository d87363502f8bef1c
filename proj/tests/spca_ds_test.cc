#include <gtest/gtest.h>

#include <set>

#include "spca/spca.h"
#include "spca/spca_ds.h"
#include "support/oracles.h"

namespace spca {
namespace {

using testing::Rng;

SymmetricMatrix rank_one(const std::vector<double>& q) {
  Matrix k(q.size(), q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) k(i, j) = q[i] * q[j];
  return SymmetricMatrix(k);
}

void expect_feasible(const SpcaDsSolution& sol, const SymmetricMatrix& k, std::size_t d,
                     std::size_t s) {
  ASSERT_EQ(sol.supports.size(), d);
  ASSERT_EQ(sol.x.cols(), d);
  std::vector<int> owner(k.dim(), -1);
  for (std::size_t i = 0; i < d; ++i) {
    EXPECT_FALSE(sol.supports[i].empty());
    EXPECT_LE(sol.supports[i].size(), s);
    for (std::size_t j : sol.supports[i]) {
      EXPECT_EQ(owner[j], -1);
      owner[j] = static_cast<int>(i);
    }
  }
  double value = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double len = 0.0;
    for (std::size_t j = 0; j < k.dim(); ++j) {
      if (owner[j] != static_cast<int>(i)) EXPECT_EQ(sol.x(j, i), 0.0);
      len += sol.x(j, i) * sol.x(j, i);
    }
    EXPECT_NEAR(len, 1.0, 1e-10);
    Matrix col(k.dim(), 1);
    for (std::size_t j = 0; j < k.dim(); ++j) col(j, 0) = sol.x(j, i);
    value += testing::trace_form(k.matrix(), col);
  }
  EXPECT_NEAR(value, sol.objective, 1e-9 * (1 + sol.objective));
}

std::set<SupportFamily> families(const DsCellEnumeration& e) {
  std::set<SupportFamily> out;
  for (const auto& c : e.cells) out.insert(c.family);
  return out;
}

TEST(SpcaDsInstance, Validation) {
  const SymmetricMatrix k{{1, 0}, {0, 1}};
  EXPECT_THROW(SpcaDsInstance(k, 0, 1), Error);
  EXPECT_THROW(SpcaDsInstance(k, 3, 1), Error);
  EXPECT_THROW(SpcaDsInstance(k, 1, 0), Error);
  EXPECT_NO_THROW(SpcaDsInstance(k, 2, 5));
}

TEST(CircuitHyperplanes, SingleComponentRankOne) {
  const SpcaDsInstance inst(rank_one({2, 1}), 1, 1);
  const auto ch = build_circuit_hyperplanes(inst);
  EXPECT_EQ(ch.circuits.size(), 3u);
  EXPECT_EQ(deduplicate_hyperplanes(ch.hyperplanes).size(), 1u);
}

TEST(CircuitHyperplanes, TwoComponentsRankOne) {
  const SpcaDsInstance inst(rank_one({2, 1}), 2, 1);
  EXPECT_EQ(ds_extension_space(inst).dim(), 2u);
  const auto ch = build_circuit_hyperplanes(inst);
  EXPECT_EQ(ch.circuits.size(), 13u);
  EXPECT_LE(ch.hyperplanes.size(), ch.circuits.size());
  for (const auto& h : ch.hyperplanes) EXPECT_EQ(h.normal.size(), 2u);
}

TEST(CandidateSupportsFromCell, InducedProfits) {
  // K = I gives a factor with one nonzero per row, so y can be chosen to
  // induce any nonnegative profit table.
  const SpcaDsInstance inst(SymmetricMatrix{{1, 0}, {0, 1}}, 2, 1);
  const ExtensionSpace space = ds_extension_space(inst);
  const Matrix& r = inst.factor().factor();
  const ArcFunctionals arcs(space, r);
  const double target[2][2] = {{9, 1}, {8, 7}};
  Matrix y(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t c = 0; c < 2; ++c)
        if (r(j, c) != 0.0) y(c, i) = std::sqrt(target[i][j]) / std::abs(r(j, c));
  const ExtendedPoint z = ext(space, y);
  const Matrix p = arcs.profits_at(z);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) ASSERT_NEAR(p(i, j), target[i][j], 1e-12);
  EXPECT_EQ(candidate_supports_from_cell(inst, arcs, z), (SupportFamily{{0}, {1}}));
}

TEST(CandidateSupportsFromCell, NegativeProfitsGiveEmptyFamily) {
  const SpcaDsInstance inst(SymmetricMatrix{{2, 1}, {1, 2}}, 2, 1);
  const ExtensionSpace space = ds_extension_space(inst);
  const ArcFunctionals arcs(space, inst.factor().factor());
  ExtendedPoint z = ext(space, Matrix{{1, 2}, {0.5, -1}});
  for (double& v : z.coords) v = -v;
  const Matrix profits = arcs.profits_at(z);
  for (double p : profits.data()) ASSERT_LT(p, 0.0);
  EXPECT_EQ(candidate_supports_from_cell(inst, arcs, z), (SupportFamily{{}, {}}));
}

TEST(SolveSpcaDs, RankOneSingletons) {
  const auto k = rank_one({3, 2, 1});
  const SpcaDsSolution sol = solve_spca_ds(SpcaDsInstance(k, 2, 1));
  EXPECT_NEAR(sol.objective, 13.0, 1e-12);
  EXPECT_EQ(sol.supports, (SupportFamily{{0}, {1}}));
  expect_feasible(sol, k, 2, 1);
}

TEST(SolveSpcaDs, SingleComponentMatchesSpca) {
  Rng rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 4 + trial % 3;
    const std::size_t s = 1 + trial % 3;
    const auto k = testing::random_psd(n, 2, rng);
    const double ds = solve_spca_ds(SpcaDsInstance(k, 1, s)).objective;
    const double plain = solve_spca(SpcaInstance(k, 1, s)).objective;
    EXPECT_TRUE(testing::near(ds, plain, 1e-9)) << ds << " vs " << plain;
  }
}

TEST(SolveSpcaDs, MatchesExhaustiveSearch) {
  Rng rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const std::size_t r = 1 + trial % 2;
    const std::size_t s = 1 + (trial / 2) % 2;
    const auto k = testing::random_psd(n, r, rng);
    const SpcaDsSolution sol = solve_spca_ds(SpcaDsInstance(k, 2, s));
    const double expected = testing::small_spca_ds_optimum(k.matrix(), 2, s);
    EXPECT_TRUE(testing::near(sol.objective, expected, 1e-8))
        << "trial " << trial << ": " << sol.objective << " vs " << expected;
    expect_feasible(sol, k, 2, s);
  }
}

TEST(EnumerateFamilyCells, FanMatchesArrangement) {
  Rng rng(65);
  struct Shape {
    std::size_t n, r, d, s;
  };
  for (const Shape& sh : {Shape{4, 1, 2, 1}, Shape{5, 1, 2, 2}, Shape{4, 2, 1, 2},
                          Shape{2, 2, 2, 1}, Shape{3, 1, 3, 1}}) {
    const auto k = testing::random_psd(sh.n, sh.r, rng);
    const SpcaDsInstance inst(k, sh.d, sh.s);
    SpcaDsOptions fan;
    SpcaDsOptions arr;
    arr.cells = DsCellStrategy::kArrangement;
    const auto a = enumerate_family_cells(inst, fan);
    const auto b = enumerate_family_cells(inst, arr);
    EXPECT_EQ(a.unresolved_facets, 0u);
    EXPECT_EQ(families(a), families(b)) << "n=" << sh.n << " r=" << sh.r << " d=" << sh.d;
    EXPECT_LE(a.cells.size(), b.cells.size());
  }
}

TEST(EnumerateFamilyCells, FanIsDeterministic) {
  Rng rng(67);
  const auto k = testing::random_psd(5, 2, rng);
  const SpcaDsInstance inst(k, 2, 2);
  SpcaDsOptions serial;
  serial.execution = Execution::kSerial;
  const auto a = enumerate_family_cells(inst, serial);
  const auto b = enumerate_family_cells(inst);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    EXPECT_EQ(a.cells[c].flow.flow, b.cells[c].flow.flow);
    EXPECT_EQ(a.cells[c].family, b.cells[c].family);
  }
}

TEST(EvaluateFamily, EmptyComponentsContributeZero) {
  const SpcaDsInstance inst(SymmetricMatrix{{4, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 2, 2);
  EXPECT_NEAR(evaluate_family(inst, {{0}, {}}), 4.0, 1e-12);
  EXPECT_NEAR(evaluate_family(inst, {{0}, {1, 2}}), 6.0, 1e-12);
}

TEST(CompleteFamily, FillsFromUnassigned) {
  const SpcaDsInstance inst(SymmetricMatrix{{4, 0, 0}, {0, 1, 0}, {0, 0, 2}}, 2, 2);
  SupportFamily f{{0}, {}};
  EXPECT_TRUE(complete_family(inst, f));
  EXPECT_EQ(f, (SupportFamily{{0}, {2}}));
  EXPECT_FALSE(complete_family(inst, f));
}

TEST(CompleteFamily, MovesWhenNothingIsLeft) {
  const auto k = rank_one({3, 2, 1});
  const SpcaDsInstance inst(k, 2, 3);
  SupportFamily f{{0, 1, 2}, {}};
  const double before = evaluate_family(inst, f);
  EXPECT_TRUE(complete_family(inst, f));
  EXPECT_FALSE(f[1].empty());
  EXPECT_GE(evaluate_family(inst, f), before - 1e-12);
  EXPECT_NEAR(evaluate_family(inst, f), 14.0, 1e-12);
}

TEST(SolveSpcaDs, CompletionOnRankOne) {
  // One circulation direction dominates; a second component is only
  // reachable by completion.
  const auto k = rank_one({3, 2, 1, 1});
  const SpcaDsSolution sol = solve_spca_ds(SpcaDsInstance(k, 2, 3));
  expect_feasible(sol, k, 2, 3);
  EXPECT_TRUE(testing::near(sol.objective, testing::small_spca_ds_optimum(k.matrix(), 2, 3),
                            1e-9));
}

TEST(SolveSpcaDs, ZeroMatrix) {
  const SymmetricMatrix k{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  const SpcaDsSolution sol = solve_spca_ds(SpcaDsInstance(k, 2, 1));
  EXPECT_EQ(sol.objective, 0.0);
  expect_feasible(sol, k, 2, 1);
}

}  // namespace
}  // namespace spca
