// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "spca/arrangement.h"
#include "spca/circulation.h"
#include "spca/linalg.h"
#include "spca/oracle.h"
#include "spca/spca.h"
#include "spca/spca_ds.h"
#include "support/oracles.h"

namespace {

using namespace spca;
using spca::testing::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Outcome& o, double seconds) {
  std::printf("[%s] criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class F>
void run(int id, const char* name, F f) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report(id, name, o, elapsed.count());
}

bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1e-300, std::abs(a), std::abs(b)});
}

double orthonormality(const Matrix& x) { return spca::testing::orthonormality_error(x); }

// --- shared instances for criteria 1, 7 and 8 ------------------------------

struct SpcaCase {
  SymmetricMatrix k;
  std::size_t d, s;
};

std::vector<SpcaCase> spca_cases() {
  Rng rng(20240601);
  std::uniform_int_distribution<std::size_t> pick_n(4, 8), pick_r(1, 2), pick_d(1, 2);
  std::vector<SpcaCase> out;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = pick_n(rng);
    const std::size_t r = pick_r(rng);
    const std::size_t d = pick_d(rng);
    const std::size_t s = std::uniform_int_distribution<std::size_t>(d, 4)(rng);
    out.push_back({spca::testing::random_psd(n, r, rng), d, s});
  }
  return out;
}

struct DsCase {
  SymmetricMatrix k;
  std::size_t d, s;
};

std::vector<DsCase> ds_cases() {
  Rng rng(20240602);
  std::uniform_int_distribution<std::size_t> pick_n(3, 6), pick_s(1, 2);
  std::vector<DsCase> out;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = pick_n(rng);
    out.push_back({spca::testing::random_psd(n, 1, rng), 2, pick_s(rng)});
  }
  for (int t = 0; t < 20; ++t) out.push_back({spca::testing::random_psd(4, 2, rng), 2, pick_s(rng)});
  return out;
}

std::vector<SpcaSolution> spca_solutions;
std::vector<SpcaDsSolution> ds_solutions;

Outcome criterion1(const std::vector<SpcaCase>& cases) {
  std::size_t value_ok = 0, support_ok = 0;
  std::ostringstream first_bad;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& cs = cases[c];
    const SpcaSolution sol = solve_spca(SpcaInstance(cs.k, cs.d, cs.s));
    const OracleReport oracle = brute_force_spca(cs.k, cs.d, cs.s);
    const bool v = rel_close(sol.objective, oracle.objective, 1e-8);
    const bool in = std::any_of(oracle.argmax_supports.begin(), oracle.argmax_supports.end(),
                                [&](const SupportFamily& f) { return f[0] == sol.support; });
    value_ok += v;
    support_ok += in;
    if ((!v || !in) && first_bad.str().empty())
      first_bad << ", first mismatch at instance " << c;
    spca_solutions.push_back(sol);
  }
  std::ostringstream d;
  d << value_ok << "/" << cases.size() << " objectives, " << support_ok << "/" << cases.size()
    << " supports among maximizers" << first_bad.str();
  return {value_ok == cases.size() && support_ok == cases.size(), d.str()};
}

Outcome criterion2(const std::vector<DsCase>& cases) {
  std::size_t ok = 0;
  double worst = 0.0;
  for (const auto& cs : cases) {
    const SpcaDsSolution sol = solve_spca_ds(SpcaDsInstance(cs.k, cs.d, cs.s));
    const double oracle = brute_force_spca_ds(cs.k, cs.d, cs.s).objective;
    ok += rel_close(sol.objective, oracle, 1e-8);
    worst = std::max(worst, std::abs(sol.objective - oracle) / std::max(1.0, std::abs(oracle)));
    ds_solutions.push_back(sol);
  }
  std::ostringstream d;
  d << ok << "/" << cases.size() << " objectives, worst relative gap " << worst;
  return {ok == cases.size(), d.str()};
}

Outcome criterion3() {
  Rng rng(20240603);
  std::uniform_int_distribution<std::size_t> pick_s(1, 10), pick_r(1, 4);
  std::size_t checks = 0, ok = 0;
  for (int t = 0; t < 500; ++t) {
    const Matrix m = spca::testing::random_matrix(pick_s(rng), pick_r(rng), rng);
    const SymmetricMatrix rows(gram_rows(m));
    const SymmetricMatrix cols(gram_cols(m));
    for (std::size_t d = 1; d <= 5; ++d) {
      const std::size_t k = std::min(d, m.cols());
      const double a = top_eigenvalue_sum(rows, std::min(k, rows.dim()));
      const double b = top_eigenvalue_sum(cols, std::min(k, cols.dim()));
      ++checks;
      ok += rel_close(a, b, 1e-9);
    }
  }
  std::ostringstream d;
  d << ok << "/" << checks << " (M, d) pairs agree";
  return {ok == checks, d.str()};
}

Outcome criterion4() {
  Rng rng(20240604);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<std::size_t> pick_d(1, 3), pick_n(1, 6);
  std::uniform_int_distribution<int> pick_s(1, 3);
  std::size_t value_ok = 0, certified = 0;
  const std::size_t total = 500;
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t d = pick_d(rng), n = pick_n(rng);
    const int s = pick_s(rng);
    Matrix p(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = gauss(rng);
    const CirculationInstance inst(d, n, s, p);
    const Circulation f = solve_max_profit(inst);
    value_ok += std::abs(circulation_profit(inst, f) -
                         spca::testing::max_assignment_profit(p, static_cast<std::size_t>(s))) <=
                1e-9;
    certified += is_optimal(inst, f).optimal;
  }
  std::ostringstream d;
  d << value_ok << "/" << total << " profits match, " << certified << "/" << total
    << " certified optimal";
  return {value_ok == total && certified == total, d.str()};
}

Outcome criterion5() {
  Rng rng(20240605);
  std::uniform_int_distribution<std::size_t> pick_p(1, 10), pick_q(1, 4);
  std::size_t count_ok = 0, misses = 0, sampled = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t p = pick_p(rng), q = pick_q(rng);
    std::vector<Hyperplane> hs;
    for (std::size_t h = 0; h < p; ++h) hs.push_back({spca::testing::sphere_point(q, rng), h});
    const auto cells = enumerate_cells(hs, q);
    count_ok += cells.size() == generic_central_cell_count(p, q);
    std::set<SignVector> found;
    for (const auto& c : cells) found.insert(c.signs);
    for (int k = 0; k < 10000; ++k) {
      const auto z = spca::testing::sphere_point(q, rng);
      double margin = 1e300;
      for (const auto& h : hs) margin = std::min(margin, std::abs(dot(h.normal, z)));
      if (margin <= 1e-7) continue;
      ++sampled;
      misses += !found.contains(sign_vector(hs, z));
    }
  }
  std::ostringstream d;
  d << count_ok << "/50 counts exact, " << misses << " misses over " << sampled
    << " sampled points";
  return {count_ok == 50 && misses == 0, d.str()};
}

Outcome criterion6() {
  std::size_t agree = 0, total = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t n = 1; n <= 4; ++n) {
      ++total;
      agree += enumerate_undirected_circuits(d, n).size() ==
               spca::testing::brute_force_cycle_count(d, n);
    }
  }
  const std::size_t c12 = enumerate_undirected_circuits(1, 2).size();
  const std::size_t c22 = enumerate_undirected_circuits(2, 2).size();
  const bool literal = c12 == 2 && c22 == 7;
  std::ostringstream d;
  d << agree << "/" << total << " (d, n) counts match brute force; (1,2) -> " << c12
    << " and (2,2) -> " << c22 << ", expected 2 and 7";
  return {agree == total && literal, d.str()};
}

Outcome criterion7(const std::vector<SpcaCase>& cases) {
  if (spca_solutions.size() != cases.size()) return {false, "criterion 1 did not finish"};
  std::size_t ok = 0;
  std::size_t min_candidates = SIZE_MAX, max_candidates = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& cs = cases[c];
    const SpcaInstance inst(cs.k, cs.d, cs.s);
    const SpcaCandidates cand = enumerate_candidate_supports(inst);
    const OracleReport oracle = brute_force_spca(cs.k, cs.d, cs.s);
    const bool contains = std::any_of(
        oracle.argmax_supports.begin(), oracle.argmax_supports.end(), [&](const SupportFamily& f) {
          return std::binary_search(cand.supports.begin(), cand.supports.end(), f[0]);
        });
    const auto& diag = spca_solutions[c].diagnostics;
    const bool recorded = diag.shortcut || (diag.candidates_evaluated == cand.supports.size() &&
                                            diag.cells_enumerated == cand.cells.size());
    ok += !cand.supports.empty() && cand.supports.size() <= cand.cells.size() && contains &&
          recorded;
    min_candidates = std::min(min_candidates, cand.supports.size());
    max_candidates = std::max(max_candidates, cand.supports.size());
  }
  std::ostringstream d;
  d << ok << "/" << cases.size() << " instances; candidates per instance " << min_candidates
    << ".." << max_candidates;
  return {ok == cases.size(), d.str()};
}

Outcome criterion8(const std::vector<SpcaCase>& spca, const std::vector<DsCase>& ds) {
  if (spca_solutions.size() != spca.size() || ds_solutions.size() != ds.size())
    return {false, "earlier criteria did not produce every solution"};
  std::size_t ok = 0;
  for (std::size_t c = 0; c < spca.size(); ++c) {
    const auto& sol = spca_solutions[c];
    bool good = orthonormality(sol.x) <= 1e-8 && sol.support.size() == spca[c].s &&
                sol.x.cols() == spca[c].d;
    for (std::size_t i = 0; i < sol.x.rows(); ++i) {
      if (std::binary_search(sol.support.begin(), sol.support.end(), i)) continue;
      for (std::size_t a = 0; a < sol.x.cols(); ++a) good = good && sol.x(i, a) == 0.0;
    }
    ok += good;
  }
  for (std::size_t c = 0; c < ds.size(); ++c) {
    const auto& sol = ds_solutions[c];
    bool good = sol.supports.size() == ds[c].d && sol.x.cols() == ds[c].d;
    std::vector<int> owner(sol.x.rows(), -1);
    for (std::size_t a = 0; a < sol.supports.size() && good; ++a) {
      good = !sol.supports[a].empty() && sol.supports[a].size() <= ds[c].s;
      for (std::size_t j : sol.supports[a]) {
        good = good && owner[j] == -1;
        owner[j] = static_cast<int>(a);
      }
    }
    for (std::size_t a = 0; a < sol.x.cols() && good; ++a) {
      double len = 0.0;
      for (std::size_t j = 0; j < sol.x.rows(); ++j) {
        len += sol.x(j, a) * sol.x(j, a);
        if (owner[j] != static_cast<int>(a)) good = good && sol.x(j, a) == 0.0;
      }
      good = good && std::abs(len - 1.0) <= 1e-8;
    }
    ok += good;
  }
  const std::size_t total = spca.size() + ds.size();
  std::ostringstream d;
  d << ok << "/" << total << " solutions feasible";
  return {ok == total, d.str()};
}

}  // namespace

int main() {
  const auto spca = spca_cases();
  const auto ds = ds_cases();
  run(1, "SPCA oracle equivalence", [&] { return criterion1(spca); });
  run(2, "SPCA-DS oracle equivalence", [&] { return criterion2(ds); });
  run(3, "Gram spectra identity", [] { return criterion3(); });
  run(4, "circulation certification", [] { return criterion4(); });
  run(5, "arrangement completeness", [] { return criterion5(); });
  run(6, "circuit enumeration", [] { return criterion6(); });
  run(7, "candidate-count sanity", [&] { return criterion7(spca); });
  run(8, "solution feasibility", [&] { return criterion8(spca, ds); });
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
