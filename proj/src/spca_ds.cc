#include "spca/spca_ds.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "margin_lp.h"
#include "parallel.h"
#include "timer.h"

namespace spca {

namespace {

const SymmetricMatrix& check_sizes(const SymmetricMatrix& k, std::size_t d,
                                   std::size_t s) {
  if (d < 1 || d > k.dim() || s < 1) {
    throw Error(ErrorCode::kInvalidParameters, "need 1 <= d <= n and s >= 1");
  }
  return k;
}

double lambda_max(const SpcaDsInstance& instance, const Support& support) {
  if (support.empty() || instance.rank() == 0) return 0.0;
  return top_eigenvalue_sum(SymmetricMatrix(gram_cols(instance.factor().rows(support))),
                            1);
}

// Lexicographic on the concatenated supports, component by component.
bool family_less(const SupportFamily& a, const SupportFamily& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

CirculationInstance circulation_at(const SpcaDsInstance& instance,
                                   const ArcFunctionals& arcs, const ExtendedPoint& z) {
  return CirculationInstance(instance.d(), instance.n(),
                             static_cast<int>(std::min(instance.s(), instance.n())),
                             arcs.profits_at(z));
}

// --- Optimality fan --------------------------------------------------------

constexpr double kFanTol = 1e-9;

std::size_t vertex_id(std::size_t d, const CircuitVertex& v) {
  switch (v.kind) {
    case CircuitVertex::Kind::kT: return 0;
    case CircuitVertex::Kind::kU: return 1 + v.index;
    case CircuitVertex::Kind::kW: return 1 + d + v.index;
  }
  return 0;
}

// The arc joining vertex ids x and y, and whether x -> y follows it.
std::pair<std::size_t, bool> arc_step(const CirculationInstance& crc, std::size_t x,
                                      std::size_t y) {
  const std::size_t d = crc.d();
  auto is_u = [&](std::size_t v) { return v >= 1 && v <= d; };
  if (x == 0) {
    return is_u(y) ? std::pair{crc.source_arc(y - 1), true}
                   : std::pair{crc.sink_arc(y - 1 - d), false};
  }
  if (y == 0) {
    return is_u(x) ? std::pair{crc.source_arc(x - 1), false}
                   : std::pair{crc.sink_arc(x - 1 - d), true};
  }
  return is_u(x) ? std::pair{crc.profit_arc(x - 1, y - 1 - d), true}
                 : std::pair{crc.profit_arc(y - 1, x - 1 - d), false};
}

struct FanCircuit {
  std::vector<std::size_t> ids;  // closed walk in canonical orientation
  std::vector<double> unit;      // unit normal of l_C' in that orientation
};

class Fan {
 public:
  Fan(const SpcaDsInstance& instance, const ArcFunctionals& arcs,
      const CircuitHyperplanes& built, std::size_t dim)
      : instance_(instance), arcs_(arcs), dim_(dim) {
    for (const auto& h : built.hyperplanes) {
      FanCircuit c;
      for (const auto& v : built.circuits[h.tag].vertices)
        c.ids.push_back(vertex_id(instance.d(), v));
      const double len = norm2(h.normal);
      c.unit = h.normal;
      for (double& v : c.unit) v /= len;
      circuits_.push_back(std::move(c));
    }
  }

  struct Node {
    Circulation flow;
    std::vector<Hyperplane> cone;  // unit normals; cone = {n . z <= 0}
    ExtendedPoint witness;
    double margin = 0.0;
  };

  struct Step {
    std::vector<Node> found;
    std::size_t solves = 0;
    std::size_t unresolved = 0;
  };

  // Optimal circulation at z, with its cone. nullopt when z is on a wall.
  std::optional<Node> node_at(const ExtendedPoint& z, std::size_t& solves) const {
    const CirculationInstance crc = circulation_at(instance_, arcs_, z);
    ++solves;
    Node node;
    node.flow = solve_max_profit(crc);
    node.cone = cone_of(crc, node.flow);
    if (!finish(node)) return std::nullopt;
    return node;
  }

  // Neighbours across every facet of the node's cone.
  Step explore(const Node& node) const {
    Step step;
    const std::size_t m = node.cone.size();
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<detail::MarginRow> rows;
      rows.reserve(m + 1);
      for (std::size_t j = 0; j < m; ++j)
        rows.push_back({node.cone[j].normal, -1.0, j != k});
      rows.push_back({node.cone[k].normal, 1.0, false});
      const auto facet = detail::max_margin(rows, dim_, kFanTol);
      if (!facet) continue;  // redundant, or too thin to matter

      bool resolved = false;
      double delta = facet->t / 2.0;
      for (int attempt = 0; attempt < 40 && !resolved; ++attempt, delta /= 2.0) {
        ExtendedPoint z{facet->z};
        for (std::size_t c = 0; c < dim_; ++c) z.coords[c] += delta * node.cone[k].normal[c];
        const CirculationInstance crc = circulation_at(instance_, arcs_, z);
        ++step.solves;
        Node next;
        next.flow = solve_max_profit(crc);
        if (next.flow.flow == node.flow.flow) continue;
        next.cone = cone_of(crc, next.flow);
        // The neighbour across this facet has the facet point in its closure.
        const bool adjacent = std::all_of(
            next.cone.begin(), next.cone.end(),
            [&](const Hyperplane& h) { return dot(h.normal, facet->z) <= kFanTol; });
        if (!adjacent || !finish(next)) continue;
        step.found.push_back(std::move(next));
        resolved = true;
      }
      if (!resolved) ++step.unresolved;
    }
    return step;
  }

 private:
  // Residual circuits of f give the constraints l_C(z) <= 0.
  std::vector<Hyperplane> cone_of(const CirculationInstance& crc,
                                  const Circulation& f) const {
    std::vector<Hyperplane> cone;
    for (std::size_t c = 0; c < circuits_.size(); ++c) {
      for (bool forwards : {true, false}) {
        if (!residual(crc, f, circuits_[c].ids, forwards)) continue;
        Hyperplane h{circuits_[c].unit, c};
        if (!forwards)
          for (double& v : h.normal) v = -v;
        const bool duplicate = std::any_of(cone.begin(), cone.end(), [&](const Hyperplane& g) {
          for (std::size_t i = 0; i < dim_; ++i)
            if (std::abs(g.normal[i] - h.normal[i]) > 1e-12) return false;
          return true;
        });
        if (!duplicate) cone.push_back(std::move(h));
      }
    }
    return cone;
  }

  static bool residual(const CirculationInstance& crc, const Circulation& f,
                       const std::vector<std::size_t>& ids, bool forwards) {
    const std::size_t len = ids.size();
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t x = ids[k];
      std::size_t y = ids[(k + 1) % len];
      if (!forwards) std::swap(x, y);
      const auto [arc, along] = arc_step(crc, x, y);
      if (along ? f.flow[arc] >= crc.capacity(arc) : f.flow[arc] <= 0) return false;
    }
    return true;
  }

  // Max-margin interior point of the cone; false if the cone is thin.
  bool finish(Node& node) const {
    const SignVector inside(node.cone.size(), -1);
    auto w = witness_for_signs(node.cone, inside, dim_);
    if (!w) return false;
    node.witness = std::move(w->point);
    node.margin = w->margin;
    return true;
  }

  const SpcaDsInstance& instance_;
  const ArcFunctionals& arcs_;
  std::size_t dim_;
  std::vector<FanCircuit> circuits_;
};

void walk_fan(const SpcaDsInstance& instance, const ArcFunctionals& arcs,
              const CircuitHyperplanes& built, std::size_t dim,
              const SpcaDsOptions& options, DsCellEnumeration& out) {
  const Fan fan(instance, arcs, built, dim);
  std::mt19937_64 rng(options.fan_seed);
  std::normal_distribution<double> gauss;

  std::vector<Fan::Node> nodes;
  for (int attempt = 0; attempt < 64 && nodes.empty(); ++attempt) {
    ExtendedPoint z{std::vector<double>(dim)};
    for (double& v : z.coords) v = gauss(rng);
    if (auto node = fan.node_at(z, out.circulation_solves)) nodes.push_back(std::move(*node));
  }
  if (nodes.empty()) {
    throw Error(ErrorCode::kDegenerate, "no generic start point for the fan walk");
  }

  std::map<std::vector<int>, std::size_t> known{{nodes[0].flow.flow, 0}};
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<Fan::Step> steps(frontier.size());
    detail::for_each_index(frontier.size(), options.execution, [&](std::size_t f) {
      steps[f] = fan.explore(nodes[frontier[f]]);
    });
    std::vector<std::size_t> next;
    for (auto& step : steps) {
      out.circulation_solves += step.solves;
      out.unresolved_facets += step.unresolved;
      for (auto& node : step.found) {
        if (known.contains(node.flow.flow)) continue;
        known.emplace(node.flow.flow, nodes.size());
        next.push_back(nodes.size());
        nodes.push_back(std::move(node));
      }
    }
    frontier = std::move(next);
  }

  const CirculationInstance shape =
      circulation_at(instance, arcs, ExtendedPoint{std::vector<double>(dim, 0.0)});
  for (const auto& [flow, index] : known) {
    Fan::Node& node = nodes[index];
    DsCell cell;
    cell.family = supports_from_circulation(shape, Circulation{flow});
    cell.flow = std::move(node.flow);
    cell.witness = std::move(node.witness);
    cell.margin = node.margin;
    out.cells.push_back(std::move(cell));
  }
}

}  // namespace

SpcaDsInstance::SpcaDsInstance(SymmetricMatrix k, std::size_t d, std::size_t s,
                               double tol_rank)
    : k_(std::move(k)),
      d_(d),
      s_(s),
      factor_(pivoted_cholesky(check_sizes(k_, d_, s_), tol_rank)) {}

ExtensionSpace ds_extension_space(const SpcaDsInstance& instance) {
  return ExtensionSpace(instance.rank(), instance.d());
}

CircuitHyperplanes build_circuit_hyperplanes(const SpcaDsInstance& instance) {
  const ExtensionSpace space = ds_extension_space(instance);
  const ArcFunctionals arcs(space, instance.factor().factor());
  CircuitHyperplanes out;
  out.circuits = enumerate_undirected_circuits(instance.d(), instance.n());
  for (std::size_t c = 0; c < out.circuits.size(); ++c) {
    ExtendedFunctional f = build_circuit_functional(out.circuits[c], arcs, c);
    if (f.is_zero()) {
      ++out.zero_circuits;
      continue;
    }
    out.hyperplanes.push_back({std::move(f.coeffs), c});
  }
  return out;
}

SupportFamily candidate_supports_from_cell(const SpcaDsInstance& instance,
                                           const ArcFunctionals& arcs,
                                           const ExtendedPoint& witness) {
  const CirculationInstance crc = circulation_at(instance, arcs, witness);
  return supports_from_circulation(crc, solve_max_profit(crc));
}

DsCellEnumeration enumerate_family_cells(const SpcaDsInstance& instance,
                                         const SpcaDsOptions& options) {
  if (instance.rank() == 0) {
    throw Error(ErrorCode::kInvalidParameters, "cell enumeration needs rank >= 1");
  }
  const ExtensionSpace space = ds_extension_space(instance);
  const ArcFunctionals arcs(space, instance.factor().factor());
  const CircuitHyperplanes built = build_circuit_hyperplanes(instance);
  DsCellEnumeration out;
  out.circuits = built.circuits.size();
  out.zero_circuits = built.zero_circuits;
  out.hyperplanes = deduplicate_hyperplanes(built.hyperplanes);

  if (options.cell_mode == CellMode::kExact &&
      options.cells == DsCellStrategy::kOptimalityFan) {
    walk_fan(instance, arcs, built, space.dim(), options, out);
    return out;
  }

  const auto cells =
      options.cell_mode == CellMode::kExact
          ? enumerate_cells(out.hyperplanes, space.dim(), {options.execution})
          : sample_cells(out.hyperplanes, space.dim(), options.random_samples,
                         options.seed);
  out.cells.resize(cells.size());
  detail::for_each_index(cells.size(), options.execution, [&](std::size_t c) {
    const CirculationInstance crc = circulation_at(instance, arcs, cells[c].witness);
    DsCell& cell = out.cells[c];
    cell.flow = solve_max_profit(crc);
    cell.family = supports_from_circulation(crc, cell.flow);
    cell.witness = cells[c].witness;
    cell.margin = cells[c].margin;
  });
  out.circulation_solves = cells.size();
  return out;
}

double evaluate_family(const SpcaDsInstance& instance, const SupportFamily& family) {
  double total = 0.0;
  for (const auto& s : family) total += lambda_max(instance, s);
  return total;
}

bool complete_family(const SpcaDsInstance& instance, SupportFamily& family) {
  const std::size_t n = instance.n();
  bool changed = false;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].empty()) continue;
    changed = true;
    std::vector<bool> used(n, false);
    for (const auto& s : family)
      for (std::size_t j : s) used[j] = true;

    std::size_t pick = n;
    double pick_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double norm = dot(instance.factor().row(j), instance.factor().row(j));
      if (norm > pick_norm) {
        pick = j;
        pick_norm = norm;
      }
    }
    if (pick < n) {
      family[i] = {pick};
      continue;
    }

    // Every index is taken; d <= n guarantees a set with two or more.
    std::size_t from = 0;
    std::size_t element = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < family.size(); ++k) {
      if (family[k].size() < 2) continue;
      for (std::size_t j : family[k]) {
        SupportFamily trial = family;
        std::erase(trial[k], j);
        trial[i] = {j};
        const double value = evaluate_family(instance, trial);
        if (value > best) {
          best = value;
          from = k;
          element = j;
        }
      }
    }
    std::erase(family[from], element);
    family[i] = {element};
  }
  return changed;
}

SpcaDsSolution solve_spca_ds(const SpcaDsInstance& instance,
                             const SpcaDsOptions& options) {
  SpcaDsSolution sol;
  auto& diag = sol.diagnostics;
  diag.rank = instance.rank();
  const std::size_t n = instance.n();
  const std::size_t d = instance.d();

  std::vector<SupportFamily> raw;
  std::vector<SignVector> raw_signs;
  if (instance.rank() == 0) {
    raw.emplace_back(d);
    raw_signs.emplace_back();
  } else {
    detail::Stopwatch watch;
    diag.extension_dim = ds_extension_space(instance).dim();
    DsCellEnumeration cells = enumerate_family_cells(instance, options);
    diag.circuits_enumerated = cells.circuits;
    diag.zero_circuits = cells.zero_circuits;
    diag.hyperplanes = cells.hyperplanes.size();
    diag.cells_enumerated = cells.cells.size();
    diag.circulation_solves = cells.circulation_solves;
    diag.unresolved_facets = cells.unresolved_facets;
    for (auto& c : cells.cells) {
      raw_signs.push_back(sign_vector(cells.hyperplanes, c.witness.coords));
      raw.push_back(std::move(c.family));
    }
    diag.timings.cells_ms = watch.elapsed_ms();
  }

  // Distinct raw families in lexicographic order, each with its first cell.
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return family_less(raw[a], raw[b]);
  });
  std::vector<std::size_t> distinct;
  for (std::size_t c : order) {
    if (!distinct.empty() && raw[distinct.back()] == raw[c]) continue;
    distinct.push_back(c);
  }
  diag.candidates_evaluated = distinct.size();

  detail::Stopwatch watch;
  std::vector<SupportFamily> families(distinct.size());
  std::vector<char> completed(distinct.size(), 0);
  std::vector<double> values(distinct.size());
  detail::for_each_index(distinct.size(), options.execution, [&](std::size_t c) {
    families[c] = raw[distinct[c]];
    completed[c] = complete_family(instance, families[c]);
    values[c] = evaluate_family(instance, families[c]);
  });
  diag.completed_families =
      static_cast<std::size_t>(std::count(completed.begin(), completed.end(), 1));
  diag.timings.evaluation_ms = watch.elapsed_ms();

  const double best_value = *std::max_element(values.begin(), values.end());
  const double tol = kObjectiveTieTol * (1.0 + std::abs(best_value));
  std::size_t best = values.size();
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (values[c] < best_value - tol) continue;
    if (best == values.size() || family_less(families[c], families[best])) best = c;
  }
  diag.completion_triggered = completed[best] != 0;
  diag.best_cell_signs = raw_signs[distinct[best]];

  watch.reset();
  sol.supports = families[best];
  sol.x = Matrix(n, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Support& s = sol.supports[i];
    auto pca = solve_pca(SymmetricMatrix(gram_rows(instance.factor().rows(s))), 1);
    for (std::size_t a = 0; a < s.size(); ++a) sol.x(s[a], i) = pca.components(a, 0);
    sol.objective += pca.value;
  }
  diag.timings.recovery_ms = watch.elapsed_ms();
  return sol;
}

}  // namespace spca
