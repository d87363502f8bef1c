#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spca/arrangement.h"
#include "spca/circuit_functional.h"
#include "spca/circulation.h"
#include "spca/spca.h"

namespace spca {

// One support per component; pairwise disjoint, each sorted.
using SupportFamily = std::vector<Support>;

// d unit-norm components with pairwise disjoint supports of size <= s.
class SpcaDsInstance {
 public:
  // Throws InvalidParameters unless 1 <= d <= n and s >= 1.
  SpcaDsInstance(SymmetricMatrix k, std::size_t d, std::size_t s,
                 double tol_rank = kDefaultTolRank);

  const SymmetricMatrix& k() const { return k_; }
  std::size_t n() const { return k_.dim(); }
  std::size_t d() const { return d_; }
  std::size_t s() const { return s_; }
  const PsdFactor& factor() const { return factor_; }
  std::size_t rank() const { return factor_.rank(); }

 private:
  SymmetricMatrix k_;
  std::size_t d_;
  std::size_t s_;
  PsdFactor factor_;
};

enum class DsCellStrategy {
  // Maximal cones of the fan on which one circulation stays optimal,
  // reached from one another across facets. Yields the same candidate
  // families as the arrangement, from far fewer cells.
  kOptimalityFan,
  // Every cell of the arrangement of circuit hyperplanes.
  kArrangement,
};

struct SpcaDsOptions : SolverOptions {
  DsCellStrategy cells = DsCellStrategy::kOptimalityFan;
  std::uint64_t fan_seed = 0x5eed;  // start point of the fan walk
};

struct DsCell {
  Circulation flow;
  SupportFamily family;   // raw, entries may be empty
  ExtendedPoint witness;  // strictly inside the cell
  double margin = 0.0;
};

struct DsCellEnumeration {
  std::vector<DsCell> cells;
  std::vector<Hyperplane> hyperplanes;  // circuit hyperplanes, parallels dropped
  std::size_t circuits = 0;
  std::size_t zero_circuits = 0;
  std::size_t circulation_solves = 0;
  std::size_t unresolved_facets = 0;  // fan facets too thin to cross
};

struct SpcaDsTimings {
  double cells_ms = 0.0;  // hyperplanes, cells and their circulations
  double evaluation_ms = 0.0;
  double recovery_ms = 0.0;
};

struct SpcaDsDiagnostics {
  std::size_t rank = 0;
  std::size_t extension_dim = 0;
  std::size_t circuits_enumerated = 0;
  std::size_t zero_circuits = 0;         // l_C' identically zero
  std::size_t hyperplanes = 0;           // after dropping parallels
  std::size_t cells_enumerated = 0;
  std::size_t circulation_solves = 0;
  std::size_t unresolved_facets = 0;
  std::size_t candidates_evaluated = 0;  // distinct families
  std::size_t completed_families = 0;    // candidates with an empty S_i filled in
  bool completion_triggered = false;     // the returned family was completed
  SignVector best_cell_signs;
  SpcaDsTimings timings;
};

struct SpcaDsSolution {
  SupportFamily supports;
  Matrix x;  // n x d, unit columns, column i supported on supports[i]
  double objective = 0.0;
  SpcaDsDiagnostics diagnostics;
};

struct CircuitHyperplanes {
  std::vector<UndirectedCircuit> circuits;
  std::vector<Hyperplane> hyperplanes;  // tag = index into circuits
  std::size_t zero_circuits = 0;
};

ExtensionSpace ds_extension_space(const SpcaDsInstance& instance);

// One hyperplane l_C' = 0 per circuit with a nonzero functional. Parallel
// duplicates are kept. Requires rank >= 1.
CircuitHyperplanes build_circuit_hyperplanes(const SpcaDsInstance& instance);

// Supports of a maximum-profit circulation for the arc profits at `witness`.
// Entries may be empty.
SupportFamily candidate_supports_from_cell(const SpcaDsInstance& instance,
                                           const ArcFunctionals& arcs,
                                           const ExtendedPoint& witness);

// One cell per region of constant optimal circulation. Requires rank >= 1.
DsCellEnumeration enumerate_family_cells(const SpcaDsInstance& instance,
                                         const SpcaDsOptions& options = {});

// sum_i lambda_max(R_{S_i}^T R_{S_i}); empty S_i contribute 0.
double evaluate_family(const SpcaDsInstance& instance, const SupportFamily& family);

// Fills empty S_i one at a time: the unassigned index with the largest
// ||R_j||^2 if any is left, otherwise the single move out of a set with
// two or more elements that maximizes the objective. Never lowers
// evaluate_family. Returns whether anything changed.
bool complete_family(const SpcaDsInstance& instance, SupportFamily& family);

SpcaDsSolution solve_spca_ds(const SpcaDsInstance& instance,
                             const SpcaDsOptions& options = {});

}  // namespace spca
