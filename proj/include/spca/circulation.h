#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spca/matrix.h"

namespace spca {

// The digraph D = (V, A) of the disjoint-support model:
//   V = {t} + U + W with U = {u_0..u_{d-1}}, W = {w_0..w_{n-1}},
//   A_0 = {u_i -> w_j} (capacity 1, profit profits(i, j)),
//   A_U = {t -> u_i}   (capacity s, profit 0),
//   A_W = {w_j -> t}   (capacity 1, profit 0).
// Vertex ids: t = 0, u_i = 1 + i, w_j = 1 + d + j.
// Arc ids: A_0 first in (i, j) order, then A_U, then A_W.
class CirculationInstance {
 public:
  CirculationInstance(std::size_t d, std::size_t n, int s, Matrix profits);

  std::size_t d() const { return d_; }
  std::size_t n() const { return n_; }
  int s() const { return s_; }
  const Matrix& profits() const { return profits_; }

  std::size_t num_vertices() const { return 1 + d_ + n_; }
  std::size_t num_arcs() const { return d_ * n_ + d_ + n_; }
  std::size_t t_vertex() const { return 0; }
  std::size_t u_vertex(std::size_t i) const { return 1 + i; }
  std::size_t w_vertex(std::size_t j) const { return 1 + d_ + j; }
  std::size_t profit_arc(std::size_t i, std::size_t j) const { return i * n_ + j; }
  std::size_t source_arc(std::size_t i) const { return d_ * n_ + i; }
  std::size_t sink_arc(std::size_t j) const { return d_ * n_ + d_ + j; }

  std::size_t tail(std::size_t arc) const;
  std::size_t head(std::size_t arc) const;
  int capacity(std::size_t arc) const;
  double profit(std::size_t arc) const;

 private:
  std::size_t d_;
  std::size_t n_;
  int s_;
  Matrix profits_;
};

struct Circulation {
  std::vector<int> flow;  // indexed by arc id
};

struct ResidualArc {
  std::size_t tail;
  std::size_t head;
  std::size_t arc;  // underlying arc of D
  bool forward;     // false: traverses arc^<- (reverse of `arc`)
  double profit;    // +p_arc forward, -p_arc backward
};

struct ResidualGraph {
  std::size_t num_vertices = 0;
  std::vector<ResidualArc> arcs;  // forward/backward pairs in arc-id order
};

struct DirectedCircuit {
  std::vector<ResidualArc> arcs;
  double profit = 0.0;
};

struct OptimalityReport {
  bool optimal = true;
  std::optional<DirectedCircuit> certificate;  // set when !optimal
};

// Throws InfeasibleFlow on a capacity or conservation violation.
void check_feasible(const CirculationInstance& instance, const Circulation& f);
double circulation_profit(const CirculationInstance& instance, const Circulation& f);
ResidualGraph residual_graph(const CirculationInstance& instance,
                             const Circulation& f);

// Cycle canceling along maximum-mean residual circuits (Karp). The result
// is certified with is_optimal before it is returned.
Circulation solve_max_profit(const CirculationInstance& instance);

// True iff no residual circuit has mean profit above a 1e-12 relative
// tolerance; otherwise carries such a circuit. Uses Bellman-Ford, so it
// shares no search code with solve_max_profit.
OptimalityReport is_optimal(const CirculationInstance& instance,
                            const Circulation& f);

// S_i = {j : f(u_i -> w_j) = 1}, sorted.
std::vector<std::vector<std::size_t>> supports_from_circulation(
    const CirculationInstance& instance, const Circulation& f);

// --- Undirected circuits of D ---------------------------------------------

enum class CircuitKind { kThroughT, kUWAlternating };

struct CircuitVertex {
  enum class Kind { kT, kU, kW };
  Kind kind;
  std::size_t index = 0;  // 0 for t
  friend bool operator==(const CircuitVertex&, const CircuitVertex&) = default;
};

// chi over an A_0 arc u_i -> w_j: +1 traversed forward, -1 backward.
struct ChiEntry {
  std::size_t u;
  std::size_t w;
  int sign;
  friend bool operator==(const ChiEntry&, const ChiEntry&) = default;
};

struct UndirectedCircuit {
  CircuitKind kind;
  std::vector<CircuitVertex> vertices;  // closed walk, canonical orientation
  std::vector<std::size_t> u_sequence;  // U vertices in traversal order
  std::vector<std::size_t> w_sequence;  // W vertices in traversal order
  std::vector<ChiEntry> chi;            // A_0 arcs only; A_U, A_W carry no profit
};

// Validates and computes chi. With `canonicalize`, the walk is first
// rewritten as the smallest rotation/reflection of its vertex id sequence,
// which identifies the two traversals of one circuit. Throws InvalidCircuit
// for anything that is not a simple cycle of the underlying graph of D(d, n).
UndirectedCircuit make_circuit(std::size_t d, std::size_t n,
                               const std::vector<CircuitVertex>& vertices,
                               bool canonicalize = true);

// Every simple cycle of the underlying undirected graph of D, one per
// reversal class, sorted by canonical vertex sequence.
std::vector<UndirectedCircuit> enumerate_undirected_circuits(std::size_t d,
                                                             std::size_t n);

// p(C') = sum over A_0 of chi * p.
double circuit_profit(const UndirectedCircuit& circuit, const Matrix& profits);

// The undirected circuit traced by a residual circuit, kept in the residual
// traversal orientation so that its profit equals the residual profit.
UndirectedCircuit undirected_from_residual(const CirculationInstance& instance,
                                           const DirectedCircuit& circuit);

}  // namespace spca
