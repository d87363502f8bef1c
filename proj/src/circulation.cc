#include "spca/circulation.h"

#include <algorithm>
#include <limits>
#include <string>

namespace spca {

CirculationInstance::CirculationInstance(std::size_t d, std::size_t n, int s,
                                         Matrix profits)
    : d_(d), n_(n), s_(s), profits_(std::move(profits)) {
  if (d == 0 || n == 0 || s < 1) {
    throw Error(ErrorCode::kInvalidParameters, "circulation needs d, n, s >= 1");
  }
  if (profits_.rows() != d || profits_.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "profits must be d x n");
  }
  for (double p : profits_.data()) {
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidParameters, "profits must be finite");
    }
  }
}

std::size_t CirculationInstance::tail(std::size_t arc) const {
  if (arc < d_ * n_) return u_vertex(arc / n_);
  if (arc < d_ * n_ + d_) return t_vertex();
  return w_vertex(arc - d_ * n_ - d_);
}

std::size_t CirculationInstance::head(std::size_t arc) const {
  if (arc < d_ * n_) return w_vertex(arc % n_);
  if (arc < d_ * n_ + d_) return u_vertex(arc - d_ * n_);
  return t_vertex();
}

int CirculationInstance::capacity(std::size_t arc) const {
  return (arc >= d_ * n_ && arc < d_ * n_ + d_) ? s_ : 1;
}

double CirculationInstance::profit(std::size_t arc) const {
  return arc < d_ * n_ ? profits_(arc / n_, arc % n_) : 0.0;
}

void check_feasible(const CirculationInstance& instance, const Circulation& f) {
  if (f.flow.size() != instance.num_arcs()) {
    throw Error(ErrorCode::kInfeasibleFlow, "flow vector has wrong length");
  }
  std::vector<long> balance(instance.num_vertices(), 0);
  for (std::size_t a = 0; a < instance.num_arcs(); ++a) {
    if (f.flow[a] < 0 || f.flow[a] > instance.capacity(a)) {
      throw Error(ErrorCode::kInfeasibleFlow,
                  "arc " + std::to_string(a) + " violates its capacity");
    }
    balance[instance.tail(a)] -= f.flow[a];
    balance[instance.head(a)] += f.flow[a];
  }
  for (std::size_t v = 0; v < balance.size(); ++v) {
    if (balance[v] != 0) {
      throw Error(ErrorCode::kInfeasibleFlow,
                  "conservation fails at vertex " + std::to_string(v));
    }
  }
}

double circulation_profit(const CirculationInstance& instance, const Circulation& f) {
  double total = 0.0;
  for (std::size_t a = 0; a < instance.num_arcs(); ++a)
    total += instance.profit(a) * f.flow[a];
  return total;
}

ResidualGraph residual_graph(const CirculationInstance& instance,
                             const Circulation& f) {
  ResidualGraph g;
  g.num_vertices = instance.num_vertices();
  for (std::size_t a = 0; a < instance.num_arcs(); ++a) {
    const std::size_t x = instance.tail(a);
    const std::size_t y = instance.head(a);
    if (f.flow[a] < instance.capacity(a)) {
      g.arcs.push_back({x, y, a, true, instance.profit(a)});
    }
    if (f.flow[a] > 0) {
      g.arcs.push_back({y, x, a, false, -instance.profit(a)});
    }
  }
  return g;
}

namespace {

double mean_tolerance(const CirculationInstance& instance) {
  return 1e-12 * (1.0 + instance.profits().max_abs());
}

// Walks back `steps` predecessor arcs from `v`; the first repeated vertex
// closes a circuit. Returns an empty circuit if the walk breaks off.
DirectedCircuit trace_cycle(const ResidualGraph& g,
                            const std::vector<std::vector<long>>& pred_by_step,
                            std::size_t steps, std::size_t v) {
  std::vector<long> seen_at(g.num_vertices, -1);
  std::vector<std::size_t> walk_arcs;
  std::size_t cur = v;
  for (std::size_t k = steps;; --k) {
    if (seen_at[cur] >= 0) {
      DirectedCircuit c;
      for (auto idx = static_cast<std::size_t>(seen_at[cur]); idx < walk_arcs.size();
           ++idx) {
        c.arcs.push_back(g.arcs[walk_arcs[idx]]);
        c.profit += c.arcs.back().profit;
      }
      std::reverse(c.arcs.begin(), c.arcs.end());
      return c;
    }
    if (k == 0) return {};
    seen_at[cur] = static_cast<long>(walk_arcs.size());
    const long arc = pred_by_step[k][cur];
    if (arc < 0) return {};
    walk_arcs.push_back(static_cast<std::size_t>(arc));
    cur = g.arcs[static_cast<std::size_t>(arc)].tail;
  }
}

// Karp's algorithm for the maximum mean circuit. Returns an empty circuit
// when the best mean is <= tol (or the graph is acyclic).
DirectedCircuit max_mean_circuit(const ResidualGraph& g, double tol) {
  const std::size_t nv = g.num_vertices;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(nv + 1, std::vector<double>(nv, neg_inf));
  std::vector<std::vector<long>> pred(nv + 1, std::vector<long>(nv, -1));
  std::fill(best[0].begin(), best[0].end(), 0.0);
  for (std::size_t k = 1; k <= nv; ++k) {
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
      const auto& arc = g.arcs[a];
      if (best[k - 1][arc.tail] == neg_inf) continue;
      const double cand = best[k - 1][arc.tail] + arc.profit;
      if (cand > best[k][arc.head]) {
        best[k][arc.head] = cand;
        pred[k][arc.head] = static_cast<long>(a);
      }
    }
  }

  double best_mean = neg_inf;
  std::size_t best_v = nv;
  for (std::size_t v = 0; v < nv; ++v) {
    if (best[nv][v] == neg_inf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nv; ++k) {
      if (best[k][v] == neg_inf) continue;
      worst = std::min(worst, (best[nv][v] - best[k][v]) /
                                  static_cast<double>(nv - k));
    }
    if (worst > best_mean) {
      best_mean = worst;
      best_v = v;
    }
  }
  if (best_v == nv || !(best_mean > tol)) return {};
  DirectedCircuit c = trace_cycle(g, pred, nv, best_v);
  if (c.arcs.empty() ||
      !(c.profit > tol * static_cast<double>(c.arcs.size()))) {
    return {};
  }
  return c;
}

void cancel(const CirculationInstance& instance, const DirectedCircuit& c,
            Circulation& f) {
  int delta = std::numeric_limits<int>::max();
  for (const auto& a : c.arcs) {
    const int room = a.forward ? instance.capacity(a.arc) - f.flow[a.arc]
                               : f.flow[a.arc];
    delta = std::min(delta, room);
  }
  for (const auto& a : c.arcs) f.flow[a.arc] += a.forward ? delta : -delta;
}

}  // namespace

Circulation solve_max_profit(const CirculationInstance& instance) {
  Circulation f{std::vector<int>(instance.num_arcs(), 0)};
  const double tol = mean_tolerance(instance);
  const std::size_t limit = 64 * instance.num_arcs() * instance.num_arcs() + 64;
  for (std::size_t iter = 0; iter < limit; ++iter) {
    DirectedCircuit c = max_mean_circuit(residual_graph(instance, f), tol);
    if (c.arcs.empty()) {
      OptimalityReport report = is_optimal(instance, f);
      if (report.optimal) return f;
      c = std::move(*report.certificate);
    }
    cancel(instance, c, f);
  }
  throw Error(ErrorCode::kNoConvergence, "cycle canceling did not terminate");
}

OptimalityReport is_optimal(const CirculationInstance& instance,
                            const Circulation& f) {
  check_feasible(instance, f);
  const ResidualGraph g = residual_graph(instance, f);
  const double tol = mean_tolerance(instance);
  const std::size_t nv = g.num_vertices;

  // Longest paths from a virtual source with every arc profit lowered by
  // tol: a circuit stays relaxable after nv rounds iff its mean exceeds tol.
  std::vector<double> dist(nv, 0.0);
  std::vector<long> pred(nv, -1);
  long last = -1;
  for (std::size_t round = 0; round < nv; ++round) {
    last = -1;
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
      const auto& arc = g.arcs[a];
      const double cand = dist[arc.tail] + (arc.profit - tol);
      if (cand > dist[arc.head]) {
        dist[arc.head] = cand;
        pred[arc.head] = static_cast<long>(a);
        last = static_cast<long>(arc.head);
      }
    }
    if (last < 0) return {};
  }

  // Walking back nv predecessors from a vertex relaxed in the last round
  // lands on a circuit of the predecessor graph.
  std::size_t v = static_cast<std::size_t>(last);
  for (std::size_t k = 0; k < nv; ++k) {
    if (pred[v] < 0) return {};
    v = g.arcs[static_cast<std::size_t>(pred[v])].tail;
  }
  DirectedCircuit c;
  std::size_t cur = v;
  do {
    const auto& arc = g.arcs[static_cast<std::size_t>(pred[cur])];
    c.arcs.push_back(arc);
    c.profit += arc.profit;
    cur = arc.tail;
  } while (cur != v && c.arcs.size() <= nv);
  std::reverse(c.arcs.begin(), c.arcs.end());
  if (cur != v || !(c.profit > tol * static_cast<double>(c.arcs.size()))) {
    return {};
  }
  return OptimalityReport{false, std::move(c)};
}

std::vector<std::vector<std::size_t>> supports_from_circulation(
    const CirculationInstance& instance, const Circulation& f) {
  check_feasible(instance, f);
  std::vector<std::vector<std::size_t>> supports(instance.d());
  for (std::size_t i = 0; i < instance.d(); ++i)
    for (std::size_t j = 0; j < instance.n(); ++j)
      if (f.flow[instance.profit_arc(i, j)] == 1) supports[i].push_back(j);
  return supports;
}

// --- Undirected circuits ----------------------------------------------------

namespace {

struct VertexIds {
  std::size_t d;
  std::size_t n;

  std::size_t count() const { return 1 + d + n; }
  std::size_t id(const CircuitVertex& v) const {
    switch (v.kind) {
      case CircuitVertex::Kind::kT: return 0;
      case CircuitVertex::Kind::kU: return 1 + v.index;
      case CircuitVertex::Kind::kW: return 1 + d + v.index;
    }
    return 0;
  }
  CircuitVertex vertex(std::size_t id) const {
    if (id == 0) return {CircuitVertex::Kind::kT, 0};
    if (id <= d) return {CircuitVertex::Kind::kU, id - 1};
    return {CircuitVertex::Kind::kW, id - 1 - d};
  }
  bool is_u(std::size_t id) const { return id >= 1 && id <= d; }
  bool is_w(std::size_t id) const { return id > d && id < count(); }
  // Underlying graph of D: t-u, t-w and u-w edges.
  bool adjacent(std::size_t a, std::size_t b) const {
    if (a == b) return false;
    if (a == 0 || b == 0) return true;
    return (is_u(a) && is_w(b)) || (is_w(a) && is_u(b));
  }
};

std::vector<std::size_t> canonical_rotation(std::vector<std::size_t> seq) {
  const std::size_t len = seq.size();
  std::vector<std::size_t> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t start = 0; start < len; ++start) {
      std::vector<std::size_t> cand(len);
      for (std::size_t k = 0; k < len; ++k) cand[k] = seq[(start + k) % len];
      if (best.empty() || cand < best) best = std::move(cand);
    }
    std::reverse(seq.begin(), seq.end());
  }
  return best;
}

UndirectedCircuit circuit_from_ids(const VertexIds& ids,
                                   const std::vector<std::size_t>& seq) {
  UndirectedCircuit c;
  c.kind = seq.front() == 0 || std::find(seq.begin(), seq.end(), 0) != seq.end()
               ? CircuitKind::kThroughT
               : CircuitKind::kUWAlternating;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const std::size_t a = seq[k];
    const std::size_t b = seq[(k + 1) % seq.size()];
    c.vertices.push_back(ids.vertex(a));
    if (ids.is_u(a)) c.u_sequence.push_back(a - 1);
    if (ids.is_w(a)) c.w_sequence.push_back(a - 1 - ids.d);
    if (ids.is_u(a) && ids.is_w(b)) c.chi.push_back({a - 1, b - 1 - ids.d, +1});
    if (ids.is_w(a) && ids.is_u(b)) c.chi.push_back({b - 1, a - 1 - ids.d, -1});
  }
  return c;
}

}  // namespace

UndirectedCircuit make_circuit(std::size_t d, std::size_t n,
                               const std::vector<CircuitVertex>& vertices,
                               bool canonicalize) {
  const VertexIds ids{d, n};
  if (vertices.size() < 3) {
    throw Error(ErrorCode::kInvalidCircuit, "a circuit needs at least 3 vertices");
  }
  std::vector<std::size_t> seq;
  std::vector<bool> used(ids.count(), false);
  for (const auto& v : vertices) {
    const bool in_range = v.kind == CircuitVertex::Kind::kT
                              ? v.index == 0
                              : v.index < (v.kind == CircuitVertex::Kind::kU ? d : n);
    if (!in_range) throw Error(ErrorCode::kInvalidCircuit, "vertex out of range");
    const std::size_t id = ids.id(v);
    if (used[id]) throw Error(ErrorCode::kInvalidCircuit, "repeated vertex");
    used[id] = true;
    seq.push_back(id);
  }
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (!ids.adjacent(seq[k], seq[(k + 1) % seq.size()])) {
      throw Error(ErrorCode::kInvalidCircuit, "consecutive vertices not adjacent in D");
    }
  }
  return circuit_from_ids(ids, canonicalize ? canonical_rotation(seq) : seq);
}

std::vector<UndirectedCircuit> enumerate_undirected_circuits(std::size_t d,
                                                             std::size_t n) {
  if (d == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidParameters, "need d, n >= 1");
  }
  const VertexIds ids{d, n};
  const std::size_t nv = ids.count();
  std::vector<std::vector<std::size_t>> found;

  // Each cycle is generated once: from its smallest vertex, through larger
  // vertices only, and with second vertex < last vertex.
  std::vector<std::size_t> path;
  std::vector<bool> on_path(nv, false);
  auto extend = [&](auto&& self, std::size_t start) -> void {
    const std::size_t last = path.back();
    for (std::size_t next = start + 1; next < nv; ++next) {
      if (on_path[next] || !ids.adjacent(last, next)) continue;
      path.push_back(next);
      on_path[next] = true;
      if (path.size() >= 3 && ids.adjacent(next, start) && path[1] < next) {
        found.push_back(path);
      }
      self(self, start);
      on_path[next] = false;
      path.pop_back();
    }
  };
  for (std::size_t start = 0; start < nv; ++start) {
    path = {start};
    on_path[start] = true;
    extend(extend, start);
    on_path[start] = false;
  }

  std::sort(found.begin(), found.end());
  std::vector<UndirectedCircuit> out;
  out.reserve(found.size());
  for (const auto& seq : found) out.push_back(circuit_from_ids(ids, seq));
  return out;
}

double circuit_profit(const UndirectedCircuit& circuit, const Matrix& profits) {
  double total = 0.0;
  for (const auto& e : circuit.chi) {
    if (e.u >= profits.rows() || e.w >= profits.cols()) {
      throw Error(ErrorCode::kInvalidCircuit, "chi entry outside the profit matrix");
    }
    total += e.sign * profits(e.u, e.w);
  }
  return total;
}

UndirectedCircuit undirected_from_residual(const CirculationInstance& instance,
                                           const DirectedCircuit& circuit) {
  const VertexIds ids{instance.d(), instance.n()};
  std::vector<CircuitVertex> vertices;
  for (const auto& a : circuit.arcs) vertices.push_back(ids.vertex(a.tail));
  return make_circuit(instance.d(), instance.n(), vertices, false);
}

}  // namespace spca
