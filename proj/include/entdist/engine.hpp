#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "entdist/cost.hpp"
#include "entdist/error.hpp"
#include "entdist/heap.hpp"
#include "entdist/memory.hpp"
#include "entdist/network.hpp"
#include "entdist/random.hpp"

namespace entdist {

struct Demand {
  NodeId source = 0;
  NodeId target = 0;
  std::size_t user = 0;
  double dt = 0.0;  // storage interval at which edge qualities are evaluated

  friend bool operator==(const Demand&, const Demand&) = default;
};

// --- edge qualities ---------------------------------------------------------

/// Everything computed for one node pair at evaluation time.
struct EdgeEvaluation {
  double pair_error = 0.0;           // |zeta_i - zeta_j|
  double fidelity_difference = 0.0;  // |F_i - F_j|
  double distance = 0.0;             // plane distance at t0 + dt
  double min_fidelity = 0.0;
  bool feasible = false;
  EdgeQuality quality;
};

/// A pair is feasible when its memory-error mismatch, fidelity mismatch and
/// plane distance are within bounds and both stored fidelities still meet
/// f_crit. Infeasible pairs get p = 0; omega is always reported.
inline EdgeEvaluation evaluate_edge(const NodeMemoryState& a, const NodeMemoryState& b, const Thresholds& th,
                                    double dt) {
  EdgeEvaluation ev;
  const double zeta_a = evolve_error(a, dt);
  const double zeta_b = evolve_error(b, dt);
  const double f_a = evolve_fidelity(a, dt);
  const double f_b = evolve_fidelity(b, dt);

  ev.pair_error = pair_error(zeta_a, zeta_b);
  ev.fidelity_difference = fidelity_difference(f_a, f_b);
  ev.distance = pair_distance({zeta_a, 1.0 - f_a}, {zeta_b, 1.0 - f_b});
  ev.min_fidelity = std::min(f_a, f_b);
  ev.feasible = ev.pair_error <= th.eps_crit && ev.fidelity_difference <= 1.0 - th.f_delta &&
                ev.distance <= th.d_max && ev.min_fidelity >= th.f_crit;

  ev.quality.omega = usability(change_vector(a, dt), change_vector(b, dt), th.d_max);
  ev.quality.p = ev.feasible ? success_probability(ev.distance, th) : 0.0;
  return ev;
}

/// Per-edge qualities (indexed like net.edges()) at storage interval dt.
inline std::vector<EdgeQuality> edge_qualities(const EntangledNetwork& net, std::span<const NodeMemoryState> mem,
                                               const Thresholds& th, double dt) {
  if (mem.size() != net.node_count()) {
    throw InvalidInput("edge_qualities: expected " + std::to_string(net.node_count()) + " memory states, got " +
                       std::to_string(mem.size()));
  }
  th.validate();
  std::vector<EdgeQuality> out;
  out.reserve(net.edge_count());
  for (const auto& e : net.edges()) out.push_back(evaluate_edge(mem[e.u], mem[e.v], th, dt).quality);
  return out;
}

// --- results ----------------------------------------------------------------

struct DistributionStats {
  std::uint64_t extractions = 0;       // nodes finalized
  std::uint64_t heap_comparisons = 0;  // priority-queue key comparisons
  std::uint64_t cost_comparisons = 0;  // tentative-vs-current and candidate ordering
  std::uint64_t relaxations = 0;       // candidate offers evaluated
  std::uint64_t improvements = 0;      // offers that lowered a cost

  std::uint64_t comparisons() const noexcept { return heap_comparisons + cost_comparisons; }
};

struct DistributionResult {
  NodeId source = 0;
  NodeId target = 0;
  std::vector<double> cost;                 // per-node cost to the target
  std::vector<std::vector<Candidate>> sets;  // per-node distributing set, priority order
  std::vector<NodeId> finalization_order;
  bool unreachable = false;
  double path_usability = 0.0;  // along the highest-priority route from the source
  DistributionStats stats;

  double source_cost() const { return cost.at(source); }
};

struct RealizedPath {
  std::vector<NodeId> nodes;
  std::vector<EdgeQuality> hops;  // hops[k] joins nodes[k] and nodes[k+1]

  std::vector<double> hop_usability() const {
    std::vector<double> out;
    out.reserve(hops.size());
    for (const auto& q : hops) out.push_back(q.omega);
    return out;
  }

  double usability() const {
    const auto omegas = hop_usability();
    return entdist::path_usability(omegas);
  }

  /// Sum of per-hop pair costs 1/(p omega).
  double pair_cost_sum() const {
    double sum = 0.0;
    for (const auto& q : hops) sum += pair_cost(q);
    return sum;
  }
};

namespace detail {

inline void check_demand(const EntangledNetwork& net, const Demand& d) {
  const auto n = net.node_count();
  if (d.source >= n) throw InvalidInput("demand: source " + std::to_string(d.source) + " out of range");
  if (d.target >= n) throw InvalidInput("demand: target " + std::to_string(d.target) + " out of range");
  if (!(d.dt >= 0.0)) throw DomainError("demand: dt must be >= 0");
}

inline void check_qualities(const EntangledNetwork& net, std::span<const EdgeQuality> q) {
  if (q.size() != net.edge_count()) {
    throw InvalidInput("expected " + std::to_string(net.edge_count()) + " edge qualities, got " +
                       std::to_string(q.size()));
  }
  for (const auto& e : q) {
    if (!(e.p >= 0.0 && e.p <= 1.0) || !(e.omega >= 0.0 && e.omega <= 1.0)) {
      throw DomainError("edge quality outside [0,1]");
    }
  }
}

inline double primary_route_usability(const DistributionResult& r) {
  if (r.unreachable) return 0.0;
  double product = 1.0;
  NodeId at = r.source;
  for (std::size_t hops = 0; at != r.target; ++hops) {
    if (hops > r.cost.size() || r.sets[at].empty()) throw InvariantViolation("primary route does not reach the target");
    const Candidate& next = r.sets[at].front();
    product *= next.quality.omega;
    at = next.node;
  }
  return product;
}

}  // namespace detail

/// Minimal-cost opportunistic distribution towards `demand.target`.
///
/// Label setting from the target: the cheapest unfinalized node is finalized
/// and offered as a candidate to each unfinalized neighbor, which keeps it
/// only if its cost strictly drops. Finalized costs never decrease, so every
/// member of a distributing set is strictly cheaper than its owner.
inline DistributionResult distribute(const EntangledNetwork& net, std::span<const EdgeQuality> quality,
                                     const Demand& demand) {
  detail::check_demand(net, demand);
  detail::check_qualities(net, quality);
  const std::size_t n = net.node_count();

  DistributionResult r;
  r.source = demand.source;
  r.target = demand.target;
  r.cost.assign(n, kInfinity);
  r.sets.assign(n, {});
  r.finalization_order.reserve(n);
  std::vector<bool> finalized(n, false);

  IndexedMinHeap heap(n);
  r.cost[demand.target] = 0.0;
  heap.push_or_decrease(demand.target, 0.0);

  std::vector<Candidate> trial;
  while (!heap.empty()) {
    const NodeId u = heap.pop();
    finalized[u] = true;
    r.finalization_order.push_back(u);
    ++r.stats.extractions;

    for (const Adjacent& adj : net.neighbors(u)) {
      const NodeId i = adj.node;
      if (finalized[i]) continue;
      const EdgeQuality q = quality[adj.edge];
      if (!(q.weight() > 0.0)) continue;
      ++r.stats.relaxations;

      const Candidate offer{u, q, r.cost[u]};
      trial = r.sets[i];
      auto it = trial.end();
      while (it != trial.begin()) {
        ++r.stats.cost_comparisons;
        if (!priority_before(offer, *(it - 1))) break;
        --it;
      }
      trial.insert(it, offer);

      const double c = weighted_total_cost(trial);
      ++r.stats.cost_comparisons;
      if (c < r.cost[i]) {
        r.cost[i] = c;
        r.sets[i].swap(trial);
        heap.push_or_decrease(i, c);
        ++r.stats.improvements;
      }
    }
  }
  r.stats.heap_comparisons = heap.comparisons();
  r.unreachable = std::isinf(r.cost[demand.source]);
  r.path_usability = detail::primary_route_usability(r);
  return r;
}

inline DistributionResult distribute(const EntangledNetwork& net, std::span<const NodeMemoryState> mem,
                                     const Thresholds& th, const Demand& demand) {
  detail::check_demand(net, demand);
  const auto q = edge_qualities(net, mem, th, demand.dt);
  return distribute(net, q, demand);
}

/// Throws InvariantViolation if `r` breaks a structural guarantee.
inline void check_result(const DistributionResult& r) {
  if (r.cost.at(r.target) != 0.0) throw InvariantViolation("target cost is not 0");
  if (!r.sets[r.target].empty()) throw InvariantViolation("target has a distributing set");
  for (NodeId i = 0; i < r.cost.size(); ++i) {
    if (i == r.target) continue;
    if (std::isfinite(r.cost[i]) && r.sets[i].empty()) {
      throw InvariantViolation("node " + std::to_string(i) + " has finite cost but no distributing set");
    }
    for (const auto& c : r.sets[i]) {
      if (!(r.cost[c.node] < r.cost[i])) {
        throw InvariantViolation("candidate " + std::to_string(c.node) + " of node " + std::to_string(i) +
                                 " is not strictly cheaper");
      }
    }
  }
  for (std::size_t k = 1; k < r.finalization_order.size(); ++k) {
    if (r.cost[r.finalization_order[k]] < r.cost[r.finalization_order[k - 1]]) {
      throw InvariantViolation("finalized costs decrease along extraction order");
    }
  }
}

/// Local greedy walk: repeatedly hop to the cheapest unvisited usable
/// neighbor (pair cost, ties to the lower id), stepping straight onto the
/// target whenever it is a usable neighbor.
inline RealizedPath greedy_walk(const EntangledNetwork& net, std::span<const EdgeQuality> quality,
                                const Demand& demand) {
  detail::check_demand(net, demand);
  detail::check_qualities(net, quality);

  RealizedPath path;
  std::vector<bool> visited(net.node_count(), false);
  NodeId at = demand.source;
  visited[at] = true;
  path.nodes.push_back(at);

  while (at != demand.target) {
    if (path.nodes.size() > net.node_count()) throw NoPathError(at, "greedy walk exceeded |V| steps");
    const Adjacent* pick = nullptr;
    double best = kInfinity;
    for (const Adjacent& adj : net.neighbors(at)) {
      const EdgeQuality q = quality[adj.edge];
      if (!(q.weight() > 0.0) || visited[adj.node]) continue;
      if (adj.node == demand.target) {
        pick = &adj;
        break;
      }
      const double c = pair_cost(q);
      if (c < best) {  // neighbors are ascending, so ties keep the lower id
        best = c;
        pick = &adj;
      }
    }
    if (pick == nullptr) {
      throw NoPathError(at, "greedy walk stuck at node " + std::to_string(at) + " before reaching the target");
    }
    path.hops.push_back(quality[pick->edge]);
    at = pick->node;
    visited[at] = true;
    path.nodes.push_back(at);
  }
  return path;
}

inline RealizedPath greedy_walk(const EntangledNetwork& net, std::span<const NodeMemoryState> mem,
                                const Thresholds& th, const Demand& demand) {
  detail::check_demand(net, demand);
  const auto q = edge_qualities(net, mem, th, demand.dt);
  return greedy_walk(net, q, demand);
}

/// Sample one concrete route: at each node the next hop is drawn from its
/// distributing set with the usability-weighted first-success distribution.
inline RealizedPath realize_path(const DistributionResult& r, Rng& rng) {
  if (r.unreachable || !std::isfinite(r.cost.at(r.source))) {
    throw DomainError("realize_path: source cannot reach the target");
  }
  RealizedPath path;
  NodeId at = r.source;
  path.nodes.push_back(at);
  while (at != r.target) {
    if (path.hops.size() >= r.cost.size()) throw InvariantViolation("realize_path: route longer than |V|");
    const auto& set = r.sets[at];
    if (set.empty()) throw InvariantViolation("realize_path: empty distributing set on route");
    const auto phi = weighted_selection_probabilities(std::span<const Candidate>(set));
    const double u = rng.uniform();
    std::size_t k = 0;
    double acc = phi[0];
    while (k + 1 < phi.size() && u >= acc) acc += phi[++k];
    path.hops.push_back(set[k].quality);
    at = set[k].node;
    path.nodes.push_back(at);
  }
  return path;
}

inline RealizedPath realize_path(const DistributionResult& r, std::uint64_t seed) {
  Rng rng(seed);
  return realize_path(r, rng);
}

// --- brute-force oracle -----------------------------------------------------

enum class OracleOrdering {
  kCostPriority,   // each subset ranked by ascending downstream cost, ties by id
  kAllPriorities,  // every ordering of every subset
};

inline constexpr std::size_t kOracleMaxNodes = 10;
inline constexpr std::size_t kOracleAllPrioritiesMaxNodes = 6;

namespace detail {

// Direct evaluation of 1/(1 - prod(1 - w)) + sum phi'_j c_j for one ordering.
struct OracleTerm {
  NodeId node;
  double weight;
  double downstream;
};

inline double oracle_set_cost(const std::vector<OracleTerm>& terms) {
  double miss = 1.0;
  for (const auto& t : terms) miss *= 1.0 - t.weight;
  const double hit = 1.0 - miss;
  if (!(hit > 0.0)) return kInfinity;
  double relay = 0.0;
  double prefix = 1.0;
  for (const auto& t : terms) {
    const double phi = t.weight * prefix / hit;
    if (phi > 0.0) relay += phi * t.downstream;
    prefix *= 1.0 - t.weight;
  }
  return 1.0 / hit + relay;
}

}  // namespace detail

/// Exhaustive minimum source cost. Tries every order in which nodes could be
/// settled after the target and, for each node, every non-empty subset of
/// already-settled usable neighbors; a node's cost is the best subset given
/// the costs settled before it.
inline double oracle_min_cost(const EntangledNetwork& net, std::span<const EdgeQuality> quality, const Demand& demand,
                              OracleOrdering ordering = OracleOrdering::kCostPriority) {
  detail::check_demand(net, demand);
  detail::check_qualities(net, quality);
  const std::size_t n = net.node_count();
  const std::size_t limit =
      ordering == OracleOrdering::kCostPriority ? kOracleMaxNodes : kOracleAllPrioritiesMaxNodes;
  if (n > limit) {
    throw InvalidInput("oracle_min_cost: refusing |V|=" + std::to_string(n) + " (limit " + std::to_string(limit) + ")");
  }
  if (demand.source == demand.target) return 0.0;

  std::vector<NodeId> order;
  for (NodeId v = 0; v < n; ++v)
    if (v != demand.target) order.push_back(v);

  double best = kInfinity;
  std::vector<double> cost(n);
  std::vector<bool> settled(n);
  std::vector<detail::OracleTerm> usable, terms;
  do {
    std::fill(cost.begin(), cost.end(), kInfinity);
    std::fill(settled.begin(), settled.end(), false);
    cost[demand.target] = 0.0;
    settled[demand.target] = true;

    for (NodeId v : order) {
      usable.clear();
      for (const Adjacent& adj : net.neighbors(v)) {
        const double w = quality[adj.edge].weight();
        if (settled[adj.node] && w > 0.0 && std::isfinite(cost[adj.node])) usable.push_back({adj.node, w, cost[adj.node]});
      }
      double node_best = kInfinity;
      const std::size_t subsets = std::size_t{1} << usable.size();
      for (std::size_t mask = 1; mask < subsets; ++mask) {
        terms.clear();
        for (std::size_t k = 0; k < usable.size(); ++k)
          if (mask & (std::size_t{1} << k)) terms.push_back(usable[k]);
        if (ordering == OracleOrdering::kCostPriority) {
          std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
            return a.downstream != b.downstream ? a.downstream < b.downstream : a.node < b.node;
          });
          node_best = std::min(node_best, detail::oracle_set_cost(terms));
        } else {
          std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.node < b.node; });
          do {
            node_best = std::min(node_best, detail::oracle_set_cost(terms));
          } while (std::next_permutation(terms.begin(), terms.end(),
                                         [](const auto& a, const auto& b) { return a.node < b.node; }));
        }
      }
      cost[v] = node_best;
      settled[v] = true;
      if (v == demand.source) break;
    }
    best = std::min(best, cost[demand.source]);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline double oracle_min_cost(const EntangledNetwork& net, std::span<const NodeMemoryState> mem, const Thresholds& th,
                              const Demand& demand, OracleOrdering ordering = OracleOrdering::kCostPriority) {
  detail::check_demand(net, demand);
  const auto q = edge_qualities(net, mem, th, demand.dt);
  return oracle_min_cost(net, q, demand, ordering);
}

// --- complexity instrumentation --------------------------------------------

/// Ceiling on comparisons / (|V| log2|V| + |E|) for the probe workloads.
/// Observed maxima over seeds 1..20 and |V| up to 3e4: line 0.21, grid 1.00,
/// random geometric 1.73.
inline constexpr double kComparisonConstant = 4.0;

struct ComplexityRow {
  TopologyKind kind = TopologyKind::kLine;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t extractions = 0;
  std::uint64_t comparisons = 0;

  /// |V| log2|V| + |E|, floored at 1 so a single node is well defined.
  double reference() const {
    const double v = static_cast<double>(nodes);
    const double r = (nodes > 1 ? v * std::log2(v) : 0.0) + static_cast<double>(edges);
    return std::max(r, 1.0);
  }

  double ratio() const { return static_cast<double>(comparisons) / reference(); }

  bool within_bound() const {
    return extractions <= nodes && static_cast<double>(comparisons) <= kComparisonConstant * reference();
  }
};

/// Target mean degree of the random geometric probe graphs.
inline constexpr double kProbeMeanDegree = 8.0;

inline GeneratorParams probe_params(TopologyKind kind, std::size_t nodes) {
  GeneratorParams p;
  p.nodes = nodes;
  if (kind == TopologyKind::kGrid) {
    p.rows = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(nodes))));
    p.cols = (nodes + p.rows - 1) / p.rows;
  }
  const double pi = 3.14159265358979323846;
  p.radius = std::min(std::sqrt(2.0), std::sqrt(kProbeMeanDegree / (pi * static_cast<double>(std::max<std::size_t>(nodes, 1)))));
  return p;
}

/// Runs distribute() from node |V|-1 to node 0 on generated networks of each
/// size, with seeded near-ideal memories, and records the counters.
inline std::vector<ComplexityRow> complexity_probe(std::span<const std::size_t> sizes, TopologyKind kind,
                                                   std::uint64_t seed) {
  std::vector<ComplexityRow> rows;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    const std::uint64_t run_seed = derive_seed(seed, k);
    const auto net = generate_network(kind, probe_params(kind, n), run_seed);

    Rng rng(derive_seed(run_seed, 1));
    std::vector<NodeMemoryState> mem(net.node_count());
    for (auto& m : mem) {
      m.zeta0 = rng.uniform(0.0, 0.01);
      m.f0 = rng.uniform(0.995, 1.0);
      m.model = {DriftKind::kLinear, rng.uniform(0.0, 1e-4), 1.0, kMaximallyMixedFidelity};
    }
    Thresholds th;
    th.d_max = 0.05;
    const Demand demand{net.node_count() - 1, 0, 0, 1.0};
    const auto result = distribute(net, mem, th, demand);

    rows.push_back({kind, net.node_count(), net.edge_count(), result.stats.extractions, result.stats.comparisons()});
  }
  return rows;
}

}  // namespace entdist
