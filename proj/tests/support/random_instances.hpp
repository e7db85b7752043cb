#pragma once

#include <vector>

#include "entdist/cost.hpp"
#include "entdist/engine.hpp"
#include "entdist/network.hpp"
#include "entdist/random.hpp"

namespace entdist::testing {

struct Instance {
  EntangledNetwork net;
  std::vector<EdgeQuality> quality;
  Demand demand;
};

/// Connected network on `n` nodes (random spanning tree plus extra edges with
/// probability `density`) with every edge usable: p, omega in [0.05, 1].
inline Instance random_connected_instance(Rng& rng, std::size_t n, double density) {
  std::vector<EntangledEdge> edges;
  std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
  for (NodeId v = 1; v < n; ++v) {
    const NodeId u = rng.below(v);
    edges.push_back({u, v, 1 + static_cast<int>(rng.below(3))});
    linked[u][v] = linked[v][u] = true;
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!linked[u][v] && rng.uniform() < density) edges.push_back({u, v, 1});

  Instance inst;
  inst.net = build_network(n, edges);
  for (std::size_t k = 0; k < edges.size(); ++k) inst.quality.push_back({rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)});
  inst.demand.source = rng.below(n);
  inst.demand.target = n > 1 ? (inst.demand.source + 1 + rng.below(n - 1)) % n : 0;
  return inst;
}

}  // namespace entdist::testing
