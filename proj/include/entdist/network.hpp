#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "entdist/error.hpp"
#include "entdist/random.hpp"

namespace entdist {

using NodeId = std::size_t;

/// Number of physical hops spanned by an L_level entangled connection.
/// Each swapping level doubles the span, so an L_l edge covers 2^(l-1) hops
/// with 2^(l-1) - 1 intermediate repeaters.
inline std::uint64_t hop_distance(int level) {
  if (level < 1) throw DomainError("hop_distance: level must be >= 1, got " + std::to_string(level));
  if (level > 64) throw DomainError("hop_distance: level " + std::to_string(level) + " overflows 64 bits");
  return std::uint64_t{1} << (level - 1);
}

struct EntangledEdge {
  NodeId u = 0;
  NodeId v = 0;
  int level = 1;

  friend bool operator==(const EntangledEdge&, const EntangledEdge&) = default;
};

struct Adjacent {
  NodeId node = 0;
  int level = 1;
  std::size_t edge = 0;  // index into EntangledNetwork::edges()

  friend bool operator==(const Adjacent&, const Adjacent&) = default;
};

/// Undirected entangled network. Immutable once built.
class EntangledNetwork {
 public:
  EntangledNetwork() = default;

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const EntangledEdge> edges() const noexcept { return edges_; }

  /// Incident edges of `i`, ascending by neighbor id.
  std::span<const Adjacent> neighbors(NodeId i) const {
    if (i >= adjacency_.size()) {
      throw InvalidInput("neighbors: node " + std::to_string(i) + " out of range (|V|=" +
                         std::to_string(adjacency_.size()) + ")");
    }
    return adjacency_[i];
  }

  std::size_t degree(NodeId i) const { return neighbors(i).size(); }

  friend bool operator==(const EntangledNetwork&, const EntangledNetwork&) = default;

 private:
  friend EntangledNetwork build_network(std::size_t, std::span<const EntangledEdge>);

  std::vector<EntangledEdge> edges_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

inline EntangledNetwork build_network(std::size_t node_count, std::span<const EntangledEdge> edges) {
  EntangledNetwork net;
  net.adjacency_.resize(node_count);
  net.edges_.reserve(edges.size());

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    const std::string where = "edge #" + std::to_string(k) + " (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ")";
    if (e.u >= node_count || e.v >= node_count) {
      throw InvalidInput(where + ": endpoint out of range (|V|=" + std::to_string(node_count) + ")");
    }
    if (e.u == e.v) throw InvalidInput(where + ": self-loop");
    if (e.level < 1) throw InvalidInput(where + ": level must be >= 1");
    const auto lo = static_cast<std::uint64_t>(std::min(e.u, e.v));
    const auto hi = static_cast<std::uint64_t>(std::max(e.u, e.v));
    if (!seen.insert((lo << 32) | hi).second) throw InvalidInput(where + ": duplicate node pair");

    net.edges_.push_back(e);
    net.adjacency_[e.u].push_back({e.v, e.level, k});
    net.adjacency_[e.v].push_back({e.u, e.level, k});
  }
  for (auto& adj : net.adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Adjacent& a, const Adjacent& b) { return a.node < b.node; });
  }
  return net;
}

inline EntangledNetwork build_network(std::size_t node_count, std::initializer_list<EntangledEdge> edges) {
  return build_network(node_count, std::span<const EntangledEdge>(edges.begin(), edges.size()));
}

enum class TopologyKind { kLine, kGrid, kRandomGeometric };

inline std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kLine: return "line";
    case TopologyKind::kGrid: return "grid";
    case TopologyKind::kRandomGeometric: return "random_geometric";
  }
  return "?";
}

inline TopologyKind parse_topology_kind(std::string_view name) {
  if (name == "line") return TopologyKind::kLine;
  if (name == "grid") return TopologyKind::kGrid;
  if (name == "random_geometric") return TopologyKind::kRandomGeometric;
  throw InvalidInput("unknown topology kind '" + std::string(name) +
                     "' (expected line, grid or random_geometric)");
}

struct GeneratorParams {
  std::size_t nodes = 0;  // line, random_geometric
  std::size_t rows = 0;   // grid
  std::size_t cols = 0;   // grid
  double radius = 0.0;    // random_geometric, in the unit square
  // Probability that a generated edge is promoted to level 2 or 3.
  double upgrade_fraction = 0.0;

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

/// Deterministic topology generator. All edges are level 1 unless
/// `upgrade_fraction` > 0, in which case each edge is independently promoted
/// to a uniformly chosen level in {2, 3} with that probability.
inline EntangledNetwork generate_network(TopologyKind kind, const GeneratorParams& params, std::uint64_t seed) {
  if (!(params.upgrade_fraction >= 0.0 && params.upgrade_fraction <= 1.0)) {
    throw InvalidInput("generate_network: upgrade_fraction must lie in [0,1]");
  }
  Rng rng(seed);
  std::vector<EntangledEdge> edges;
  std::size_t n = 0;

  switch (kind) {
    case TopologyKind::kLine:
      if (params.nodes < 1) throw InvalidInput("generate_network(line): nodes must be >= 1");
      n = params.nodes;
      for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1});
      break;
    case TopologyKind::kGrid:
      if (params.rows < 1 || params.cols < 1) throw InvalidInput("generate_network(grid): rows*cols must be >= 1");
      n = params.rows * params.cols;
      for (std::size_t r = 0; r < params.rows; ++r) {
        for (std::size_t c = 0; c < params.cols; ++c) {
          const NodeId id = r * params.cols + c;
          if (c + 1 < params.cols) edges.push_back({id, id + 1, 1});
          if (r + 1 < params.rows) edges.push_back({id, id + params.cols, 1});
        }
      }
      break;
    case TopologyKind::kRandomGeometric: {
      if (params.nodes < 1) throw InvalidInput("generate_network(random_geometric): nodes must be >= 1");
      if (!(params.radius > 0.0)) throw InvalidInput("generate_network(random_geometric): radius must be > 0");
      n = params.nodes;
      std::vector<double> xs(n), ys(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = rng.uniform();
        ys[i] = rng.uniform();
      }
      const double r2 = params.radius * params.radius;
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
          const double dx = xs[u] - xs[v];
          const double dy = ys[u] - ys[v];
          if (dx * dx + dy * dy <= r2) edges.push_back({u, v, 1});
        }
      }
      break;
    }
  }

  if (params.upgrade_fraction > 0.0) {
    for (auto& e : edges) {
      if (rng.uniform() < params.upgrade_fraction) e.level = 2 + static_cast<int>(rng.below(2));
    }
  }
  return build_network(n, edges);
}

}  // namespace entdist
