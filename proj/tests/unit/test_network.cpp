#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "entdist/network.hpp"

using namespace entdist;

TEST_CASE("hop_distance doubles per entanglement level", "[network]") {
  CHECK(hop_distance(1) == 1);
  CHECK(hop_distance(2) == 2);
  CHECK(hop_distance(3) == 4);
  for (int l = 1; l < 40; ++l) CHECK(hop_distance(l + 1) == 2 * hop_distance(l));
  CHECK_THROWS_AS(hop_distance(0), DomainError);
  CHECK_THROWS_AS(hop_distance(-3), DomainError);
}

TEST_CASE("build_network validates edges", "[network]") {
  SECTION("two nodes") {
    const auto net = build_network(2, {{0, 1, 1}});
    REQUIRE(net.node_count() == 2);
    REQUIRE(net.neighbors(0).size() == 1);
    REQUIRE(net.neighbors(1).size() == 1);
    CHECK(net.neighbors(0)[0].node == 1);
    CHECK(net.neighbors(1)[0].node == 0);
    CHECK(net.neighbors(0)[0].level == net.neighbors(1)[0].level);
  }
  SECTION("duplicate unordered pair") {
    CHECK_THROWS_AS(build_network(2, {{0, 1, 1}, {1, 0, 2}}), InvalidInput);
  }
  SECTION("isolated node") {
    const auto net = build_network(3, {{0, 2, 1}});
    CHECK(net.neighbors(1).empty());
  }
  SECTION("bad endpoints and levels") {
    CHECK_THROWS_AS(build_network(2, {{0, 2, 1}}), InvalidInput);
    CHECK_THROWS_AS(build_network(2, {{1, 1, 1}}), InvalidInput);
    CHECK_THROWS_AS(build_network(2, {{0, 1, 0}}), InvalidInput);
  }
}

TEST_CASE("neighbors are ascending by id", "[network]") {
  const auto path = build_network(3, {{1, 2, 1}, {0, 1, 2}});
  const auto n1 = path.neighbors(1);
  REQUIRE(n1.size() == 2);
  CHECK(n1[0].node == 0);
  CHECK(n1[0].level == 2);
  CHECK(n1[1].node == 2);

  const auto k3 = build_network(3, {{0, 2, 1}, {1, 2, 1}, {0, 1, 1}});
  const auto n0 = k3.neighbors(0);
  REQUIRE(n0.size() == 2);
  CHECK(n0[0].node == 1);
  CHECK(n0[1].node == 2);

  CHECK_THROWS_AS(k3.neighbors(3), InvalidInput);
}

TEST_CASE("generate_network topologies", "[network]") {
  SECTION("line") {
    const auto net = generate_network(TopologyKind::kLine, {.nodes = 4}, 0);
    const std::vector<EntangledEdge> expected{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}};
    CHECK(std::vector<EntangledEdge>(net.edges().begin(), net.edges().end()) == expected);
  }
  SECTION("grid") {
    const auto net = generate_network(TopologyKind::kGrid, {.rows = 2, .cols = 3}, 0);
    CHECK(net.node_count() == 6);
    CHECK(net.edge_count() == 7);  // 2*2 horizontal + 3 vertical
  }
  SECTION("random geometric with radius beyond the square's diameter is complete") {
    const GeneratorParams params{.nodes = 9, .radius = 2.0};
    const auto net = generate_network(TopologyKind::kRandomGeometric, params, 1234);
    CHECK(net.edge_count() == 36);
    for (NodeId i = 0; i < 9; ++i) CHECK(net.degree(i) == 8);
  }
  SECTION("invalid parameters") {
    CHECK_THROWS_AS(generate_network(TopologyKind::kLine, {}, 0), InvalidInput);
    CHECK_THROWS_AS(generate_network(TopologyKind::kGrid, {.rows = 0, .cols = 3}, 0), InvalidInput);
    CHECK_THROWS_AS(generate_network(TopologyKind::kRandomGeometric, {.nodes = 5, .radius = 0.0}, 0), InvalidInput);
    CHECK_THROWS_AS(generate_network(TopologyKind::kLine, {.nodes = 5, .upgrade_fraction = 1.5}, 0), InvalidInput);
  }
}

TEST_CASE("random geometric edges match a pairwise distance check", "[network]") {
  // Recreate the node placement with the same generator stream and compare
  // the edge set against a direct all-pairs computation.
  const GeneratorParams params{.nodes = 30, .radius = 0.3};
  const std::uint64_t seed = 99;
  const auto net = generate_network(TopologyKind::kRandomGeometric, params, seed);
  Rng rng(seed);
  std::vector<double> xs(30), ys(30);
  for (std::size_t i = 0; i < 30; ++i) {
    xs[i] = rng.uniform();
    ys[i] = rng.uniform();
  }
  std::size_t expected = 0;
  for (NodeId u = 0; u < 30; ++u)
    for (NodeId v = u + 1; v < 30; ++v)
      if (std::hypot(xs[u] - xs[v], ys[u] - ys[v]) <= 0.3) ++expected;
  CHECK(net.edge_count() == expected);
}

TEST_CASE("generated networks are deterministic and structurally consistent", "[network]") {
  for (std::uint64_t seed : {1ULL, 2ULL, 77ULL, 123456789ULL}) {
    const GeneratorParams params{.nodes = 40, .radius = 0.25, .upgrade_fraction = 0.3};
    const auto a = generate_network(TopologyKind::kRandomGeometric, params, seed);
    const auto b = generate_network(TopologyKind::kRandomGeometric, params, seed);
    CHECK(a == b);

    std::size_t degree_sum = 0;
    for (NodeId i = 0; i < a.node_count(); ++i) {
      degree_sum += a.degree(i);
      for (const auto& adj : a.neighbors(i)) {
        bool mirrored = false;
        for (const auto& back : a.neighbors(adj.node))
          if (back.node == i && back.level == adj.level) mirrored = true;
        CHECK(mirrored);
      }
    }
    CHECK(degree_sum == 2 * a.edge_count());
    for (const auto& e : a.edges()) CHECK((e.level >= 1 && e.level <= 3));
  }
}

TEST_CASE("level upgrades only promote to levels 2 and 3", "[network]") {
  const auto net = generate_network(TopologyKind::kLine, {.nodes = 200, .upgrade_fraction = 1.0}, 5);
  std::size_t two = 0, three = 0;
  for (const auto& e : net.edges()) {
    REQUIRE((e.level == 2 || e.level == 3));
    (e.level == 2 ? two : three)++;
  }
  CHECK(two > 50);
  CHECK(three > 50);
}
