#include <doctest.h>

#include "oracles.hpp"
#include "radiosim/topology.hpp"

using namespace radiosim;

namespace {

Topology make(TopologyFamily f, int n, uint64_t seed = 0, double p = 0.25, int layers = 0,
              bool directed = false) {
  TopologySpec s;
  s.family = f;
  s.n = n;
  s.seed = seed;
  s.p = p;
  s.layers = layers;
  s.directed = directed;
  return Topology::build(s);
}

}  // namespace

TEST_CASE("eccentricities of the fixed families") {
  CHECK(make(TopologyFamily::Path, 5).eccentricity() == 4);
  CHECK(make(TopologyFamily::Complete, 8).eccentricity() == 1);
  CHECK(make(TopologyFamily::Cycle, 7, 0, 0.25, 0, true).eccentricity() == 6);  // directed ring
  CHECK(make(TopologyFamily::Cycle, 8).eccentricity() == 4);
  CHECK(make(TopologyFamily::Path, 1).eccentricity() == 0);
  CHECK(make(TopologyFamily::Grid, 16).eccentricity() == 6);  // 4x4 corner to corner
  CHECK(make(TopologyFamily::Star, 9).eccentricity() == 2);
  CHECK(make(TopologyFamily::Layered, 12, 0, 0.25, 4).eccentricity() == 3);
}

TEST_CASE("construction rejects impossible inputs") {
  CHECK_THROWS_AS(make(TopologyFamily::Path, 0), std::invalid_argument);
  CHECK_THROWS_AS(make(TopologyFamily::Layered, 8, 0, 0.25, 1), std::invalid_argument);
  CHECK_THROWS_AS(make(TopologyFamily::Layered, 4, 0, 0.25, 9), std::invalid_argument);
  CHECK_THROWS_AS(make(TopologyFamily::Cycle, 2, 0, 0.25, 0, true), std::invalid_argument);
  CHECK_THROWS_AS(make(TopologyFamily::RandomDigraph, 8, 1, 1.5), std::invalid_argument);
  // undirected graphs must carry both arc directions
  CHECK_THROWS_AS(Topology::from_arcs(2, false, {{0, 1}}), std::invalid_argument);
  // self loops and range violations
  CHECK_THROWS_AS(Topology::from_arcs(2, true, {{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology::from_arcs(2, true, {{0, 2}}), std::invalid_argument);
  // disconnected input
  CHECK_THROWS_AS(Topology::from_arcs(3, true, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("random generators stay connected and undirected graphs stay symmetric") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Topology d = make(TopologyFamily::RandomDigraph, 17, seed, 0.05);
    CHECK(d.directed());
    Topology u = make(TopologyFamily::RandomUndirected, 17, seed, 0.05);
    CHECK_FALSE(u.directed());
    for (int v = 0; v < u.n(); ++v)
      for (int w : u.out(v)) {
        const auto& back = u.out(w);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
  }
  // p = 0 leaves just the planted backbone
  CHECK(make(TopologyFamily::RandomDigraph, 9, 3, 0.0).eccentricity() == 8);
}

TEST_CASE("cached eccentricity matches all-pairs Floyd-Warshall on 200 random graphs") {
  int checked = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 63);
    Topology d = make(TopologyFamily::RandomDigraph, n, seed, 0.1);
    CHECK(d.eccentricity() == oracles::floyd_warshall_eccentricity(d));
    Topology u = make(TopologyFamily::RandomUndirected, n, seed, 0.1);
    CHECK(u.eccentricity() == oracles::floyd_warshall_eccentricity(u));
    checked += 2;
  }
  CHECK(checked == 200);
}

TEST_CASE("eccentricity matches the oracle across every generator family") {
  for (uint64_t seed = 1; seed <= 3; ++seed)
    for (int n : {2, 5, 12, 25}) {
      for (auto f : {TopologyFamily::Path, TopologyFamily::Cycle, TopologyFamily::Star,
                     TopologyFamily::Grid, TopologyFamily::Complete})
        CHECK(make(f, n, seed).eccentricity() ==
              oracles::floyd_warshall_eccentricity(make(f, n, seed)));
      if (n >= 8) {
        Topology l = make(TopologyFamily::Layered, n, seed, 0.25, n / 4);
        CHECK(l.eccentricity() == oracles::floyd_warshall_eccentricity(l));
      }
    }
}

TEST_CASE("multi source distances agree with a plain BFS oracle") {
  Topology g = make(TopologyFamily::Grid, 16);
  const std::vector<int> srcs{0, 15};
  const auto got = g.distances_from_set(srcs);
  const auto want = oracles::bfs_from_set(g, srcs);
  CHECK(got == want);
}
