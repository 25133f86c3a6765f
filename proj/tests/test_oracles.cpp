#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tcw/oracles.hpp"
#include "tcw/reductions.hpp"

using namespace tcw;

namespace {

std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> v(g.n());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("cvc_brute on small fixtures") {
  CHECK(cvc_brute(CapacitatedGraph(Graph(3), {0, 0, 0}), {0, 1, 2}) == 0);

  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(cvc_brute(CapacitatedGraph(edge, {1, 1}), {0, 1}) == 1);

  Graph k4(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  CHECK(cvc_brute(CapacitatedGraph(k4, {2, 2, 2, 2}), all_vertices(k4)) == 3);
}

TEST_CASE("cds_brute on small fixtures") {
  CHECK(cds_brute(CapacitatedGraph(Graph(1), {0})) == 1);

  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(cds_brute(CapacitatedGraph(edge, {0, 0})) == 2);
  CHECK(cds_brute(CapacitatedGraph(edge, {1, 0})) == 1);

  Graph star(4);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  CHECK(cds_brute(CapacitatedGraph(star, {3, 0, 0, 0})) == 1);
  CHECK(cds_brute(CapacitatedGraph(star, {2, 0, 0, 0})) == 2);
}

TEST_CASE("imb_brute on small fixtures") {
  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(imb_brute(edge) == 2);

  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  CHECK(imb_brute(p3) == 2);

  Graph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(0, 2);
  k3.add_edge(1, 2);
  CHECK(imb_brute(k3) == 4);
}

TEST_CASE("oracles are invariant under vertex relabeling") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    Graph g = testing::random_graph(6, 0.4, rng);
    std::vector<Vertex> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h = g.relabeled(perm);

    auto caps = testing::random_caps(6, 3, rng);
    std::vector<std::int64_t> hcaps(6);
    for (int v = 0; v < 6; ++v) hcaps[perm[v]] = caps[v];

    CHECK(cvc_brute(CapacitatedGraph(g, caps), all_vertices(g)) ==
          cvc_brute(CapacitatedGraph(h, hcaps), all_vertices(h)));
    CHECK(cds_brute(CapacitatedGraph(g, caps)) ==
          cds_brute(CapacitatedGraph(h, hcaps)));
    CHECK(imb_brute(g) == imb_brute(h));
  }
}

TEST_CASE("cvc with ample capacities is classical vertex cover") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 30; ++round) {
    Graph g = testing::random_graph(7, 0.4, rng);
    std::vector<std::int64_t> caps(7);
    for (int v = 0; v < 7; ++v) caps[v] = g.degree(v);
    CHECK(cvc_brute(CapacitatedGraph(g, caps), all_vertices(g)) ==
          vertex_cover_brute(g));
  }
}

TEST_CASE("exact tree-cut width of tiny graphs") {
  CHECK(tcw_exact(Graph(1), 3) == 1);

  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(tcw_exact(edge, 3) == 1);

  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  CHECK(tcw_exact(p3, 3) == 1);

  Graph k4(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  CHECK(tcw_exact(k4, 5) >= 3);
}

TEST_CASE("exact width of the double star is two") {
  Graph s2 = gen_star_of_stars(2);
  REQUIRE(s2.n() == 7);
  CHECK(tcw_exact(s2, 4) == 2);
}

TEST_CASE("any valid decomposition is at least as wide as the exact width") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 15; ++round) {
    Graph g = testing::random_connected_graph(5, 0.4, rng);
    int exact = tcw_exact(g, g.n());
    for (int d = 0; d < 3; ++d) {
      auto dec = testing::random_decomposition(g, rng);
      CHECK(metrics(g, dec).width >= exact);
    }
  }
}
