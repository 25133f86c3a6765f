#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tcw/decomposition.hpp"

using namespace tcw;

TEST_CASE("example decomposition passes validation and matches the figure") {
  Graph g = testing::fig1_graph();
  auto dec = testing::fig1_decomposition();
  auto vr = validate(g, dec);
  REQUIRE(vr.ok);
  auto nm = metrics(g, dec);
  // (torso-size, adhesion) per node: d a bc e f g
  CHECK(nm.torso_size[0] == 2);
  CHECK(nm.adhesion[0] == 0);
  CHECK(nm.torso_size[1] == 3);
  CHECK(nm.adhesion[1] == 3);
  CHECK(nm.torso_size[2] == 3);
  CHECK(nm.adhesion[2] == 3);
  CHECK(nm.torso_size[3] == 1);
  CHECK(nm.adhesion[3] == 2);
  CHECK(nm.torso_size[4] == 1);
  CHECK(nm.adhesion[4] == 2);
  CHECK(nm.torso_size[5] == 1);
  CHECK(nm.adhesion[5] == 1);
  CHECK(nm.width == 3);
}

TEST_CASE("validation failures carry the first violated invariant") {
  Graph g(2);
  g.add_edge(0, 1);

  TreeCutDecomposition two_bags;
  two_bags.root = 0;
  two_bags.parent = {0, 0};
  two_bags.bags = {{0, 1}, {1}};
  CHECK_FALSE(validate(g, two_bags).ok);

  TreeCutDecomposition cycle;
  cycle.root = 0;
  cycle.parent = {0, 2, 1};
  cycle.bags = {{0, 1}, {}, {}};
  CHECK_FALSE(validate(g, cycle).ok);

  TreeCutDecomposition missing;
  missing.root = 0;
  missing.parent = {0};
  missing.bags = {{0}};
  CHECK_FALSE(validate(g, missing).ok);
}

TEST_CASE("single node decomposition metrics") {
  Graph g = testing::fig1_graph();
  auto dec = TreeCutDecomposition::single_node(g);
  auto nm = metrics(g, dec);
  CHECK(nm.adhesion[0] == 0);
  CHECK(nm.torso_size[0] == g.n());
  CHECK(nm.width == g.n());
}

TEST_CASE("two node decomposition of a single edge") {
  Graph g(2);
  g.add_edge(0, 1);
  TreeCutDecomposition dec;
  dec.root = 0;
  dec.parent = {0, 0};
  dec.bags = {{0}, {1}};
  auto nm = metrics(g, dec);
  CHECK(nm.adhesion[1] == 1);
  CHECK(nm.torso_size[0] == 1);
  CHECK(nm.torso_size[1] == 1);
  CHECK(nm.width == 1);
}

TEST_CASE("empty-bag leaf torso consolidates to one vertex") {
  Graph g(2);
  g.add_edge(0, 1);
  TreeCutDecomposition dec;
  dec.root = 0;
  dec.parent = {0, 0};
  dec.bags = {{0, 1}, {}};
  MultiGraph h = torso(g, dec, 1);
  CHECK(h.vertex_count() == 1);
  auto nm = metrics(g, dec);
  CHECK(nm.adhesion[1] == 0);
  CHECK(nm.torso_size[1] == 0);
}

TEST_CASE("cut is symmetric across the tree edge") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 40; ++round) {
    Graph g = testing::random_graph(7, 0.4, rng);
    auto dec = testing::random_decomposition(g, rng);
    for (Node t = 0; t < dec.node_count(); ++t) {
      if (t == dec.root) continue;
      auto below = cut_edges(g, dec, t);
      // recompute from the complement side
      auto nm = metrics(g, dec);
      int crossing = 0;
      for (const auto& [u, v] : g.edges())
        if (nm.in_y(t, u) != nm.in_y(t, v)) ++crossing;
      CHECK(static_cast<int>(below.size()) == crossing);
      CHECK(static_cast<int>(below.size()) == nm.adhesion[t]);
    }
  }
}

TEST_CASE("adhesion decomposes into per-border-vertex counts") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    Graph g = testing::random_graph(8, 0.35, rng);
    auto dec = testing::random_decomposition(g, rng);
    auto nm = metrics(g, dec);
    for (Node t = 0; t < dec.node_count(); ++t) {
      if (t == dec.root) continue;
      int sum = 0;
      for (const auto& [v, a] : nm.adh_v[t]) sum += a;
      CHECK(sum == nm.adhesion[t]);
    }
  }
}

TEST_CASE("torso-size is invariant under re-rooting") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 25; ++round) {
    Graph g = testing::random_graph(7, 0.4, rng);
    auto dec = testing::random_decomposition(g, rng);
    auto nm = metrics(g, dec);
    std::uniform_int_distribution<int> nd(0, dec.node_count() - 1);
    auto re = dec.rerooted(nd(rng));
    REQUIRE(validate(g, re).ok);
    auto nm2 = metrics(g, re);
    for (Node t = 0; t < dec.node_count(); ++t)
      CHECK(nm.torso_size[t] == nm2.torso_size[t]);
  }
}
