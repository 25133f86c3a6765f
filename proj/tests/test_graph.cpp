#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tcw/graph.hpp"

using namespace tcw;

TEST_CASE("consolidate a triangle") {
  MultiGraph g;
  for (Vertex v : {0, 1, 2}) g.add_vertex(v);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  MultiGraph h = consolidate(g, {1, 2}, 5);
  CHECK(h.vertex_count() == 2);
  CHECK(h.multiplicity(0, 5) == 2);
  CHECK(h.degree(0) == 2);
}

TEST_CASE("consolidate a set with no outside edges") {
  MultiGraph g;
  for (Vertex v : {0, 1, 2}) g.add_vertex(v);
  g.add_edge(1, 2);
  MultiGraph h = consolidate(g, {1, 2}, 7);
  CHECK(h.has_vertex(7));
  CHECK(h.degree(7) == 0);
}

TEST_CASE("consolidate rejects bad arguments") {
  MultiGraph g;
  g.add_vertex(0);
  CHECK_THROWS_AS(consolidate(g, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(consolidate(g, {4}, 3), std::invalid_argument);
}

TEST_CASE("torso components at the first bag of the example graph") {
  // consolidating {b,c} and {d..g} around a leaves multiplicities 1/1/2
  MultiGraph g = MultiGraph::from_graph(testing::fig1_graph());
  MultiGraph h = consolidate(g, {1, 2}, 7);
  h = consolidate(h, {3, 4, 5, 6}, 8);
  CHECK(h.vertex_count() == 3);
  CHECK(h.multiplicity(0, 7) == 1);
  CHECK(h.multiplicity(0, 8) == 1);
  CHECK(h.multiplicity(7, 8) == 2);
  CHECK(h.degree(0) == 2);  // consolidation preserves outside degrees
}

TEST_CASE("suppress a path middle vertex") {
  MultiGraph g;
  for (Vertex v : {0, 1, 2}) g.add_vertex(v);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  MultiGraph h = suppress(g, 1);
  CHECK(h.multiplicity(0, 2) == 1);
  CHECK(!h.has_vertex(1));
}

TEST_CASE("suppress a pendant") {
  MultiGraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 1);
  MultiGraph h = suppress(g, 1);
  CHECK(h.degree(0) == 0);
}

TEST_CASE("suppress with two parallel edges yields a loop") {
  MultiGraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 1, 2);
  int deg_before = g.degree(0);
  MultiGraph h = suppress(g, 1);
  CHECK(h.multiplicity(0, 0) == 1);
  CHECK(h.degree(0) == deg_before);
}

TEST_CASE("suppress refuses degree three") {
  MultiGraph g;
  for (Vertex v : {0, 1, 2, 3}) g.add_vertex(v);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  CHECK_THROWS_AS(suppress(g, 0), std::invalid_argument);
}

TEST_CASE("three_center trivial and loop cases") {
  MultiGraph single;
  single.add_vertex(0);
  CHECK(three_center(single, {0}).vertex_count() == 1);

  // one protected vertex with two edges to a consolidated neighbor
  MultiGraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 1, 2);
  MultiGraph h = three_center(g, {0});
  CHECK(h.vertex_count() == 1);
  CHECK(h.multiplicity(0, 0) == 1);
}

TEST_CASE("three_center is order independent") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<int> nd(1, 6);
    int n = nd(rng);
    MultiGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    std::uniform_int_distribution<int> vd(0, n - 1);
    std::uniform_int_distribution<int> ed(0, 8);
    int m = ed(rng);
    for (int i = 0; i < m; ++i) g.add_edge(vd(rng), vd(rng));
    std::set<Vertex> protect;
    for (int v = 0; v < n; ++v)
      if (vd(rng) == 0) protect.insert(v);

    MultiGraph fix = three_center(g, protect);
    // random valid suppression order must land on the same graph
    MultiGraph cur = g;
    for (;;) {
      std::vector<Vertex> cands;
      for (Vertex v : cur.vertices())
        if (!protect.count(v) && cur.degree(v) <= 2) cands.push_back(v);
      if (cands.empty()) break;
      std::uniform_int_distribution<size_t> pick(0, cands.size() - 1);
      cur = suppress(cur, cands[pick(rng)]);
    }
    CHECK(cur == fix);
  }
}

TEST_CASE("consolidation preserves degrees outside the merged set") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 60; ++round) {
    MultiGraph g;
    int n = 6;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int i = 0; i < 8; ++i) g.add_edge(vd(rng), vd(rng));
    std::set<Vertex> z_set;
    z_set.insert(vd(rng));
    z_set.insert(vd(rng));
    MultiGraph h = consolidate(g, z_set, n);
    for (Vertex v = 0; v < n; ++v)
      if (!z_set.count(v)) CHECK(h.degree(v) == g.degree(v));
  }
}

TEST_CASE("suppression never increases a remaining degree") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    MultiGraph g;
    int n = 5;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int i = 0; i < 6; ++i) g.add_edge(vd(rng), vd(rng));
    for (Vertex v : g.vertices()) {
      if (g.degree(v) > 2) continue;
      MultiGraph h = suppress(g, v);
      for (Vertex w : h.vertices()) CHECK(h.degree(w) <= g.degree(w));
      break;
    }
  }
}
