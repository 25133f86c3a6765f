#include <functional>
#include <random>

#include "doctest.h"
#include "tcw/cvc.hpp"
#include "tcw/flow.hpp"

using namespace tcw;

namespace {

// reference: try all edge-to-endpoint assignments directly
bool cover_by_enumeration(const CapacitatedGraph& cg,
                          const std::vector<Vertex>& cover) {
  std::vector<char> in_c(cg.graph.n(), 0);
  for (Vertex v : cover) in_c[v] = 1;
  std::vector<std::int64_t> load(cg.graph.n(), 0);
  const auto& edges = cg.graph.edges();
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == edges.size()) return true;
    for (Vertex v : {edges[i].first, edges[i].second}) {
      if (!in_c[v] || load[v] + 1 > cg.capacity[v]) continue;
      ++load[v];
      if (rec(i + 1)) return true;
      --load[v];
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("witness feasibility agrees with direct assignment enumeration") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 300; ++round) {
    std::uniform_int_distribution<int> nd(1, 5), capd(0, 3);
    int n = nd(rng);
    Graph g(n);
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int i = 0; i < 6; ++i) {
      int u = vd(rng), v = vd(rng);
      if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
    }
    std::vector<std::int64_t> caps(n);
    for (auto& c : caps) c = capd(rng);
    CapacitatedGraph cg(g, caps);
    std::vector<Vertex> cover;
    for (int v = 0; v < n; ++v)
      if (rng() & 1) cover.push_back(v);
    CHECK(cvc_witness_feasible(cg, cover) == cover_by_enumeration(cg, cover));
  }
}

TEST_CASE("edgeless graphs accept the empty cover") {
  CapacitatedGraph cg(Graph(3), {0, 0, 0});
  CHECK(cvc_witness_feasible(cg, {}));
}

TEST_CASE("star cover feasibility tracks the center capacity") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  CHECK(cvc_witness_feasible(CapacitatedGraph(g, {3, 0, 0, 0}), {0}));
  CHECK_FALSE(cvc_witness_feasible(CapacitatedGraph(g, {2, 0, 0, 0}), {0}));
}

TEST_CASE("an uncoverable edge fails") {
  Graph g(2);
  g.add_edge(0, 1);
  CHECK_FALSE(cvc_witness_feasible(CapacitatedGraph(g, {0, 1}), {0}));
}
