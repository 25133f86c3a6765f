#include <algorithm>
#include <stdexcept>
#include <cstdint>
#ifndef TCW_TEST_HELPERS_HPP
#define TCW_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <vector>

#include "tcw/decomposition.hpp"
#include "tcw/graph.hpp"

namespace tcw::testing {

inline Graph fig1_graph() {
  // a=0 b=1 c=2 d=3 e=4 f=5 g=6
  return Graph::from_edges(7, {{0, 1},
                               {0, 3},
                               {1, 3},
                               {1, 2},
                               {2, 3},
                               {3, 4},
                               {4, 5},
                               {3, 5},
                               {3, 6}});
}

inline TreeCutDecomposition fig1_decomposition() {
  // node 0 {d} root; 1 {a}; 2 {b,c}; 3 {e}; 4 {f}; 5 {g}
  TreeCutDecomposition dec;
  dec.root = 0;
  dec.parent = {0, 0, 1, 0, 0, 0};
  dec.bags = {{3}, {0}, {1, 2}, {4}, {5}, {6}};
  return dec;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  Graph g = random_graph(n, p, rng);
  // stitch components together along random representatives
  for (;;) {
    auto comps = g.components();
    if (comps.size() <= 1) return g;
    std::uniform_int_distribution<size_t> c1(0, comps[0].size() - 1);
    std::uniform_int_distribution<size_t> c2(0, comps[1].size() - 1);
    g.add_edge(comps[0][c1(rng)], comps[1][c2(rng)]);
  }
}

// random tree + random bag assignment: always a valid decomposition
inline TreeCutDecomposition random_decomposition(const Graph& g,
                                                 std::mt19937_64& rng,
                                                 int max_nodes = 0) {
  if (max_nodes <= 0) max_nodes = std::max(1, g.n());
  std::uniform_int_distribution<int> nodes_dist(1, max_nodes);
  int m = nodes_dist(rng);
  TreeCutDecomposition dec;
  dec.root = 0;
  dec.parent.assign(m, 0);
  dec.bags.resize(m);
  for (Node t = 1; t < m; ++t) {
    std::uniform_int_distribution<int> pd(0, t - 1);
    dec.parent[t] = pd(rng);
  }
  std::uniform_int_distribution<int> bd(0, m - 1);
  for (Vertex v = 0; v < g.n(); ++v) dec.bags[bd(rng)].push_back(v);
  for (auto& bag : dec.bags) std::sort(bag.begin(), bag.end());
  return dec;
}

inline std::vector<std::int64_t> random_caps(int n, int max_cap,
                                             std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, max_cap);
  std::vector<std::int64_t> caps(n);
  for (auto& c : caps) c = d(rng);
  return caps;
}

// all connected graphs with up to max_n vertices, one per isomorphism class
inline std::vector<Graph> connected_corpus(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const int np = static_cast<int>(pairs.size());
    std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
    for (int i = 0; i < np; ++i)
      pair_index[pairs[i].first][pairs[i].second] = i;
    std::vector<int> perm(n);
    for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
      Graph g(n);
      for (int i = 0; i < np; ++i)
        if (mask >> i & 1) g.add_edge(pairs[i].first, pairs[i].second);
      if (!g.is_connected()) continue;
      // keep only the lexicographically smallest relabeling of each class
      for (int i = 0; i < n; ++i) perm[i] = i;
      bool minimal = true;
      do {
        std::uint32_t pm = 0;
        for (int i = 0; i < np; ++i) {
          if (!(mask >> i & 1)) continue;
          int u = perm[pairs[i].first], v = perm[pairs[i].second];
          if (u > v) std::swap(u, v);
          pm |= 1u << pair_index[u][v];
        }
        if (pm < mask) {
          minimal = false;
          break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (minimal) out.push_back(g);
    }
  }
  return out;
}

}  // namespace tcw::testing

#endif
