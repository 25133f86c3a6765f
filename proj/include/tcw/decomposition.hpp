#ifndef TCW_DECOMPOSITION_HPP
#define TCW_DECOMPOSITION_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcw/graph.hpp"

namespace tcw {

using Node = int;

// Rooted tree whose bags form a near-partition of V(G): pairwise disjoint,
// union V(G), empty bags allowed. The root is its own parent.
struct TreeCutDecomposition {
  Node root = 0;
  std::vector<Node> parent;              // parent[root] == root
  std::vector<std::vector<Vertex>> bags; // sorted vertex lists

  int node_count() const { return static_cast<int>(parent.size()); }
  std::vector<std::vector<Node>> children_lists() const;
  std::vector<int> depths() const;

  static TreeCutDecomposition single_node(const Graph& g);

  // New tree with the same node ids and bags, reoriented toward new_root.
  TreeCutDecomposition rerooted(Node new_root) const;
};

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violated invariant when !ok
};

ValidationReport validate(const Graph& g, const TreeCutDecomposition& dec);

// Per-node derived quantities. Computed once after validation; read-only
// for the solvers.
struct NodeMetrics {
  std::vector<int> adhesion;                 // 0 at the root
  std::vector<int> torso_size;
  std::vector<std::vector<Vertex>> y_set;    // Y_t, sorted
  std::vector<std::vector<Vertex>> boundary; // border vertices of Y_t, sorted
  // adh_v[t][v] = number of neighbors of v outside Y_t, for v in boundary[t]
  std::vector<std::map<Vertex, int>> adh_v;
  int width = 0;

  bool in_y(Node t, Vertex v) const;
};

NodeMetrics metrics(const Graph& g, const TreeCutDecomposition& dec);

// Torso at node t: one consolidated vertex per component of T - t carrying
// vertices; consolidated ids start at g.n() in order of the components.
MultiGraph torso(const Graph& g, const TreeCutDecomposition& dec, Node t);

// Edges of G crossing the tree edge {u, parent-side}: computed from the
// subtree below `child`.
std::vector<Edge> cut_edges(const Graph& g, const TreeCutDecomposition& dec,
                            Node child);

}  // namespace tcw

#endif
