#ifndef TCW_GRAPH_HPP
#define TCW_GRAPH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace tcw {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // stored with first <= second

inline Edge make_edge(Vertex u, Vertex v) {
  return u <= v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph on vertices 0..n-1. No loops, no parallel edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n) {}

  static Graph from_edges(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }

  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool is_connected() const;
  std::vector<std::vector<Vertex>> components() const;

  // Same graph under a vertex relabeling perm (perm[v] = new id of v).
  Graph relabeled(const std::vector<Vertex>& perm) const;

 private:
  int n_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

// Multigraph with loops and edge multiplicities; vertex ids are arbitrary
// non-negative ints (consolidation introduces fresh ids above the source
// range). A loop contributes 2 to the degree of its vertex.
class MultiGraph {
 public:
  MultiGraph() = default;

  static MultiGraph from_graph(const Graph& g);

  void add_vertex(Vertex v) { vertices_.insert(v); }
  void add_edge(Vertex u, Vertex v, int multiplicity = 1);

  bool has_vertex(Vertex v) const { return vertices_.count(v) > 0; }
  const std::set<Vertex>& vertices() const { return vertices_; }
  const std::map<Edge, int>& edge_multiplicities() const { return mult_; }

  int multiplicity(Vertex u, Vertex v) const;
  int degree(Vertex v) const;
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const;  // with multiplicities, loops counted once

  bool operator==(const MultiGraph& other) const {
    return vertices_ == other.vertices_ && mult_ == other.mult_;
  }

 private:
  std::set<Vertex> vertices_;
  std::map<Edge, int> mult_;  // normalized key, value >= 1
};

struct CapacitatedGraph {
  Graph graph;
  std::vector<std::int64_t> capacity;  // one entry per vertex

  CapacitatedGraph() = default;
  CapacitatedGraph(Graph g, std::vector<std::int64_t> caps);
};

// Replaces Z by the fresh vertex z; edges between Z and the outside become
// z-edges with multiplicities preserved, edges internal to Z are discarded.
MultiGraph consolidate(const MultiGraph& g, const std::set<Vertex>& z_set,
                       Vertex z);

// Deletes a vertex of degree at most 2; when it has two edge endpoints to
// neighbors x,y (possibly x == y) a new x-y edge is added.
MultiGraph suppress(const MultiGraph& g, Vertex v);

// Fixpoint of exhaustively suppressing vertices outside `protect` of degree
// at most 2. Lowest-id suppressible vertex is processed first.
MultiGraph three_center(const MultiGraph& g, const std::set<Vertex>& protect);

}  // namespace tcw

#endif
