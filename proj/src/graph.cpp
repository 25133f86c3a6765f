#include "tcw/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcw {

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("loops not allowed in Graph");
  if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  edges_.push_back(make_edge(u, v));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Vertex w = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::find(a.begin(), a.end(), w) != a.end();
}

std::vector<std::vector<Vertex>> Graph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n_; ++s) {
    if (comp[s] != -1) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (Vertex w : adj_[v])
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
  }
  return out;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  return components().size() == 1;
}

Graph Graph::relabeled(const std::vector<Vertex>& perm) const {
  Graph g(n_);
  for (const auto& [u, v] : edges_) g.add_edge(perm[u], perm[v]);
  return g;
}

MultiGraph MultiGraph::from_graph(const Graph& g) {
  MultiGraph m;
  for (Vertex v = 0; v < g.n(); ++v) m.add_vertex(v);
  for (const auto& [u, v] : g.edges()) m.add_edge(u, v);
  return m;
}

void MultiGraph::add_edge(Vertex u, Vertex v, int multiplicity) {
  if (multiplicity < 0) throw std::invalid_argument("negative multiplicity");
  if (multiplicity == 0) return;
  if (!has_vertex(u) || !has_vertex(v))
    throw std::invalid_argument("edge endpoint not a vertex");
  mult_[make_edge(u, v)] += multiplicity;
}

int MultiGraph::multiplicity(Vertex u, Vertex v) const {
  auto it = mult_.find(make_edge(u, v));
  return it == mult_.end() ? 0 : it->second;
}

int MultiGraph::degree(Vertex v) const {
  int d = 0;
  for (const auto& [e, m] : mult_) {
    if (e.first == v) d += m;
    if (e.second == v) d += m;  // loop (v,v) ends up counted twice
  }
  return d;
}

int MultiGraph::edge_count() const {
  int c = 0;
  for (const auto& [e, m] : mult_) c += m;
  return c;
}

CapacitatedGraph::CapacitatedGraph(Graph g, std::vector<std::int64_t> caps)
    : graph(std::move(g)), capacity(std::move(caps)) {
  if (static_cast<int>(capacity.size()) != graph.n())
    throw std::invalid_argument("capacity must be defined for every vertex");
  for (auto c : capacity)
    if (c < 0) throw std::invalid_argument("capacities must be nonnegative");
}

MultiGraph consolidate(const MultiGraph& g, const std::set<Vertex>& z_set,
                       Vertex z) {
  if (z_set.empty()) throw std::invalid_argument("consolidate: empty set");
  for (Vertex v : z_set)
    if (!g.has_vertex(v))
      throw std::invalid_argument("consolidate: unknown vertex in set");
  if (g.has_vertex(z) && !z_set.count(z))
    throw std::invalid_argument("consolidate: z already present");

  MultiGraph out;
  for (Vertex v : g.vertices())
    if (!z_set.count(v)) out.add_vertex(v);
  out.add_vertex(z);
  for (const auto& [e, m] : g.edge_multiplicities()) {
    bool in1 = z_set.count(e.first) > 0;
    bool in2 = z_set.count(e.second) > 0;
    if (in1 && in2) continue;  // internal to Z, discarded
    if (in1)
      out.add_edge(z, e.second, m);
    else if (in2)
      out.add_edge(e.first, z, m);
    else
      out.add_edge(e.first, e.second, m);
  }
  return out;
}

MultiGraph suppress(const MultiGraph& g, Vertex v) {
  if (!g.has_vertex(v)) throw std::invalid_argument("suppress: unknown vertex");
  if (g.degree(v) > 2)
    throw std::invalid_argument("suppress: degree exceeds 2");

  // Collect the non-loop edge endpoints at v. A loop at v means v is simply
  // deleted (its degree-2 budget is spent on itself).
  std::vector<Vertex> ends;
  bool has_loop = false;
  for (const auto& [e, m] : g.edge_multiplicities()) {
    if (e.first == v && e.second == v) {
      has_loop = true;
    } else if (e.first == v || e.second == v) {
      Vertex other = e.first == v ? e.second : e.first;
      for (int i = 0; i < m; ++i) ends.push_back(other);
    }
  }

  MultiGraph out;
  for (Vertex w : g.vertices())
    if (w != v) out.add_vertex(w);
  for (const auto& [e, m] : g.edge_multiplicities())
    if (e.first != v && e.second != v) out.add_edge(e.first, e.second, m);
  if (!has_loop && ends.size() == 2) out.add_edge(ends[0], ends[1]);
  return out;
}

MultiGraph three_center(const MultiGraph& g, const std::set<Vertex>& protect) {
  for (Vertex v : protect)
    if (!g.has_vertex(v))
      throw std::invalid_argument("three_center: unknown protected vertex");
  MultiGraph cur = g;
  for (;;) {
    Vertex pick = -1;
    for (Vertex v : cur.vertices()) {
      if (protect.count(v)) continue;
      if (cur.degree(v) <= 2) {
        pick = v;
        break;  // vertices() iterates in increasing id order
      }
    }
    if (pick == -1) return cur;
    cur = suppress(cur, pick);
  }
}

}  // namespace tcw
