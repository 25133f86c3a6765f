#include "tcw/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcw {

std::vector<std::vector<Node>> TreeCutDecomposition::children_lists() const {
  std::vector<std::vector<Node>> ch(node_count());
  for (Node t = 0; t < node_count(); ++t)
    if (t != root) ch[parent[t]].push_back(t);
  return ch;
}

std::vector<int> TreeCutDecomposition::depths() const {
  std::vector<int> d(node_count(), -1);
  d[root] = 0;
  // parent links form a tree, so repeated sweeps settle in <= n rounds
  bool changed = true;
  while (changed) {
    changed = false;
    for (Node t = 0; t < node_count(); ++t) {
      if (t == root || d[t] != -1) continue;
      if (d[parent[t]] != -1) {
        d[t] = d[parent[t]] + 1;
        changed = true;
      }
    }
  }
  return d;
}

TreeCutDecomposition TreeCutDecomposition::single_node(const Graph& g) {
  TreeCutDecomposition dec;
  dec.root = 0;
  dec.parent = {0};
  dec.bags.resize(1);
  for (Vertex v = 0; v < g.n(); ++v) dec.bags[0].push_back(v);
  return dec;
}

TreeCutDecomposition TreeCutDecomposition::rerooted(Node new_root) const {
  TreeCutDecomposition out = *this;
  out.root = new_root;
  // walk the old root path from new_root, flipping parent pointers
  std::vector<Node> path;
  for (Node t = new_root;; t = parent[t]) {
    path.push_back(t);
    if (t == root) break;
  }
  for (size_t i = 0; i + 1 < path.size(); ++i)
    out.parent[path[i + 1]] = path[i];
  out.parent[new_root] = new_root;
  return out;
}

ValidationReport validate(const Graph& g, const TreeCutDecomposition& dec) {
  const int m = dec.node_count();
  if (m == 0) return {false, "decomposition has no nodes"};
  if (dec.root < 0 || dec.root >= m) return {false, "root id out of range"};
  if (static_cast<int>(dec.bags.size()) != m)
    return {false, "bag list size differs from node count"};
  if (dec.parent[dec.root] != dec.root)
    return {false, "root must be its own parent"};
  for (Node t = 0; t < m; ++t)
    if (dec.parent[t] < 0 || dec.parent[t] >= m)
      return {false, "parent id out of range"};

  // tree check: every node must reach the root without revisiting
  for (Node t = 0; t < m; ++t) {
    std::vector<char> seen(m, 0);
    Node cur = t;
    while (cur != dec.root) {
      if (seen[cur]) return {false, "parent links contain a cycle"};
      seen[cur] = 1;
      cur = dec.parent[cur];
    }
  }

  std::vector<int> owner(g.n(), -1);
  for (Node t = 0; t < m; ++t) {
    for (Vertex v : dec.bags[t]) {
      if (v < 0 || v >= g.n())
        return {false, "bag contains unknown vertex"};
      if (owner[v] != -1)
        return {false, "near-partition violated: vertex in two bags"};
      owner[v] = t;
    }
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (owner[v] == -1)
      return {false, "near-partition violated: vertex in no bag"};
  return {};
}

namespace {

// subtree membership masks: in_subtree[t] = set of vertices in Y_t
std::vector<std::vector<char>> y_membership(const Graph& g,
                                            const TreeCutDecomposition& dec) {
  const int m = dec.node_count();
  std::vector<std::vector<char>> in_y(m, std::vector<char>(g.n(), 0));
  // order nodes by decreasing depth so children are done before parents
  auto depth = dec.depths();
  std::vector<Node> order(m);
  for (Node t = 0; t < m; ++t) order[t] = t;
  std::sort(order.begin(), order.end(),
            [&](Node a, Node b) { return depth[a] > depth[b]; });
  auto ch = dec.children_lists();
  for (Node t : order) {
    for (Vertex v : dec.bags[t]) in_y[t][v] = 1;
    for (Node c : ch[t])
      for (Vertex v = 0; v < g.n(); ++v)
        if (in_y[c][v]) in_y[t][v] = 1;
  }
  return in_y;
}

}  // namespace

bool NodeMetrics::in_y(Node t, Vertex v) const {
  const auto& ys = y_set[t];
  return std::binary_search(ys.begin(), ys.end(), v);
}

std::vector<Edge> cut_edges(const Graph& g, const TreeCutDecomposition& dec,
                            Node child) {
  auto in_y = y_membership(g, dec);
  std::vector<Edge> out;
  for (const auto& [u, v] : g.edges())
    if (in_y[child][u] != in_y[child][v]) out.push_back(make_edge(u, v));
  return out;
}

MultiGraph torso(const Graph& g, const TreeCutDecomposition& dec, Node t) {
  auto rep = validate(g, dec);
  if (!rep.ok) throw std::invalid_argument("torso: " + rep.message);

  const int m = dec.node_count();
  // component id of every tree node in T - t, grown from t's neighbors
  std::vector<int> comp(m, -1);
  comp[t] = -2;
  int ncomp = 0;
  auto ch = dec.children_lists();
  std::vector<Node> nbrs = ch[t];
  if (t != dec.root) nbrs.push_back(dec.parent[t]);
  for (Node s : nbrs) {
    if (comp[s] != -1) continue;
    int id = ncomp++;
    // flood within T - t
    std::vector<Node> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Node x = stack.back();
      stack.pop_back();
      std::vector<Node> adj = ch[x];
      if (x != dec.root) adj.push_back(dec.parent[x]);
      for (Node y : adj) {
        if (y == t || comp[y] != -1) continue;
        comp[y] = id;
        stack.push_back(y);
      }
    }
  }

  // vertex -> consolidated id (or itself for bag vertices)
  std::vector<Vertex> where(g.n(), -1);
  for (Vertex v : dec.bags[t]) where[v] = v;
  std::vector<bool> comp_nonempty(ncomp, false);
  for (Node s = 0; s < m; ++s) {
    if (comp[s] < 0) continue;
    for (Vertex v : dec.bags[s]) {
      where[v] = g.n() + comp[s];
      comp_nonempty[comp[s]] = true;
    }
  }

  MultiGraph out;
  for (Vertex v : dec.bags[t]) out.add_vertex(v);
  for (int c = 0; c < ncomp; ++c)
    if (comp_nonempty[c]) out.add_vertex(g.n() + c);
  for (const auto& [u, v] : g.edges()) {
    Vertex a = where[u], b = where[v];
    if (a == b && a >= g.n()) continue;  // internal to a consolidated set
    out.add_edge(a, b);
  }
  return out;
}

NodeMetrics metrics(const Graph& g, const TreeCutDecomposition& dec) {
  auto rep = validate(g, dec);
  if (!rep.ok) throw std::invalid_argument("metrics: " + rep.message);

  const int m = dec.node_count();
  NodeMetrics nm;
  nm.adhesion.assign(m, 0);
  nm.torso_size.assign(m, 0);
  nm.y_set.resize(m);
  nm.boundary.resize(m);
  nm.adh_v.resize(m);

  auto in_y = y_membership(g, dec);
  for (Node t = 0; t < m; ++t) {
    for (Vertex v = 0; v < g.n(); ++v)
      if (in_y[t][v]) nm.y_set[t].push_back(v);
    for (Vertex v : nm.y_set[t]) {
      int outside = 0;
      for (Vertex w : g.neighbors(v))
        if (!in_y[t][w]) ++outside;
      if (outside > 0) {
        nm.boundary[t].push_back(v);
        nm.adh_v[t][v] = outside;
      }
    }
    if (t != dec.root) {
      int cut = 0;
      for (const auto& [u, v] : g.edges())
        if (in_y[t][u] != in_y[t][v]) ++cut;
      nm.adhesion[t] = cut;
    }
    std::set<Vertex> protect(dec.bags[t].begin(), dec.bags[t].end());
    nm.torso_size[t] = three_center(torso(g, dec, t), protect).vertex_count();
    nm.width = std::max({nm.width, nm.adhesion[t], nm.torso_size[t]});
  }
  return nm;
}

}  // namespace tcw
