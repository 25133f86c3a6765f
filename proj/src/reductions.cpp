#include "tcw/reductions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace tcw {

bool MccInstance::has_clique() const {
  std::vector<int> pick(k, 0);
  std::function<bool(int)> rec = [&](int part) {
    if (part == k) return true;
    for (int a = 0; a < n; ++a) {
      Vertex v = part * n + a;
      bool ok = true;
      for (int q = 0; q < part && ok; ++q)
        if (!graph.has_edge(pick[q], v)) ok = false;
      if (!ok) continue;
      pick[part] = v;
      if (rec(part + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

ListColoringReduction mcc_to_list_coloring(const MccInstance& m) {
  ListColoringReduction out;
  const int k = m.k, n = m.n;
  // colors are the MCC vertex ids themselves
  std::vector<std::pair<Vertex, Vertex>> nonedges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Vertex va = i * n + a, vb = j * n + b;
          if (!m.graph.has_edge(va, vb)) nonedges.emplace_back(va, vb);
        }
  Graph g(k + static_cast<int>(nonedges.size()));
  out.instance.lists.resize(g.n());
  for (int i = 0; i < k; ++i) {
    for (int a = 0; a < n; ++a) out.instance.lists[i].push_back(i * n + a);
  }
  for (size_t q = 0; q < nonedges.size(); ++q) {
    Vertex y = k + static_cast<int>(q);
    Vertex a = nonedges[q].first, b = nonedges[q].second;
    g.add_edge(m.part_of(a), y);
    g.add_edge(m.part_of(b), y);
    out.instance.lists[y] = {a, b};
  }
  out.instance.graph = g;

  // star decomposition: the constraint vertices sit in singleton leaves
  out.dec.root = 0;
  out.dec.parent.assign(1 + nonedges.size(), 0);
  out.dec.bags.resize(1 + nonedges.size());
  for (int i = 0; i < k; ++i) out.dec.bags[0].push_back(i);
  for (size_t q = 0; q < nonedges.size(); ++q)
    out.dec.bags[1 + q].push_back(k + static_cast<int>(q));
  return out;
}

PrecoloringReduction list_to_precoloring(const ListColoringInstance& lc,
                                         const TreeCutDecomposition& dec) {
  PrecoloringReduction out;
  std::vector<int> palette;
  for (const auto& l : lc.lists)
    for (int c : l) palette.push_back(c);
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());

  // one precolored pendant per forbidden color
  std::vector<std::pair<Vertex, int>> pendants;  // (host, forbidden color)
  for (Vertex v = 0; v < lc.graph.n(); ++v) {
    std::vector<int> sorted = lc.lists[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted == palette) continue;
    for (int c : palette)
      if (!std::binary_search(sorted.begin(), sorted.end(), c))
        pendants.emplace_back(v, c);
  }
  Graph g(lc.graph.n() + static_cast<int>(pendants.size()));
  for (const auto& [u, v] : lc.graph.edges()) g.add_edge(u, v);
  out.instance.lists.resize(g.n());
  for (Vertex v = 0; v < lc.graph.n(); ++v) out.instance.lists[v] = palette;
  for (size_t q = 0; q < pendants.size(); ++q) {
    Vertex p = lc.graph.n() + static_cast<int>(q);
    g.add_edge(pendants[q].first, p);
    out.instance.lists[p] = {pendants[q].second};
  }
  out.instance.graph = g;
  out.instance.palette = palette;

  // extend the decomposition with singleton pendant leaves
  out.dec = dec;
  std::vector<Node> owner(lc.graph.n(), -1);
  for (Node t = 0; t < dec.node_count(); ++t)
    for (Vertex v : dec.bags[t]) owner[v] = t;
  for (size_t q = 0; q < pendants.size(); ++q) {
    out.dec.parent.push_back(owner[pendants[q].first]);
    out.dec.bags.push_back({lc.graph.n() + static_cast<int>(q)});
  }
  return out;
}

CspReduction mcc_to_boolean_csp(const MccInstance& m) {
  CspReduction out;
  const int k = m.k, n = m.n;
  // Boolean variable for "block (i,j) encodes value a": id (i*k + j)*n + a
  auto var_id = [&](int i, int j, int a) { return (i * k + j) * n + a; };
  CspInstance& csp = out.instance;
  csp.num_vars = k * k * n;
  csp.domain = {0, 1};

  // equality constraints: all k blocks of row i carry the same unary value
  for (int i = 0; i < k; ++i) {
    CspConstraint c;
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < n; ++a) c.scope.push_back(var_id(i, j, a));
    for (int a = 0; a < n; ++a) {
      std::vector<int> tuple(k * n, 0);
      for (int j = 0; j < k; ++j) tuple[j * n + a] = 1;
      c.tuples.push_back(tuple);
    }
    csp.constraints.push_back(c);
  }
  // edge constraints between blocks (i,j) and (j,i)
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      CspConstraint c;
      for (int a = 0; a < n; ++a) c.scope.push_back(var_id(i, j, a));
      for (int b = 0; b < n; ++b) c.scope.push_back(var_id(j, i, b));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!m.graph.has_edge(i * n + a, j * n + b)) continue;
          std::vector<int> tuple(2 * n, 0);
          tuple[a] = 1;
          tuple[n + b] = 1;
          c.tuples.push_back(tuple);
        }
      csp.constraints.push_back(c);
    }

  // incidence graph: constraints first, then variables
  const int nc = static_cast<int>(csp.constraints.size());
  Graph inc(nc + csp.num_vars);
  for (int ci = 0; ci < nc; ++ci)
    for (int x : csp.constraints[ci].scope) inc.add_edge(ci, nc + x);
  out.incidence = inc;

  // star decomposition of the incidence graph
  out.dec.root = 0;
  out.dec.parent.assign(1 + csp.num_vars, 0);
  out.dec.bags.resize(1 + csp.num_vars);
  for (int ci = 0; ci < nc; ++ci) out.dec.bags[0].push_back(ci);
  for (int x = 0; x < csp.num_vars; ++x)
    out.dec.bags[1 + x].push_back(nc + x);
  return out;
}

Graph gen_star_of_stars(int n) {
  if (n < 1) throw std::invalid_argument("gen_star_of_stars: n >= 1 required");
  // center 0, hubs 1..n, subdivision vertices n+1 .. n+n*n
  Graph g(1 + n + n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < n; ++j) {
      Vertex s = n + (i - 1) * n + j + 1;
      g.add_edge(0, s);
      g.add_edge(s, i);
    }
  return g;
}

Graph gen_ternary_tree(int depth) {
  if (depth < 0) throw std::invalid_argument("gen_ternary_tree: depth >= 0");
  int total = 1;
  for (int d = 1, layer = 3; d <= depth; ++d, layer *= 3) total += layer;
  Graph g(total);
  for (Vertex v = 1; v < total; ++v) g.add_edge(v, (v - 1) / 3);
  return g;
}

TreeCutDecomposition star_of_stars_decomposition(int n) {
  TreeCutDecomposition dec;
  if (n == 1) {
    // a path: chain of singletons, subdivision vertex between the ends
    dec.root = 0;
    dec.parent = {0, 0, 1};
    dec.bags = {{0}, {2}, {1}};
    return dec;
  }
  if (n <= 2) {
    // root {center}; one node per hub; subdivision vertices in leaves below
    // their hub
    dec.root = 0;
    dec.parent.assign(1 + n + n * n, 0);
    dec.bags.resize(1 + n + n * n);
    dec.bags[0].push_back(0);
    for (int i = 1; i <= n; ++i) {
      dec.parent[i] = 0;
      dec.bags[i].push_back(i);
      for (int j = 0; j < n; ++j) {
        Node leaf = n + (i - 1) * n + j + 1;
        dec.parent[leaf] = i;
        dec.bags[leaf].push_back(n + (i - 1) * n + j + 1);
      }
    }
    return dec;
  }
  // wide bag {center, hubs} with one leaf per subdivision vertex
  dec.root = 0;
  dec.parent.assign(1 + n * n, 0);
  dec.bags.resize(1 + n * n);
  dec.bags[0].push_back(0);
  for (int i = 1; i <= n; ++i) dec.bags[0].push_back(i);
  for (int q = 0; q < n * n; ++q) dec.bags[1 + q].push_back(n + 1 + q);
  return dec;
}

namespace {

bool color_search(const Graph& g, const std::vector<std::vector<int>>& lists,
                  std::int64_t node_guard) {
  const int n = g.n();
  // precolored vertices first, then wide lists before narrow ones; forward
  // checking below prunes any vertex whose list empties out
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    auto key = [&](Vertex v) {
      return std::make_tuple(lists[v].size() != 1, -(long long)lists[v].size(),
                             v);
    };
    return key(a) < key(b);
  });
  std::vector<int> color(n, -1);
  std::int64_t nodes = 0;

  auto feasible = [&](Vertex v, int c) {
    for (Vertex w : g.neighbors(v))
      if (color[w] == c) return false;
    return true;
  };

  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    Vertex v = order[i];
    if (++nodes > node_guard)
      throw std::invalid_argument("coloring search guard exceeded");
    for (int c : lists[v]) {
      if (!feasible(v, c)) continue;
      color[v] = c;
      bool dead = false;
      for (int j = i + 1; j < n && !dead; ++j) {
        Vertex u = order[j];
        bool any = false;
        for (int cu : lists[u])
          if (feasible(u, cu)) {
            any = true;
            break;
          }
        dead = !any;
      }
      if (!dead && rec(i + 1)) return true;
      color[v] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

bool brute_list_coloring(const ListColoringInstance& lc,
                         std::int64_t node_guard) {
  for (const auto& l : lc.lists)
    if (l.empty()) return false;
  return color_search(lc.graph, lc.lists, node_guard);
}

bool brute_precoloring(const PrecoloringInstance& pc, std::int64_t node_guard) {
  return color_search(pc.graph, pc.lists, node_guard);
}

bool brute_csp(const CspInstance& csp, std::int64_t node_guard) {
  const int n = csp.num_vars;
  // check a constraint as soon as its scope is fully assigned
  std::vector<std::vector<int>> due(n + 1);
  for (size_t ci = 0; ci < csp.constraints.size(); ++ci) {
    int last = -1;
    for (int x : csp.constraints[ci].scope) last = std::max(last, x);
    if (csp.constraints[ci].scope.empty())
      due[0].push_back(static_cast<int>(ci));
    else
      due[last + 1].push_back(static_cast<int>(ci));
  }
  std::vector<int> assign(n, 0);
  std::int64_t nodes = 0;
  std::function<bool(int)> rec = [&](int v) -> bool {
    for (int ci : due[v]) {
      const auto& c = csp.constraints[ci];
      bool sat = false;
      for (const auto& tuple : c.tuples) {
        bool match = true;
        for (size_t i = 0; i < c.scope.size() && match; ++i)
          if (assign[c.scope[i]] != tuple[i]) match = false;
        if (match) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    if (v == n) return true;
    if (++nodes > node_guard)
      throw std::invalid_argument("csp search guard exceeded");
    for (int d : csp.domain) {
      assign[v] = d;
      if (rec(v + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace tcw
