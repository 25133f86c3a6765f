#include "tcw/nice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tcw {

namespace {

struct SubtreeInfo {
  std::vector<std::vector<char>> in_y;  // [node][vertex]
  std::vector<int> adh;
  std::vector<int> depth;
  std::vector<std::vector<Node>> children;
};

SubtreeInfo subtree_info(const Graph& g, const TreeCutDecomposition& dec) {
  SubtreeInfo s;
  const int m = dec.node_count();
  s.in_y.assign(m, std::vector<char>(g.n(), 0));
  s.depth = dec.depths();
  s.children = dec.children_lists();
  std::vector<Node> order(m);
  for (Node t = 0; t < m; ++t) order[t] = t;
  std::sort(order.begin(), order.end(),
            [&](Node a, Node b) { return s.depth[a] > s.depth[b]; });
  for (Node t : order) {
    for (Vertex v : dec.bags[t]) s.in_y[t][v] = 1;
    for (Node c : s.children[t])
      for (Vertex v = 0; v < g.n(); ++v)
        if (s.in_y[c][v]) s.in_y[t][v] = 1;
  }
  s.adh.assign(m, 0);
  for (Node t = 0; t < m; ++t) {
    if (t == dec.root) continue;
    for (const auto& [u, v] : g.edges())
      if (s.in_y[t][u] != s.in_y[t][v]) ++s.adh[t];
  }
  return s;
}

// neighbors of Y_t in G
std::vector<char> y_neighborhood(const Graph& g, const SubtreeInfo& s,
                                 Node t) {
  std::vector<char> nb(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!s.in_y[t][v]) continue;
    for (Vertex w : g.neighbors(v))
      if (!s.in_y[t][w]) nb[w] = 1;
  }
  return nb;
}

bool node_is_bad(const Graph& g, const TreeCutDecomposition& dec,
                 const SubtreeInfo& s, Node t) {
  if (t == dec.root || s.adh[t] > 2) return false;
  auto nb = y_neighborhood(g, s, t);
  for (Node b : s.children[dec.parent[t]]) {
    if (b == t) continue;
    for (Vertex v = 0; v < g.n(); ++v)
      if (s.in_y[b][v] && nb[v]) return true;
  }
  return false;
}

}  // namespace

bool is_nice(const Graph& g, const TreeCutDecomposition& dec) {
  auto rep = validate(g, dec);
  if (!rep.ok) throw std::invalid_argument("is_nice: " + rep.message);
  auto s = subtree_info(g, dec);
  for (Node t = 0; t < dec.node_count(); ++t)
    if (node_is_bad(g, dec, s, t)) return false;
  return true;
}

std::vector<Node> bad_nodes(const Graph& g, const TreeCutDecomposition& dec) {
  auto s = subtree_info(g, dec);
  std::vector<Node> out;
  for (Node t = 0; t < dec.node_count(); ++t)
    if (node_is_bad(g, dec, s, t)) out.push_back(t);
  return out;
}

std::vector<Node> bad_neighbors(const Graph& g,
                                const TreeCutDecomposition& dec, Node t) {
  auto s = subtree_info(g, dec);
  auto nb = y_neighborhood(g, s, t);
  std::vector<Node> out;
  for (Node sib : s.children[dec.parent[t]]) {
    if (sib == t) continue;
    // sib and every descendant of sib is a candidate
    std::vector<Node> stack{sib};
    while (!stack.empty()) {
      Node b = stack.back();
      stack.pop_back();
      for (Vertex v : dec.bags[b])
        if (nb[v]) {
          out.push_back(b);
          break;
        }
      for (Node c : s.children[b]) stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreeCutDecomposition reroute(const Graph& g, const TreeCutDecomposition& dec,
                             Node t) {
  auto s = subtree_info(g, dec);
  if (!node_is_bad(g, dec, s, t))
    throw std::invalid_argument("reroute: node is not bad");
  auto cands = bad_neighbors(g, dec, t);
  Node best = -1;
  for (Node b : cands)
    if (best == -1 || s.depth[b] > s.depth[best]) best = b;
  // bad_neighbors is id-sorted, so the first deepest candidate wins ties
  TreeCutDecomposition out = dec;
  out.parent[t] = best;
  return out;
}

TreeCutDecomposition top_down_reroute(const Graph& g,
                                      const TreeCutDecomposition& dec,
                                      RerouteAudit* audit) {
  auto rep = validate(g, dec);
  if (!rep.ok)
    throw std::invalid_argument("top_down_reroute: " + rep.message);
  TreeCutDecomposition cur = dec;
  const int limit = 2 * dec.node_count() + 1;
  int steps = 0;
  for (;;) {
    auto s = subtree_info(g, cur);
    Node pick = -1;
    for (Node t = 0; t < cur.node_count(); ++t) {
      if (!node_is_bad(g, cur, s, t)) continue;
      if (pick == -1 || s.depth[t] < s.depth[pick]) pick = t;
      if (audit) {
        for (Node b : bad_neighbors(g, cur, t))
          for (const auto& [et, eb] : audit->eliminated)
            if (et == t && eb == b) audit->reappearance = true;
      }
    }
    if (pick == -1) break;
    auto cands = bad_neighbors(g, cur, pick);
    Node parent_choice = -1;
    for (Node b : cands)
      if (parent_choice == -1 || s.depth[b] > s.depth[parent_choice])
        parent_choice = b;
    cur.parent[pick] = parent_choice;
    ++steps;
    if (audit) audit->eliminated.emplace_back(pick, parent_choice);
    if (steps > limit)
      throw std::logic_error("top_down_reroute: step bound exceeded");
  }
  if (audit) audit->steps = steps;
  return cur;
}

TreeCutDecomposition contract_empty(const TreeCutDecomposition& dec) {
  const int m = dec.node_count();
  std::vector<char> alive(m, 1);
  std::vector<Node> parent = dec.parent;
  Node root = dec.root;

  auto child_count = [&](Node t) {
    int c = 0;
    for (Node u = 0; u < m; ++u)
      if (alive[u] && u != root && parent[u] == t) ++c;
    return c;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (Node t = 0; t < m; ++t) {
      if (!alive[t] || !dec.bags[t].empty()) continue;
      int nc = child_count(t);
      if (nc == 0 && t != root) {
        alive[t] = 0;
        changed = true;
      } else if (nc == 1) {
        Node child = -1;
        for (Node u = 0; u < m; ++u)
          if (alive[u] && u != root && parent[u] == t) child = u;
        if (t == root) {
          root = child;
          parent[child] = child;
        } else {
          parent[child] = parent[t];
        }
        alive[t] = 0;
        changed = true;
      }
    }
  }

  std::vector<Node> remap(m, -1);
  TreeCutDecomposition out;
  for (Node t = 0; t < m; ++t)
    if (alive[t]) {
      remap[t] = static_cast<int>(out.bags.size());
      out.bags.push_back(dec.bags[t]);
    }
  out.parent.resize(out.bags.size());
  for (Node t = 0; t < m; ++t)
    if (alive[t]) out.parent[remap[t]] = remap[t == root ? t : parent[t]];
  out.root = remap[root];
  out.parent[out.root] = out.root;
  return out;
}

TreeCutDecomposition nicify(const Graph& g, const TreeCutDecomposition& dec,
                            NicifyStats* stats, RerouteAudit* audit) {
  auto rep = validate(g, dec);
  if (!rep.ok) throw std::invalid_argument("nicify: " + rep.message);
  TreeCutDecomposition cur = contract_empty(dec);
  int steps = 0;
  bool reappear = false;
  for (int round = 0; round < dec.node_count() + 2; ++round) {
    // the bad-pair log is scoped to one rerouting run; contraction renumbers
    RerouteAudit local;
    cur = top_down_reroute(g, cur, &local);
    steps += local.steps;
    reappear = reappear || local.reappearance;
    cur = contract_empty(cur);
    if (is_nice(g, cur)) break;
  }
  if (!is_nice(g, cur))
    throw std::logic_error("nicify: failed to reach a nice decomposition");
  if (audit) {
    audit->steps = steps;
    audit->reappearance = reappear;
  }
  if (stats) {
    stats->reroute_steps = steps;
    stats->input_nodes = dec.node_count();
    stats->output_nodes = cur.node_count();
  }
  return cur;
}

ChildPartition partition_children(const Graph& g,
                                  const TreeCutDecomposition& dec,
                                  const NodeMetrics& nm, Node t) {
  if (!is_nice(g, dec))
    throw std::invalid_argument("partition_children: decomposition not nice");
  ChildPartition part;
  auto ch = dec.children_lists();
  std::set<Vertex> bag(dec.bags[t].begin(), dec.bags[t].end());
  for (Node c : ch[t]) {
    bool thin = nm.adhesion[c] <= 2;
    bool inside_bag = true;
    for (Vertex v : nm.y_set[c]) {
      for (Vertex w : g.neighbors(v)) {
        if (nm.in_y(c, w)) continue;
        if (!bag.count(w)) {
          inside_bag = false;
          break;
        }
      }
      if (!inside_bag) break;
    }
    if (thin && inside_bag)
      part.b_set.push_back(c);
    else
      part.a_set.push_back(c);
  }
  const int k = nm.width;
  if (static_cast<int>(part.a_set.size()) > 2 * k + 1)
    throw std::logic_error("partition_children: |A_t| exceeds 2k+1");
  return part;
}

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

ValidationReport validate_tree_decomposition(const Graph& g,
                                             const TreeDecomposition& td) {
  const int m = td.node_count();
  if (m == 0) return {false, "tree decomposition has no nodes"};
  if (td.parent[td.root] != td.root)
    return {false, "root must be its own parent"};
  for (Node t = 0; t < m; ++t) {
    std::vector<char> seen(m, 0);
    Node cur = t;
    while (cur != td.root) {
      if (seen[cur]) return {false, "parent links contain a cycle"};
      seen[cur] = 1;
      cur = td.parent[cur];
    }
  }
  // connected occurrence: the nodes holding v must form one subtree
  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<Node> holders;
    for (Node t = 0; t < m; ++t)
      if (std::find(td.bags[t].begin(), td.bags[t].end(), v) !=
          td.bags[t].end())
        holders.push_back(t);
    if (holders.empty()) return {false, "vertex missing from all bags"};
    // all holders must reach the shallowest holder through holders only
    auto held = [&](Node t) {
      return std::find(holders.begin(), holders.end(), t) != holders.end();
    };
    auto depth = [&](Node t) {
      int d = 0;
      while (t != td.root) {
        t = td.parent[t];
        ++d;
      }
      return d;
    };
    Node top = holders[0];
    for (Node h : holders)
      if (depth(h) < depth(top)) top = h;
    for (Node h : holders) {
      Node cur = h;
      while (cur != top) {
        cur = td.parent[cur];
        if (!held(cur))
          return {false, "vertex occurrence is not connected"};
      }
    }
  }
  for (const auto& [u, v] : g.edges()) {
    bool covered = false;
    for (Node t = 0; t < m && !covered; ++t) {
      bool hu = std::find(td.bags[t].begin(), td.bags[t].end(), u) !=
                td.bags[t].end();
      bool hv = std::find(td.bags[t].begin(), td.bags[t].end(), v) !=
                td.bags[t].end();
      covered = hu && hv;
    }
    if (!covered) return {false, "edge not covered by any bag"};
  }
  return {};
}

TreeDecomposition to_tree_decomposition(const Graph& g,
                                        const TreeCutDecomposition& dec) {
  if (!is_nice(g, dec))
    throw std::invalid_argument("to_tree_decomposition: not nice");
  const int m = dec.node_count();
  auto s = subtree_info(g, dec);

  // B-thin: thin and all outside neighbors of Y_t inside the parent bag
  std::vector<char> b_thin(m, 0);
  for (Node t = 0; t < m; ++t) {
    if (t == dec.root || s.adh[t] > 2) continue;
    std::set<Vertex> pbag(dec.bags[dec.parent[t]].begin(),
                          dec.bags[dec.parent[t]].end());
    auto nb = y_neighborhood(g, s, t);
    bool ok = true;
    for (Vertex v = 0; v < g.n() && ok; ++v)
      if (nb[v] && !pbag.count(v)) ok = false;
    b_thin[t] = ok;
  }

  std::vector<Node> owner(g.n(), -1);
  for (Node t = 0; t < m; ++t)
    for (Vertex v : dec.bags[t]) owner[v] = t;

  auto ancestors_of = [&](Node t) {
    std::vector<Node> path{t};
    while (t != dec.root) {
      t = dec.parent[t];
      path.push_back(t);
    }
    return path;  // t .. root
  };

  TreeDecomposition td;
  td.root = dec.root;
  td.parent = dec.parent;
  td.bags.resize(m);

  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<Node> marked{owner[v]};
    for (Vertex w : g.neighbors(v)) marked.push_back(owner[w]);

    // minimal covering subtree: LCA of marked nodes, plus the paths down
    std::vector<char> in_tv(m, 0);
    auto base = ancestors_of(marked[0]);
    Node lca = marked[0];
    for (Node mk : marked) {
      auto pa = ancestors_of(mk);
      // deepest common node of pa and the current lca's ancestor path
      auto lpath = ancestors_of(lca);
      std::set<Node> lset(lpath.begin(), lpath.end());
      for (Node q : pa)
        if (lset.count(q)) {
          lca = q;
          break;
        }
    }
    (void)base;
    for (Node mk : marked)
      for (Node q : ancestors_of(mk)) {
        in_tv[q] = 1;
        if (q == lca) break;
      }

    // lowermost B-thin node on the path from the root of T(v) to t(v)
    std::vector<Node> down;  // lca .. owner[v]
    for (Node q : ancestors_of(owner[v])) {
      down.push_back(q);
      if (q == lca) break;
    }
    std::reverse(down.begin(), down.end());
    Node top_star = lca;
    for (Node q : down)
      if (b_thin[q]) top_star = q;  // the last hit is the lowermost

    // T'_v: nodes of T(v) that are descendants-or-self of top_star
    for (Node t = 0; t < m; ++t) {
      if (!in_tv[t]) continue;
      bool below = false;
      for (Node q : ancestors_of(t))
        if (q == top_star) {
          below = true;
          break;
        }
      if (below) td.bags[t].push_back(v);
    }
  }
  for (auto& bag : td.bags) std::sort(bag.begin(), bag.end());
  return td;
}

}  // namespace tcw
