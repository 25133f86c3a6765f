#include "tcw/cvc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tcw/flow.hpp"
#include "tcw/ilp.hpp"

namespace tcw {

namespace {

bool cover_feasible(int n, const std::vector<Edge>& edges,
                    const std::vector<std::int64_t>& caps,
                    const std::vector<char>& in_cover) {
  const int m = static_cast<int>(edges.size());
  if (m == 0) return true;
  // nodes: 0 source, 1..m edges, m+1..m+n vertices, m+n+1 sink
  FlowNetwork net(m + n + 2);
  const int sink = m + n + 1;
  for (int i = 0; i < m; ++i) {
    net.add_arc(0, 1 + i, 1);
    if (in_cover[edges[i].first]) net.add_arc(1 + i, m + 1 + edges[i].first, 1);
    if (in_cover[edges[i].second])
      net.add_arc(1 + i, m + 1 + edges[i].second, 1);
  }
  for (int v = 0; v < n; ++v)
    if (in_cover[v] && caps[v] > 0) net.add_arc(m + 1 + v, sink, caps[v]);
  return net.max_flow(0, sink) == m;
}

}  // namespace

bool cvc_witness_feasible(const CapacitatedGraph& cg,
                          const std::vector<Vertex>& cover) {
  std::vector<char> in_cover(cg.graph.n(), 0);
  for (Vertex v : cover) in_cover[v] = 1;
  return cover_feasible(cg.graph.n(), cg.graph.edges(), cg.capacity, in_cover);
}

std::int64_t min_capacitated_cover(int n, const std::vector<Edge>& edges,
                                   const std::vector<std::int64_t>& caps,
                                   const std::vector<Vertex>& allowed) {
  const int k = static_cast<int>(allowed.size());
  if (k > 24) throw std::invalid_argument("min_capacitated_cover: too large");
  std::int64_t best = kInf;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    std::vector<char> in_cover(n, 0);
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) in_cover[allowed[i]] = 1;
    if (cover_feasible(n, edges, caps, in_cover)) best = size;
  }
  return best;
}

CvcContext make_cvc_context(const CapacitatedGraph& cg,
                            const TreeCutDecomposition& dec) {
  CvcContext ctx;
  ctx.cg = &cg;
  ctx.dec = &dec;
  ctx.nm = metrics(cg.graph, dec);
  ctx.children = dec.children_lists();
  return ctx;
}

namespace {

std::vector<Edge> sorted_cut_edges(const Graph& g, const NodeMetrics& nm,
                                   Node t) {
  std::vector<Edge> out;
  for (const auto& [u, v] : g.edges()) {
    bool iu = nm.in_y(t, u), iv = nm.in_y(t, v);
    if (iu != iv) out.push_back(make_edge(u, v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CvcTable cvc_leaf_table(const CvcContext& ctx, Node t) {
  const Graph& g = ctx.cg->graph;
  CvcTable table;
  table.k_edges = sorted_cut_edges(g, ctx.nm, t);
  const auto& y = ctx.nm.y_set[t];

  std::vector<Edge> internal;
  for (const auto& [u, v] : g.edges())
    if (ctx.nm.in_y(t, u) && ctx.nm.in_y(t, v))
      internal.push_back(make_edge(u, v));

  const int kc = static_cast<int>(table.k_edges.size());
  table.beta.assign(std::size_t(1) << kc, kInf);
  table.a = min_capacitated_cover(g.n(), internal, ctx.cg->capacity, y);
  for (std::uint32_t mask = 0; mask < (1u << kc); ++mask) {
    std::vector<Edge> edges = internal;
    for (int i = 0; i < kc; ++i)
      if (mask >> i & 1) edges.push_back(table.k_edges[i]);
    std::int64_t val = min_capacitated_cover(g.n(), edges, ctx.cg->capacity, y);
    table.beta[mask] = (val >= kInf || table.a >= kInf) ? kInf : val - table.a;
  }
  return table;
}

std::int64_t cvc_reduced_join(const CvcReducedInstance& inst) {
  const int nx = static_cast<int>(inst.caps.size());
  std::int64_t base = 0;
  for (const auto& c : inst.children) base = inf_add(base, c.a);
  if (base >= kInf) return kInf;

  // group children into classes: same attachment profile and same beta table
  struct ClassInfo {
    CvcReducedChild rep;
    std::int64_t count = 0;
  };
  std::map<std::pair<std::vector<int>, std::vector<std::int64_t>>, ClassInfo>
      classes;
  for (const auto& c : inst.children) {
    // canonical edge order: sort attachments; for the adhesion-2 same-vertex
    // case both orders are tried and the lexicographically smaller beta wins
    CvcReducedChild canon = c;
    std::vector<int> order(c.attach.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c.attach[a] < c.attach[b]; });
    auto apply = [&](const std::vector<int>& ord) {
      CvcReducedChild out;
      out.a = c.a;
      for (int i : ord) out.attach.push_back(c.attach[i]);
      out.beta.assign(c.beta.size(), 0);
      for (std::uint32_t mask = 0; mask < c.beta.size(); ++mask) {
        std::uint32_t orig = 0;
        for (size_t i = 0; i < ord.size(); ++i)
          if (mask >> i & 1) orig |= 1u << ord[i];
        out.beta[mask] = c.beta[orig];
      }
      return out;
    };
    canon = apply(order);
    if (c.attach.size() == 2 && canon.attach[0] == canon.attach[1]) {
      std::vector<int> swapped{order[1], order[0]};
      CvcReducedChild alt = apply(swapped);
      if (alt.beta < canon.beta) canon = alt;
    }
    auto key = std::make_pair(canon.attach, canon.beta);
    auto& cls = classes[key];
    if (cls.count == 0) cls.rep = canon;
    ++cls.count;
  }

  std::int64_t total_children = 0;
  for (const auto& [key, cls] : classes) total_children += cls.count;
  const std::int64_t penalty =
      1 + total_children * std::int64_t(inst.width + 1) + nx;

  std::int64_t best = kInf;
  for (std::uint32_t xsel = 0; xsel < (1u << nx); ++xsel) {
    IlpInstance ilp;
    ilp.big_penalty = penalty;
    std::vector<std::pair<const ClassInfo*, std::uint32_t>> var_of;
    for (const auto& [key, cls] : classes) {
      for (std::uint32_t h = 0; h < cls.rep.beta.size(); ++h) {
        IlpVariable v;
        v.lower = 0;
        v.upper = cls.count;
        ilp.variables.push_back(v);
        std::int64_t b = cls.rep.beta[h];
        ilp.objective.push_back(b >= kInf ? penalty : b);
        var_of.emplace_back(&cls, h);
      }
    }
    // class partition rows
    {
      size_t idx = 0;
      for (const auto& [key, cls] : classes) {
        IlpConstraint row;
        row.coeffs.assign(ilp.variables.size(), 0);
        for (std::uint32_t h = 0; h < cls.rep.beta.size(); ++h)
          row.coeffs[idx + h] = 1;
        row.rel = Rel::Eq;
        row.rhs = cls.count;
        ilp.constraints.push_back(row);
        idx += cls.rep.beta.size();
      }
    }
    // capacity rows: edges not covered by the child land on the bag vertex
    for (int x = 0; x < nx; ++x) {
      IlpConstraint row;
      row.coeffs.assign(ilp.variables.size(), 0);
      for (size_t vi = 0; vi < var_of.size(); ++vi) {
        const auto& [cls, h] = var_of[vi];
        std::int64_t full = 0, covered = 0;
        for (size_t e = 0; e < cls->rep.attach.size(); ++e) {
          if (cls->rep.attach[e] != x) continue;
          ++full;
          if (h >> e & 1) ++covered;
        }
        row.coeffs[vi] = full - covered;
      }
      row.rel = Rel::LessEq;
      row.rhs = (xsel >> x & 1) ? inst.caps[x] : 0;
      ilp.constraints.push_back(row);
    }
    auto sol = solve_min(ilp);
    if (!sol || sol->value >= penalty) continue;
    best = std::min(best, sol->value + __builtin_popcount(xsel));
  }
  return best >= kInf ? kInf : inf_add(base, best);
}

CvcTable cvc_join(const CvcContext& ctx, Node t,
                  const std::vector<CvcTable>& tables) {
  const Graph& g = ctx.cg->graph;
  const auto& nm = ctx.nm;
  ChildPartition part = partition_children(g, *ctx.dec, nm, t);

  for (Node c : ctx.children[t])
    if (tables[c].beta.empty())
      throw std::invalid_argument("cvc_join: missing child table");

  CvcTable table;
  table.k_edges = sorted_cut_edges(g, nm, t);
  const int kc = static_cast<int>(table.k_edges.size());

  const auto& xs = ctx.dec->bags[t];
  const int nx = static_cast<int>(xs.size());
  std::vector<int> xpos(g.n(), -1);
  for (int i = 0; i < nx; ++i) xpos[xs[i]] = i;

  // domain: bag-internal edges, edges crossing an A-child inside Y_t, and
  // edges leaving Y_t
  std::vector<Edge> domain;
  std::map<Edge, int> dom_index;
  auto add_dom = [&](const Edge& e) {
    if (dom_index.emplace(e, static_cast<int>(domain.size())).second)
      domain.push_back(e);
  };
  for (const auto& e : table.k_edges) add_dom(e);
  for (const auto& [u, v] : g.edges()) {
    if (!nm.in_y(t, u) || !nm.in_y(t, v)) continue;
    if (xpos[u] >= 0 && xpos[v] >= 0) {
      add_dom(make_edge(u, v));
      continue;
    }
    for (Node c : part.a_set) {
      bool iu = nm.in_y(c, u), iv = nm.in_y(c, v);
      if (iu != iv) {
        add_dom(make_edge(u, v));
        break;
      }
    }
  }
  const int nd = static_cast<int>(domain.size());
  if (nd > 26) throw std::invalid_argument("cvc_join: domain too large");

  // each A-child's boundary edges as (domain index, bit, inside endpoint)
  struct ChildEdges {
    Node node;
    std::vector<std::pair<int, int>> bits;  // (domain index, bit position)
    std::vector<char> inside_is_first;
  };
  std::vector<ChildEdges> a_children;
  for (Node c : part.a_set) {
    ChildEdges ce;
    ce.node = c;
    const auto& kedges = tables[c].k_edges;
    for (size_t i = 0; i < kedges.size(); ++i) {
      auto it = dom_index.find(kedges[i]);
      if (it == dom_index.end())
        throw std::logic_error("cvc_join: child boundary edge not in domain");
      ce.bits.emplace_back(it->second, static_cast<int>(i));
      ce.inside_is_first.push_back(nm.in_y(c, kedges[i].first) ? 1 : 0);
    }
    a_children.push_back(ce);
  }

  // the reduced instance skeleton shared by all f: B-children plus the bag
  auto b_child_of = [&](Node c) {
    CvcReducedChild rc;
    rc.a = tables[c].a;
    rc.beta = tables[c].beta;
    for (const auto& e : tables[c].k_edges) {
      Vertex x = nm.in_y(c, e.first) ? e.second : e.first;
      if (xpos[x] < 0)
        throw std::logic_error("cvc_join: B-child attached outside the bag");
      rc.attach.push_back(xpos[x]);
    }
    return rc;
  };
  std::vector<CvcReducedChild> b_children;
  for (Node c : part.b_set) b_children.push_back(b_child_of(c));

  std::map<std::pair<std::vector<std::int64_t>, std::uint32_t>, std::int64_t>
      reduced_cache;

  std::vector<std::int64_t> cost(std::size_t(1) << kc, kInf);
  std::vector<int> kbit(nd, -1);
  for (int i = 0; i < kc; ++i) kbit[dom_index[table.k_edges[i]]] = i;

  for (std::uint64_t f = 0; f < (std::uint64_t(1) << nd); ++f) {
    // bit set: edge mapped to its second endpoint
    std::int64_t acost = 0;
    for (const auto& ce : a_children) {
      std::uint32_t mask = 0;
      for (size_t i = 0; i < ce.bits.size(); ++i) {
        bool to_second = f >> ce.bits[i].first & 1;
        bool inside = ce.inside_is_first[i] ? !to_second : to_second;
        if (inside) mask |= 1u << ce.bits[i].second;
      }
      const CvcTable& ct = tables[ce.node];
      acost = inf_add(acost, inf_add(ct.a, ct.beta[mask]));
      if (acost >= kInf) break;
    }
    if (acost >= kInf) continue;

    std::vector<std::int64_t> debit(nx, 0);
    std::uint32_t forced = 0;
    bool ok = true;
    for (int i = 0; i < nd && ok; ++i) {
      Vertex target = (f >> i & 1) ? domain[i].second : domain[i].first;
      if (xpos[target] >= 0) {
        ++debit[xpos[target]];
        forced |= 1u << xpos[target];
      } else if (!nm.in_y(t, target)) {
        // mapped to the outside endpoint: not covered within Y_t
        if (kbit[i] < 0) ok = false;  // only boundary edges may do this
      }
    }
    if (!ok) continue;

    std::uint32_t hmask = 0;
    for (int i = 0; i < kc; ++i) {
      int di = dom_index[table.k_edges[i]];
      Vertex target = (f >> di & 1) ? domain[di].second : domain[di].first;
      if (nm.in_y(t, target)) hmask |= 1u << i;
    }

    auto key = std::make_pair(debit, forced);
    auto it = reduced_cache.find(key);
    std::int64_t reduced;
    if (it != reduced_cache.end()) {
      reduced = it->second;
    } else {
      CvcReducedInstance inst;
      inst.width = std::max(nm.width, 1);
      inst.children = b_children;
      inst.caps.resize(nx);
      for (int x = 0; x < nx; ++x) {
        std::int64_t cap = ctx.cg->capacity[xs[x]];
        if (forced >> x & 1) {
          cap = cap + 1 - debit[x];
          if (cap < 0) cap = 0;
          CvcReducedChild pendant;
          pendant.a = 0;
          pendant.attach = {x};
          pendant.beta = {0, kInf};
          inst.children.push_back(pendant);
        }
        inst.caps[x] = cap;
      }
      reduced = cvc_reduced_join(inst);
      reduced_cache.emplace(key, reduced);
    }
    cost[hmask] = std::min(cost[hmask], inf_add(acost, reduced));
  }

  table.a = cost[0];
  table.beta.resize(cost.size());
  for (size_t h = 0; h < cost.size(); ++h)
    table.beta[h] =
        (cost[h] >= kInf || table.a >= kInf) ? kInf : cost[h] - table.a;
  return table;
}

CvcResult solve_cvc(const CapacitatedGraph& cg,
                    const TreeCutDecomposition& dec, std::int64_t budget) {
  auto rep = validate(cg.graph, dec);
  if (!rep.ok) throw std::invalid_argument("solve_cvc: " + rep.message);
  CvcResult res;
  res.nice_dec = nicify(cg.graph, dec);
  CvcContext ctx = make_cvc_context(cg, res.nice_dec);
  res.width = ctx.nm.width;

  const int m = res.nice_dec.node_count();
  auto depth = res.nice_dec.depths();
  std::vector<Node> order(m);
  for (Node t = 0; t < m; ++t) order[t] = t;
  std::sort(order.begin(), order.end(),
            [&](Node a, Node b) { return depth[a] > depth[b]; });

  res.tables.resize(m);
  for (Node t : order)
    res.tables[t] = ctx.children[t].empty() ? cvc_leaf_table(ctx, t)
                                            : cvc_join(ctx, t, res.tables);
  res.optimum = res.tables[res.nice_dec.root].a;
  res.yes = res.optimum <= budget;
  return res;
}

}  // namespace tcw
