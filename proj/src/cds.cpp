#include "tcw/cds.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "tcw/flow.hpp"
#include "tcw/ilp.hpp"

namespace tcw {

namespace {

// digit 0 = passive, digit 1+o = active with offset o; radix adh+2
int snap_radix(int adh) { return adh + 2; }

}  // namespace

bool cds_witness_feasible(const CapacitatedGraph& cg,
                          const std::vector<Vertex>& dom_set) {
  const Graph& g = cg.graph;
  std::vector<char> in_d(g.n(), 0);
  for (Vertex v : dom_set) in_d[v] = 1;
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!in_d[v]) outside.push_back(v);
  const int no = static_cast<int>(outside.size());
  // nodes: 0 source, 1..no outside, no+1..no+n vertices, no+n+1 sink
  FlowNetwork net(no + g.n() + 2);
  const int sink = no + g.n() + 1;
  for (int i = 0; i < no; ++i) {
    net.add_arc(0, 1 + i, 1);
    for (Vertex w : g.neighbors(outside[i]))
      if (in_d[w]) net.add_arc(1 + i, no + 1 + w, 1);
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (in_d[v] && cg.capacity[v] > 0)
      net.add_arc(no + 1 + v, sink, cg.capacity[v]);
  return net.max_flow(0, sink) == no;
}

std::uint64_t snapshot_space_size(const std::vector<int>& adh_v) {
  std::uint64_t s = 1;
  for (int a : adh_v) s *= snap_radix(a);
  return s;
}

std::uint64_t encode_snapshot(const CdsTable& table, const Snapshot& s) {
  std::uint64_t code = 0;
  for (size_t i = 0; i < table.boundary.size(); ++i) {
    int digit = s.active[i] ? 1 + s.offset[i] : 0;
    code = code * snap_radix(table.adh_v[i]) + digit;
  }
  return code;
}

Snapshot decode_snapshot(const CdsTable& table, std::uint64_t id) {
  Snapshot s;
  s.active.assign(table.boundary.size(), 0);
  s.offset.assign(table.boundary.size(), 0);
  for (int i = static_cast<int>(table.boundary.size()) - 1; i >= 0; --i) {
    std::uint64_t radix = snap_radix(table.adh_v[i]);
    int digit = static_cast<int>(id % radix);
    id /= radix;
    if (digit > 0) {
      s.active[i] = 1;
      s.offset[i] = digit - 1;
    }
  }
  return s;
}

CdsContext make_cds_context(const CapacitatedGraph& cg,
                            const TreeCutDecomposition& dec) {
  CdsContext ctx;
  ctx.cg = &cg;
  ctx.dec = &dec;
  ctx.nm = metrics(cg.graph, dec);
  ctx.children = dec.children_lists();
  return ctx;
}

namespace {

CdsTable cds_table_skeleton(const CdsContext& ctx, Node t) {
  CdsTable table;
  table.boundary = ctx.nm.boundary[t];
  for (Vertex v : table.boundary) table.adh_v.push_back(ctx.nm.adh_v[t].at(v));
  return table;
}

}  // namespace

std::int64_t cds_snapshot_cost(const CdsContext& ctx, Node t,
                               const Snapshot& s, bool explicit_gadget) {
  const Graph& g = ctx.cg->graph;
  const auto& y = ctx.nm.y_set[t];
  if (y.size() > 16)
    throw std::invalid_argument("cds_snapshot_cost: Y_t too large");
  CdsTable skel = cds_table_skeleton(ctx, t);
  const auto& bd = skel.boundary;

  auto border_pos = [&](Vertex v) -> int {
    auto it = std::lower_bound(bd.begin(), bd.end(), v);
    return (it != bd.end() && *it == v) ? static_cast<int>(it - bd.begin())
                                        : -1;
  };

  std::int64_t best = kInf;
  const int ny = static_cast<int>(y.size());
  for (std::uint32_t mask = 0; mask < (1u << ny); ++mask) {
    std::vector<char> in_d(g.n(), 0);
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    for (int i = 0; i < ny; ++i)
      if (mask >> i & 1) in_d[y[i]] = 1;

    bool ok = true;
    std::vector<std::int64_t> caps(g.n(), 0);
    for (Vertex v : y) caps[v] = ctx.cg->capacity[v];
    int gadget_extra = 0;  // pendants still to dominate, per active vertex

    std::vector<Vertex> need;  // vertices requiring a dominator inside Y_t
    for (Vertex v : y) {
      int bp = border_pos(v);
      if (bp >= 0 && !s.active[bp]) continue;  // passive: exempt
      if (bp >= 0 && s.active[bp]) {
        if (in_d[v]) {
          if (explicit_gadget) {
            gadget_extra += s.offset[bp];
          } else {
            caps[v] -= s.offset[bp];
            if (caps[v] < 0) ok = false;
          }
        } else if (s.offset[bp] > 0) {
          ok = false;  // pendants would be undominatable
        }
        if (!in_d[v]) need.push_back(v);
      } else if (!in_d[v]) {
        need.push_back(v);
      }
      if (!ok) break;
    }
    if (!ok) continue;

    // feasibility flow: demands -> dominating neighbors -> capacities
    const int nn = static_cast<int>(need.size());
    int extra = explicit_gadget ? gadget_extra : 0;
    FlowNetwork net(1 + nn + extra + g.n() + 1);
    const int sink = nn + extra + g.n() + 1;
    for (int i = 0; i < nn; ++i) {
      net.add_arc(0, 1 + i, 1);
      for (Vertex w : g.neighbors(need[i]))
        if (in_d[w] && ctx.nm.in_y(t, w)) net.add_arc(1 + i, nn + extra + 1 + w, 1);
    }
    if (explicit_gadget) {
      int gi = 0;
      for (size_t bp = 0; bp < bd.size(); ++bp) {
        if (!s.active[bp] || !in_d[bd[bp]]) continue;
        for (int r = 0; r < s.offset[bp]; ++r) {
          net.add_arc(0, 1 + nn + gi, 1);
          net.add_arc(1 + nn + gi, nn + extra + 1 + bd[bp], 1);
          ++gi;
        }
      }
    }
    for (Vertex v : y)
      if (in_d[v] && caps[v] > 0) net.add_arc(nn + extra + 1 + v, sink, caps[v]);
    if (net.max_flow(0, sink) == nn + extra) best = size;
  }
  return best;
}

CdsTable cds_leaf_table(const CdsContext& ctx, Node t) {
  CdsTable table = cds_table_skeleton(ctx, t);
  const std::uint64_t space = snapshot_space_size(table.adh_v);
  std::vector<std::int64_t> cost(space, kInf);
  for (std::uint64_t id = 0; id < space; ++id)
    cost[id] = cds_snapshot_cost(ctx, t, decode_snapshot(table, id));
  table.a = cost[0];
  for (std::uint64_t id = 0; id < space; ++id)
    if (cost[id] < kInf) table.beta[id] = cost[id] - table.a;
  return table;
}

namespace {

// canonical class signature of a reduced-instance child
std::string cds_child_signature(const CdsReducedInstance::BChild& child,
                                CdsReducedInstance::BChild* canon_out) {
  const int s = static_cast<int>(child.adh.size());
  std::vector<std::vector<int>> orderings;
  if (s == 0) orderings = {{}};
  else if (s == 1) orderings = {{0}};
  else orderings = {{0, 1}, {1, 0}};

  std::string best_sig;
  CdsReducedInstance::BChild best;
  for (const auto& ord : orderings) {
    CdsReducedInstance::BChild abs;
    abs.a = child.a;
    for (int i = 0; i < s; ++i) {
      abs.adh.push_back(child.adh[ord[i]]);
      auto at = child.attach[ord[i]];
      std::sort(at.begin(), at.end());
      abs.attach.push_back(at);
    }
    for (const auto& [id, b] : child.beta) {
      // re-encode digits under the new position order
      std::vector<int> digits(s);
      std::uint64_t code = id;
      for (int i = s - 1; i >= 0; --i) {
        std::uint64_t radix = snap_radix(child.adh[i]);
        digits[i] = static_cast<int>(code % radix);
        code /= radix;
      }
      std::uint64_t nid = 0;
      for (int i = 0; i < s; ++i)
        nid = nid * snap_radix(child.adh[ord[i]]) + digits[ord[i]];
      abs.beta[nid] = b;
    }
    std::string sig;
    for (int i = 0; i < s; ++i) {
      sig += "v" + std::to_string(abs.adh[i]) + ":";
      for (int x : abs.attach[i]) sig += std::to_string(x) + ",";
      sig += ";";
    }
    for (const auto& [id, b] : abs.beta)
      sig += std::to_string(id) + "=" + std::to_string(b) + "|";
    if (best_sig.empty() || sig < best_sig) {
      best_sig = sig;
      best = abs;
    }
  }
  if (canon_out) *canon_out = best;
  return best_sig;
}

struct CdsClass {
  CdsReducedInstance::BChild rep;
  std::int64_t count = 0;
};

// ILP over the class pools left after the need-branching
std::int64_t cds_pool_ilp(const CdsReducedInstance& inst,
                          const std::vector<CdsClass>& classes,
                          const std::vector<std::int64_t>& pools,
                          const std::vector<std::int64_t>& caps) {
  IlpInstance ilp;
  struct VarInfo {
    int cls;
    std::int64_t beta;
    std::vector<int> demand;  // +1 per bag index needing capacity
    int split_a = -1, split_b = -1;  // bag indices for a two-choice passive
  };
  std::vector<VarInfo> vars;
  std::vector<std::vector<size_t>> class_vars(classes.size());

  for (size_t ci = 0; ci < classes.size(); ++ci) {
    if (pools[ci] == 0) continue;
    const auto& rep = classes[ci].rep;
    for (const auto& [id, b] : rep.beta) {
      std::vector<int> digits(rep.adh.size());
      std::uint64_t code = id;
      for (int i = static_cast<int>(rep.adh.size()) - 1; i >= 0; --i) {
        std::uint64_t radix = snap_radix(rep.adh[i]);
        digits[i] = static_cast<int>(code % radix);
        code /= radix;
      }
      VarInfo vi;
      vi.cls = static_cast<int>(ci);
      vi.beta = b;
      bool usable = true;
      for (size_t p = 0; p < rep.adh.size() && usable; ++p) {
        if (digits[p] != 0) continue;  // active handles itself
        std::vector<int> ns;
        for (int x : rep.attach[p])
          if (inst.in_s[x]) ns.push_back(x);
        if (ns.empty()) {
          usable = false;
        } else if (ns.size() == 1) {
          vi.demand.push_back(ns[0]);
        } else {
          if (vi.split_a != -1) usable = false;  // cannot happen for thin
          vi.split_a = ns[0];
          vi.split_b = ns[1];
        }
      }
      if (!usable) continue;
      class_vars[ci].push_back(vars.size());
      vars.push_back(vi);
    }
  }

  // variables: one count per (class, snapshot) plus split pairs
  std::vector<int> split_var_of(vars.size(), -1);
  for (size_t vi = 0; vi < vars.size(); ++vi) {
    IlpVariable v;
    v.lower = 0;
    v.upper = pools[vars[vi].cls];
    ilp.variables.push_back(v);
    ilp.objective.push_back(vars[vi].beta);
  }
  for (size_t vi = 0; vi < vars.size(); ++vi) {
    if (vars[vi].split_a == -1) continue;
    split_var_of[vi] = static_cast<int>(ilp.variables.size());
    for (int r = 0; r < 2; ++r) {
      IlpVariable v;
      v.lower = 0;
      v.upper = pools[vars[vi].cls];
      ilp.variables.push_back(v);
      ilp.objective.push_back(0);
    }
    IlpConstraint row;  // s = xa + xb
    row.coeffs.assign(ilp.variables.size(), 0);
    row.coeffs.resize(ilp.variables.size());
    row.coeffs[vi] = 1;
    row.coeffs[split_var_of[vi]] = -1;
    row.coeffs[split_var_of[vi] + 1] = -1;
    row.rel = Rel::Eq;
    row.rhs = 0;
    ilp.constraints.push_back(row);
  }
  // pad earlier rows to the final variable count
  for (auto& row : ilp.constraints) row.coeffs.resize(ilp.variables.size(), 0);

  for (size_t ci = 0; ci < classes.size(); ++ci) {
    if (pools[ci] == 0) {
      if (!class_vars[ci].empty()) continue;
      continue;
    }
    IlpConstraint row;
    row.coeffs.assign(ilp.variables.size(), 0);
    for (size_t vi : class_vars[ci]) row.coeffs[vi] = 1;
    row.rel = Rel::Eq;
    row.rhs = pools[ci];
    ilp.constraints.push_back(row);
  }
  for (int x = 0; x < inst.bag_size; ++x) {
    if (!inst.in_s[x]) continue;
    IlpConstraint row;
    row.coeffs.assign(ilp.variables.size(), 0);
    bool relevant = false;
    for (size_t vi = 0; vi < vars.size(); ++vi) {
      int d = 0;
      for (int dx : vars[vi].demand)
        if (dx == x) ++d;
      if (d) {
        row.coeffs[vi] = d;
        relevant = true;
      }
      if (split_var_of[vi] != -1) {
        if (vars[vi].split_a == x) {
          row.coeffs[split_var_of[vi]] = 1;
          relevant = true;
        }
        if (vars[vi].split_b == x) {
          row.coeffs[split_var_of[vi] + 1] = 1;
          relevant = true;
        }
      }
    }
    if (!relevant) continue;
    row.rel = Rel::LessEq;
    row.rhs = std::max<std::int64_t>(caps[x], 0);
    ilp.constraints.push_back(row);
  }

  auto sol = solve_min(ilp);
  return sol ? sol->value : kInf;
}

}  // namespace

std::int64_t cds_reduced_min(const CdsReducedInstance& inst) {
  std::int64_t base = 0;
  std::vector<CdsClass> classes;
  std::map<std::string, size_t> class_index;
  for (const auto& child : inst.children) {
    base = inf_add(base, child.a);
    CdsReducedInstance::BChild canon;
    std::string sig = cds_child_signature(child, &canon);
    auto it = class_index.find(sig);
    if (it == class_index.end()) {
      class_index.emplace(sig, classes.size());
      classes.push_back({canon, 1});
    } else {
      ++classes[it->second].count;
    }
  }
  if (base >= kInf) return kInf;

  std::vector<std::int64_t> pools(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) pools[i] = classes[i].count;

  struct Virtual {
    int cls;
    std::vector<int> digits;       // snapshot digits of the rep
    std::vector<int> surplus;      // remaining outside-domination units
    int uses = 0;
    std::int64_t beta;
  };

  std::int64_t best = kInf;
  std::vector<Virtual> virtuals;
  std::vector<std::int64_t> caps = inst.caps;

  // assign each needing bag vertex a dominating child snapshot
  std::function<void(size_t, std::int64_t)> assign = [&](size_t ni,
                                                         std::int64_t acc) {
    if (acc >= best) return;
    if (ni == inst.need.size()) {
      std::int64_t tail = cds_pool_ilp(inst, classes, pools, caps);
      if (tail < kInf) best = std::min(best, acc + tail);
      return;
    }
    const int x = inst.need[ni];
    // reuse an already-branched child
    for (auto& vc : virtuals) {
      if (vc.uses >= 2) continue;
      const auto& rep = classes[vc.cls].rep;
      for (size_t p = 0; p < rep.adh.size(); ++p) {
        if (vc.surplus[p] <= 0) continue;
        if (std::find(rep.attach[p].begin(), rep.attach[p].end(), x) ==
            rep.attach[p].end())
          continue;
        --vc.surplus[p];
        ++vc.uses;
        assign(ni + 1, acc);
        --vc.uses;
        ++vc.surplus[p];
      }
    }
    // branch a new child: pick class, snapshot, dominating position
    for (size_t ci = 0; ci < classes.size(); ++ci) {
      if (pools[ci] == 0) continue;
      const auto& rep = classes[ci].rep;
      for (const auto& [id, b] : rep.beta) {
        std::vector<int> digits(rep.adh.size());
        std::uint64_t code = id;
        for (int i = static_cast<int>(rep.adh.size()) - 1; i >= 0; --i) {
          std::uint64_t radix = snap_radix(rep.adh[i]);
          digits[i] = static_cast<int>(code % radix);
          code /= radix;
        }
        for (size_t p = 0; p < rep.adh.size(); ++p) {
          if (digits[p] == 0 || digits[p] - 1 < 1) continue;
          if (std::find(rep.attach[p].begin(), rep.attach[p].end(), x) ==
              rep.attach[p].end())
            continue;
          // resolve the snapshot's passive positions against S capacities
          std::vector<std::vector<int>> passive_opts;
          bool usable = true;
          for (size_t q = 0; q < rep.adh.size() && usable; ++q) {
            if (digits[q] != 0) continue;
            std::vector<int> ns;
            for (int ax : rep.attach[q])
              if (inst.in_s[ax]) ns.push_back(ax);
            if (ns.empty()) usable = false;
            else passive_opts.push_back(ns);
          }
          if (!usable) continue;

          Virtual vc;
          vc.cls = static_cast<int>(ci);
          vc.digits = digits;
          vc.beta = b;
          vc.surplus.assign(rep.adh.size(), 0);
          for (size_t q = 0; q < rep.adh.size(); ++q)
            if (digits[q] > 0) vc.surplus[q] = digits[q] - 1;
          --vc.surplus[p];
          vc.uses = 1;

          --pools[ci];
          virtuals.push_back(vc);
          // branch over passive dominator choices
          std::function<void(size_t)> resolve = [&](size_t oi) {
            if (oi == passive_opts.size()) {
              assign(ni + 1, acc + b);
              return;
            }
            for (int ax : passive_opts[oi]) {
              if (caps[ax] <= 0) continue;
              --caps[ax];
              resolve(oi + 1);
              ++caps[ax];
            }
          };
          resolve(0);
          virtuals.pop_back();
          ++pools[ci];
        }
      }
    }
  };
  assign(0, 0);
  if (best >= kInf) return kInf;
  return inf_add(base, best);
}

bool cds_reduced_join(const CdsReducedInstance& inst, std::int64_t budget) {
  std::int64_t below = cds_reduced_min(inst);
  std::int64_t in_s = 0;
  for (int x = 0; x < inst.bag_size; ++x)
    if (inst.in_s[x]) ++in_s;
  return inf_add(below, in_s) <= budget;
}

CdsTable cds_join(const CdsContext& ctx, Node t,
                  const std::vector<CdsTable>& tables) {
  const Graph& g = ctx.cg->graph;
  const auto& nm = ctx.nm;
  ChildPartition part = partition_children(g, *ctx.dec, nm, t);
  CdsTable table = cds_table_skeleton(ctx, t);

  const auto& bag = ctx.dec->bags[t];
  const int nb = static_cast<int>(bag.size());
  std::vector<int> bag_idx(g.n(), -1);
  for (int i = 0; i < nb; ++i) bag_idx[bag[i]] = i;
  std::vector<int> bpos(g.n(), -1);
  for (size_t i = 0; i < table.boundary.size(); ++i)
    bpos[table.boundary[i]] = static_cast<int>(i);

  // reduced-instance children are fixed across snapshots
  std::vector<CdsReducedInstance::BChild> b_proto;
  for (Node c : part.b_set) {
    CdsReducedInstance::BChild bc;
    bc.a = tables[c].a;
    bc.beta = tables[c].beta;
    bc.adh = tables[c].adh_v;
    for (Vertex v : tables[c].boundary) {
      std::vector<int> at;
      for (Vertex w : g.neighbors(v))
        if (!nm.in_y(c, w)) {
          if (bag_idx[w] < 0)
            throw std::logic_error("cds_join: B-child attached outside bag");
          at.push_back(bag_idx[w]);
        }
      std::sort(at.begin(), at.end());
      bc.attach.push_back(at);
    }
    b_proto.push_back(std::move(bc));
  }

  struct ReducedKey {
    std::uint32_t s_mask;
    std::vector<std::int64_t> caps;
    std::vector<int> need;
    bool operator<(const ReducedKey& o) const {
      return std::tie(s_mask, caps, need) < std::tie(o.s_mask, o.caps, o.need);
    }
  };
  std::map<ReducedKey, std::int64_t> reduced_cache;

  auto reduced_value = [&](std::uint32_t s_mask,
                           const std::vector<std::int64_t>& caps,
                           std::vector<int> need) {
    std::sort(need.begin(), need.end());
    ReducedKey key{s_mask, caps, need};
    auto it = reduced_cache.find(key);
    if (it != reduced_cache.end()) return it->second;
    CdsReducedInstance inst;
    inst.bag_size = nb;
    inst.in_s.assign(nb, 0);
    for (int i = 0; i < nb; ++i) inst.in_s[i] = (s_mask >> i & 1) != 0;
    inst.caps = caps;
    inst.need = need;
    inst.children = b_proto;
    std::int64_t v = cds_reduced_min(inst);
    reduced_cache.emplace(key, v);
    return v;
  };

  const std::uint64_t space = snapshot_space_size(table.adh_v);
  std::vector<std::int64_t> cost(space, kInf);

  for (std::uint64_t sid = 0; sid < space; ++sid) {
    Snapshot snap = decode_snapshot(table, sid);
    std::int64_t best = kInf;

    for (std::uint32_t s_mask = 0; s_mask < (1u << nb); ++s_mask) {
      std::int64_t s_size = __builtin_popcount(s_mask);
      std::vector<std::int64_t> caps(nb, 0);
      bool ok = true;
      // demands: graph vertices needing a dominator inside Y_t minus the
      // child that owns them; bag demands may fall through to B-children
      std::vector<Vertex> demands;
      std::vector<char> demand_is_bag;

      for (int i = 0; i < nb && ok; ++i) {
        Vertex x = bag[i];
        bool in_s = (s_mask >> i & 1) != 0;
        int bp = bpos[x];
        caps[i] = ctx.cg->capacity[x];
        if (bp >= 0 && !snap.active[bp]) {
          continue;  // passive: exempt either way (may still sit in S)
        }
        if (in_s) {
          if (bp >= 0 && snap.active[bp]) {
            caps[i] -= snap.offset[bp];
            if (caps[i] < 0) ok = false;
          }
        } else {
          if (bp >= 0 && snap.active[bp] && snap.offset[bp] > 0) {
            ok = false;  // reserved outside capacity requires membership
          } else {
            demands.push_back(x);
            demand_is_bag.push_back(1);
          }
        }
      }
      if (!ok) continue;

      // enumerate compatible child snapshots for the A-children
      struct ChildChoice {
        Node node;
        std::vector<std::uint64_t> ids;
        std::vector<std::int64_t> costs;                 // a + beta
        std::vector<std::vector<Vertex>> new_demands;    // passive borders
        std::vector<std::vector<std::pair<Vertex, int>>> surpluses;
      };
      std::vector<ChildChoice> choices;
      bool dead = false;
      for (Node c : part.a_set) {
        const CdsTable& ct = tables[c];
        ChildChoice cc;
        cc.node = c;
        for (const auto& [id, b] : ct.beta) {
          Snapshot cs = decode_snapshot(ct, id);
          bool compat = true;
          std::vector<Vertex> nd;
          std::vector<std::pair<Vertex, int>> sp;
          for (size_t q = 0; q < ct.boundary.size() && compat; ++q) {
            Vertex v = ct.boundary[q];
            int tb = bpos[v];
            if (tb >= 0 && snap.active[tb]) {
              if (cs.active[q]) {
                if (snap.offset[tb] > cs.offset[q]) compat = false;
                else if (cs.offset[q] - snap.offset[tb] > 0)
                  sp.emplace_back(v, cs.offset[q] - snap.offset[tb]);
              } else if (snap.offset[tb] > 0) {
                // a promised residual capacity needs the vertex in the set,
                // which a passive child snapshot cannot certify
                compat = false;
              } else {
                nd.push_back(v);  // active above, passive below
              }
            } else if (cs.active[q]) {
              // exempt above (or interior): the child side governs; its
              // whole reserved capacity is usable here
              if (cs.offset[q] > 0) sp.emplace_back(v, cs.offset[q]);
            } else if (tb < 0) {
              nd.push_back(v);  // interior and passive below: dominate here
            }
            // passive above and below: exempt
          }
          if (!compat) continue;
          cc.ids.push_back(id);
          cc.costs.push_back(inf_add(ct.a, b));
          cc.new_demands.push_back(nd);
          cc.surpluses.push_back(sp);
        }
        if (cc.ids.empty()) {
          dead = true;
          break;
        }
        choices.push_back(std::move(cc));
      }
      if (dead) continue;

      // walk the product of child snapshot choices, then assign demands
      std::vector<std::int64_t> cap_now = caps;
      std::map<Vertex, int> surplus_now;
      std::vector<Vertex> all_demands = demands;
      std::vector<char> all_is_bag = demand_is_bag;
      std::vector<int> owner_child(g.n(), -1);
      for (size_t ci = 0; ci < part.a_set.size(); ++ci)
        for (Vertex v : nm.y_set[part.a_set[ci]]) owner_child[v] = static_cast<int>(ci);

      std::function<void(size_t, std::int64_t)> pick_children =
          [&](size_t ci, std::int64_t acc) {
            if (acc >= kInf || acc >= best) return;
            if (ci == choices.size()) {
              // all child snapshots fixed: route demands
              std::vector<int> bag_need;
              std::function<void(size_t, std::int64_t)> route =
                  [&](size_t di, std::int64_t acc2) {
                    if (acc2 >= best) return;
                    if (di == all_demands.size()) {
                      std::int64_t tail =
                          reduced_value(s_mask, cap_now, bag_need);
                      if (tail < kInf)
                        best = std::min(best, inf_add(acc2, tail));
                      return;
                    }
                    Vertex v = all_demands[di];
                    bool is_bag = all_is_bag[di];
                    // option: an S-neighbor with spare capacity
                    for (Vertex w : g.neighbors(v)) {
                      if (bag_idx[w] >= 0 && (s_mask >> bag_idx[w] & 1) &&
                          cap_now[bag_idx[w]] > 0) {
                        --cap_now[bag_idx[w]];
                        route(di + 1, acc2);
                        ++cap_now[bag_idx[w]];
                      }
                      // option: surplus of an A-child border vertex
                      auto it = surplus_now.find(w);
                      if (it != surplus_now.end() && it->second > 0 &&
                          (is_bag || owner_child[w] != owner_child[v])) {
                        --it->second;
                        route(di + 1, acc2);
                        ++it->second;
                      }
                    }
                    // option: leave a bag demand to the B-children
                    if (is_bag) {
                      bag_need.push_back(bag_idx[v]);
                      route(di + 1, acc2);
                      bag_need.pop_back();
                    }
                  };
              route(0, acc);
              return;
            }
            const auto& cc = choices[ci];
            for (size_t oi = 0; oi < cc.ids.size(); ++oi) {
              std::int64_t nacc = inf_add(acc, cc.costs[oi]);
              if (nacc >= best) continue;
              size_t dsave = all_demands.size();
              for (Vertex v : cc.new_demands[oi]) {
                all_demands.push_back(v);
                all_is_bag.push_back(0);
              }
              for (const auto& [v, u] : cc.surpluses[oi]) surplus_now[v] += u;
              pick_children(ci + 1, nacc);
              for (const auto& [v, u] : cc.surpluses[oi]) surplus_now[v] -= u;
              all_demands.resize(dsave);
              all_is_bag.resize(dsave);
            }
          };
      pick_children(0, s_size);
    }
    cost[sid] = best;
  }

  table.a = cost[0];
  for (std::uint64_t id = 0; id < space; ++id)
    if (cost[id] < kInf) table.beta[id] = cost[id] - table.a;
  return table;
}

CdsResult solve_cds(const CapacitatedGraph& cg,
                    const TreeCutDecomposition& dec, std::int64_t budget) {
  auto rep = validate(cg.graph, dec);
  if (!rep.ok) throw std::invalid_argument("solve_cds: " + rep.message);
  CdsResult res;
  res.nice_dec = nicify(cg.graph, dec);
  if (!res.nice_dec.bags[res.nice_dec.root].empty()) {
    // hang the whole decomposition below a fresh empty root
    Node fresh = res.nice_dec.node_count();
    res.nice_dec.parent.push_back(fresh);
    res.nice_dec.bags.emplace_back();
    res.nice_dec.parent[res.nice_dec.root] = fresh;
    res.nice_dec.root = fresh;
  }
  CdsContext ctx = make_cds_context(cg, res.nice_dec);
  res.width = ctx.nm.width;

  const int m = res.nice_dec.node_count();
  auto depth = res.nice_dec.depths();
  std::vector<Node> order(m);
  for (Node t = 0; t < m; ++t) order[t] = t;
  std::sort(order.begin(), order.end(),
            [&](Node a, Node b) { return depth[a] > depth[b]; });
  res.tables.resize(m);
  for (Node t : order)
    res.tables[t] = ctx.children[t].empty() ? cds_leaf_table(ctx, t)
                                            : cds_join(ctx, t, res.tables);
  res.optimum = res.tables[res.nice_dec.root].a;
  res.yes = res.optimum <= budget;
  return res;
}

}  // namespace tcw
