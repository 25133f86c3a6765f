#include "tcw/imbalance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tcw {

namespace {

std::vector<std::vector<Vertex>> permutations_of(std::vector<Vertex> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<Vertex>> out;
  do {
    out.push_back(items);
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

// tau digit <-> value: 0 = -inf, 1..2a+1 = -a..a, 2a+2 = +inf
int tau_digit_count(int adh) { return 2 * adh + 3; }

int tau_from_digit(int digit, int adh) {
  if (digit == 0) return kTauNegInf;
  if (digit == 2 * adh + 2) return kTauPosInf;
  return digit - 1 - adh;
}

int digit_from_tau(int tau, int adh) {
  if (tau == kTauNegInf) return 0;
  if (tau == kTauPosInf) return 2 * adh + 2;
  return tau + adh + 1;
}

int saturate(std::int64_t balance, int adh) {
  if (balance > adh) return kTauPosInf;
  if (balance < -adh) return kTauNegInf;
  return static_cast<int>(balance);
}

// additional |balance| incurred by signed shift `net` on a target `tau`
std::int64_t shift_delta(int tau, std::int64_t net) {
  if (tau == kTauPosInf) return net;
  if (tau == kTauNegInf) return -net;
  return std::llabs(tau + net) - std::llabs(static_cast<std::int64_t>(tau));
}

std::uint64_t perm_rank(const std::vector<Vertex>& sorted_items,
                        const std::vector<Vertex>& order) {
  std::vector<Vertex> rest = sorted_items;
  std::uint64_t rank = 0;
  for (Vertex v : order) {
    auto it = std::find(rest.begin(), rest.end(), v);
    if (it == rest.end())
      throw std::invalid_argument("extract order must permute the boundary");
    rank = rank * rest.size() + static_cast<std::uint64_t>(it - rest.begin());
    rest.erase(it);
  }
  return rank;
}

std::vector<Vertex> perm_unrank(const std::vector<Vertex>& sorted_items,
                                std::uint64_t rank) {
  std::vector<Vertex> rest = sorted_items;
  std::vector<Vertex> order;
  std::uint64_t fact = 1;
  for (size_t i = 2; i < sorted_items.size(); ++i) fact *= i;
  while (!rest.empty()) {
    std::uint64_t idx = rank / fact;
    rank %= fact;
    order.push_back(rest[idx]);
    rest.erase(rest.begin() + idx);
    if (rest.size() > 1) fact /= rest.size();
  }
  return order;
}

}  // namespace

std::int64_t imbalance_of_order(const Graph& g,
                                const std::vector<Vertex>& order) {
  if (static_cast<int>(order.size()) != g.n())
    throw std::invalid_argument("imbalance_of_order: not a permutation");
  std::vector<int> pos(g.n(), -1);
  for (size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    if (v < 0 || v >= g.n() || pos[v] != -1)
      throw std::invalid_argument("imbalance_of_order: not a permutation");
    pos[v] = static_cast<int>(i);
  }
  std::int64_t total = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    std::int64_t bal = 0;
    for (Vertex w : g.neighbors(v)) bal += pos[w] > pos[v] ? 1 : -1;
    total += std::llabs(bal);
  }
  return total;
}

std::uint64_t extract_space_size(const std::vector<int>& adh_v) {
  std::uint64_t perms = 1, taus = 1;
  for (size_t i = 0; i < adh_v.size(); ++i) {
    perms *= i + 1;
    taus *= tau_digit_count(adh_v[i]);
  }
  return perms * taus;
}

std::uint64_t encode_extract(const ImbTable& table, const Extract& e) {
  std::uint64_t taus = 1;
  for (int a : table.adh_v) taus *= tau_digit_count(a);
  std::uint64_t code = 0;
  for (size_t i = 0; i < table.boundary.size(); ++i) {
    std::uint64_t radix = tau_digit_count(table.adh_v[i]);
    code = code * radix + digit_from_tau(e.tau[i], table.adh_v[i]);
  }
  return perm_rank(table.boundary, e.order) * taus + code;
}

Extract decode_extract(const ImbTable& table, std::uint64_t id) {
  std::uint64_t taus = 1;
  for (int a : table.adh_v) taus *= tau_digit_count(a);
  Extract e;
  e.order = perm_unrank(table.boundary, id / taus);
  std::uint64_t code = id % taus;
  e.tau.assign(table.boundary.size(), 0);
  for (int i = static_cast<int>(table.boundary.size()) - 1; i >= 0; --i) {
    std::uint64_t radix = tau_digit_count(table.adh_v[i]);
    e.tau[i] = tau_from_digit(static_cast<int>(code % radix), table.adh_v[i]);
    code /= radix;
  }
  return e;
}

ImbContext make_imb_context(const Graph& g, const TreeCutDecomposition& dec,
                            bool use_cutoff) {
  ImbContext ctx;
  ctx.g = &g;
  ctx.dec = &dec;
  ctx.nm = metrics(g, dec);
  ctx.children = dec.children_lists();
  ctx.use_cutoff = use_cutoff;
  return ctx;
}

namespace {

ImbTable table_skeleton(const ImbContext& ctx, Node t) {
  ImbTable table;
  table.boundary = ctx.nm.boundary[t];
  for (Vertex v : table.boundary) table.adh_v.push_back(ctx.nm.adh_v[t].at(v));
  table.e_t = ctx.nm.adhesion[t];
  return table;
}

struct OrderProfile {
  std::uint64_t extract_id;
  std::int64_t cost;
};

// realized extract and cost of one concrete order of Y_t
OrderProfile profile_order(const ImbContext& ctx, const ImbTable& skel,
                           const std::vector<Vertex>& order) {
  const Graph& g = *ctx.g;
  std::vector<int> pos(g.n(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::int64_t cost = 0;
  Extract e;
  e.tau.resize(skel.boundary.size());
  for (Vertex v : order) {
    std::int64_t bal = 0;
    for (Vertex w : g.neighbors(v))
      if (pos[w] != -1) bal += pos[w] > pos[v] ? 1 : -1;
    cost += std::llabs(bal);
    auto it = std::lower_bound(skel.boundary.begin(), skel.boundary.end(), v);
    if (it != skel.boundary.end() && *it == v) {
      size_t bi = it - skel.boundary.begin();
      e.tau[bi] = saturate(bal, skel.adh_v[bi]);
    }
  }
  for (Vertex v : order)
    if (std::binary_search(skel.boundary.begin(), skel.boundary.end(), v))
      e.order.push_back(v);
  return {encode_extract(skel, e), cost};
}

void assemble_table(const ImbContext& ctx, ImbTable& table,
                    const std::map<std::uint64_t, std::int64_t>& cost) {
  table.a = kInf;
  for (const auto& [id, c] : cost) table.a = std::min(table.a, c);
  for (const auto& [id, c] : cost) {
    if (c >= kInf) continue;
    std::int64_t b = c - table.a;
    if (!ctx.use_cutoff || b <= 4 * table.e_t) table.beta[id] = b;
  }
}

}  // namespace

std::int64_t extract_realized_cost(const ImbContext& ctx, Node t,
                                   const Extract& e) {
  ImbTable skel = table_skeleton(ctx, t);
  const auto& y = ctx.nm.y_set[t];
  if (y.size() > 9)
    throw std::invalid_argument("extract_realized_cost: Y_t too large");
  if (y.empty()) return e.order.empty() ? 0 : kInf;
  std::uint64_t want = encode_extract(skel, e);
  std::int64_t best = kInf;
  for (const auto& order : permutations_of(y)) {
    auto prof = profile_order(ctx, skel, order);
    if (prof.extract_id == want) best = std::min(best, prof.cost);
  }
  return best;
}

ImbTable imb_leaf_table(const ImbContext& ctx, Node t) {
  ImbTable table = table_skeleton(ctx, t);
  const auto& y = ctx.nm.y_set[t];
  if (y.size() > 10)
    throw std::invalid_argument("imb_leaf_table: bag too large");
  std::map<std::uint64_t, std::int64_t> cost;
  if (y.empty()) {
    cost[0] = 0;
  } else {
    for (const auto& order : permutations_of(y)) {
      auto prof = profile_order(ctx, table, order);
      auto it = cost.find(prof.extract_id);
      if (it == cost.end() || prof.cost < it->second)
        cost[prof.extract_id] = prof.cost;
    }
  }
  assemble_table(ctx, table, cost);
  return table;
}

std::int64_t imb_reduced_join(const ImbReducedInstance& inst) {
  const int nx = static_cast<int>(inst.xs.size());
  std::int64_t base = 0;

  // abstract type of a thin child: per boundary position (adh, attachment
  // x-indices) plus the full finite-beta table, canonical over the <= 2
  // boundary orderings
  struct AbstractChild {
    std::vector<int> adh;
    std::vector<std::vector<int>> attach;
    // key: (position sequence rank, tau digits) -> beta
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t> beta;
  };
  struct TypeInfo {
    AbstractChild rep;
    std::int64_t count = 0;
  };
  std::map<std::string, TypeInfo> types;

  auto serialize = [](const AbstractChild& c) {
    std::string s;
    for (size_t i = 0; i < c.adh.size(); ++i) {
      s += "v" + std::to_string(c.adh[i]) + ":";
      for (int x : c.attach[i]) s += std::to_string(x) + ",";
      s += ";";
    }
    for (const auto& [key, val] : c.beta)
      s += std::to_string(key.first) + "." + std::to_string(key.second) + "=" +
           std::to_string(val) + "|";
    return s;
  };

  for (const auto& child : inst.children) {
    base = inf_add(base, child.a);
    const int s = static_cast<int>(child.boundary.size());
    if (s == 0) continue;  // only its base cost matters
    if (s > 2)
      throw std::invalid_argument("imb_reduced_join: child boundary too large");

    ImbTable view;  // decoding helper with the child's real boundary
    view.boundary = child.boundary;
    view.adh_v = child.adh;

    std::vector<std::vector<int>> orderings;
    if (s == 1) orderings = {{0}};
    else orderings = {{0, 1}, {1, 0}};

    AbstractChild best_abs;
    std::string best_sig;
    for (const auto& ord : orderings) {
      // ord[i] = original boundary position placed at abstract position i
      AbstractChild abs;
      for (int i = 0; i < s; ++i) {
        abs.adh.push_back(child.adh[ord[i]]);
        auto at = child.attach[ord[i]];
        std::sort(at.begin(), at.end());
        abs.attach.push_back(at);
      }
      for (const auto& [id, b] : child.beta) {
        Extract e = decode_extract(view, id);
        // abstract position sequence of the extract's order
        std::uint64_t prank = 0;
        {
          std::vector<int> seq;
          for (Vertex v : e.order) {
            int orig = static_cast<int>(
                std::lower_bound(child.boundary.begin(), child.boundary.end(),
                                 v) -
                child.boundary.begin());
            int abspos =
                static_cast<int>(std::find(ord.begin(), ord.end(), orig) -
                                 ord.begin());
            seq.push_back(abspos);
          }
          std::vector<int> rest(s);
          std::iota(rest.begin(), rest.end(), 0);
          for (int p : seq) {
            auto it = std::find(rest.begin(), rest.end(), p);
            prank = prank * rest.size() + (it - rest.begin());
            rest.erase(it);
          }
        }
        std::uint64_t tcode = 0;
        for (int i = 0; i < s; ++i) {
          int orig = ord[i];
          tcode = tcode * tau_digit_count(child.adh[orig]) +
                  digit_from_tau(e.tau[orig], child.adh[orig]);
        }
        abs.beta[{prank, tcode}] = b;
      }
      std::string sig = serialize(abs);
      if (best_sig.empty() || sig < best_sig) {
        best_sig = sig;
        best_abs = abs;
      }
    }
    auto& ti = types[best_sig];
    if (ti.count == 0) ti.rep = best_abs;
    ++ti.count;
  }

  // placements of a type: interval index per abstract position plus an
  // order bit for same-interval pairs; dedupe by (x-balance coefficient
  // vector) keeping the cheapest
  struct Placement {
    std::vector<int> coeff;  // per x
    std::int64_t cost;
  };
  struct TypeVars {
    std::int64_t count;
    std::vector<Placement> placements;
  };
  std::vector<TypeVars> tvars;

  for (const auto& [sig, ti] : types) {
    const AbstractChild& rep = ti.rep;
    const int s = static_cast<int>(rep.adh.size());
    std::map<std::vector<int>, std::int64_t> dedup;
    std::vector<std::vector<int>> intervals;
    if (s == 1) {
      for (int i = 0; i <= nx; ++i) intervals.push_back({i, 0});
    } else {
      for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= nx; ++j)
          for (int bit = 0; bit < (i == j ? 2 : 1); ++bit)
            intervals.push_back({i, j, (i == j) ? bit : (i < j ? 1 : 0)});
      // bit==1 means abstract position 0 comes before position 1
    }
    for (const auto& pl : intervals) {
      // net balance shift per position: an attachment placed after the
      // border vertex raises its balance
      std::vector<std::int64_t> net(s, 0);
      for (int p = 0; p < s; ++p)
        for (int x : rep.attach[p]) net[p] += pl[p] > x ? -1 : 1;
      // minimum beta over extracts consistent with the placement order
      std::int64_t best = kInf;
      for (const auto& [key, b] : rep.beta) {
        if (s == 2) {
          bool pos0_first = key.first == 0;  // rank 0 = sequence (0,1)
          if (pos0_first != (pl[2] == 1)) continue;
        }
        std::uint64_t tcode = key.second;
        std::vector<int> tau(s);
        for (int i = s - 1; i >= 0; --i) {
          std::uint64_t radix = tau_digit_count(rep.adh[i]);
          tau[i] = tau_from_digit(static_cast<int>(tcode % radix), rep.adh[i]);
          tcode /= radix;
        }
        std::int64_t c = b;
        for (int p = 0; p < s; ++p) c += shift_delta(tau[p], net[p]);
        best = std::min(best, c);
      }
      if (best >= kInf) continue;
      std::vector<int> coeff(nx, 0);
      for (int p = 0; p < s; ++p)
        for (int x : rep.attach[p]) coeff[x] += pl[p] > x ? 1 : -1;
      auto it = dedup.find(coeff);
      if (it == dedup.end() || best < it->second) dedup[coeff] = best;
    }
    TypeVars tv;
    tv.count = ti.count;
    for (const auto& [coeff, c] : dedup) tv.placements.push_back({coeff, c});
    if (tv.placements.empty()) return kInf;  // no usable placement at all
    tvars.push_back(std::move(tv));
  }

  if (base >= kInf) return kInf;

  std::int64_t best_total = kInf;
  const std::uint32_t phi_limit = 1u << nx;
  for (std::uint32_t phi = 0; phi < phi_limit; ++phi) {
    IlpInstance ilp;
    std::vector<std::pair<int, int>> var_of;  // (type index, placement index)
    for (size_t ti = 0; ti < tvars.size(); ++ti)
      for (size_t pi = 0; pi < tvars[ti].placements.size(); ++pi) {
        IlpVariable v;
        v.lower = 0;
        v.upper = tvars[ti].count;
        ilp.variables.push_back(v);
        var_of.emplace_back(static_cast<int>(ti), static_cast<int>(pi));
      }
    ilp.objective.assign(ilp.variables.size(), 0);
    std::int64_t constant = 0;
    for (int x = 0; x < nx; ++x) {
      int sign = (phi >> x & 1) ? 1 : -1;
      constant += sign * inst.omega[x];
    }
    for (size_t vi = 0; vi < var_of.size(); ++vi) {
      const auto& p = tvars[var_of[vi].first].placements[var_of[vi].second];
      std::int64_t c = p.cost;
      for (int x = 0; x < nx; ++x) {
        int sign = (phi >> x & 1) ? 1 : -1;
        c += sign * p.coeff[x];
      }
      ilp.objective[vi] = c;
    }
    // partition rows
    {
      size_t idx = 0;
      for (const auto& tv : tvars) {
        IlpConstraint row;
        row.coeffs.assign(ilp.variables.size(), 0);
        for (size_t pi = 0; pi < tv.placements.size(); ++pi)
          row.coeffs[idx + pi] = 1;
        row.rel = Rel::Eq;
        row.rhs = tv.count;
        ilp.constraints.push_back(row);
        idx += tv.placements.size();
      }
    }
    // zeta and sign-consistency rows on balance(x) + omega(x)
    for (int x = 0; x < nx; ++x) {
      auto balance_row = [&]() {
        IlpConstraint row;
        row.coeffs.assign(ilp.variables.size(), 0);
        for (size_t vi = 0; vi < var_of.size(); ++vi)
          row.coeffs[vi] =
              tvars[var_of[vi].first].placements[var_of[vi].second].coeff[x];
        return row;
      };
      if (inst.zeta[x].present) {
        IlpConstraint row = balance_row();
        row.rel = inst.zeta[x].rel;
        row.rhs = inst.zeta[x].rhs - inst.omega[x];
        ilp.constraints.push_back(row);
      }
      IlpConstraint row = balance_row();
      if (phi >> x & 1) {
        row.rel = Rel::GreaterEq;
        row.rhs = -inst.omega[x];
      } else {
        row.rel = Rel::LessEq;
        row.rhs = -inst.omega[x] - 1;
      }
      ilp.constraints.push_back(row);
    }
    auto sol = solve_min(ilp);
    if (!sol) continue;
    best_total = std::min(best_total, sol->value + constant);
  }
  if (best_total >= kInf) return kInf;
  return inf_add(base, best_total);
}

ImbTable imb_join(const ImbContext& ctx, Node t,
                  const std::vector<ImbTable>& tables) {
  const Graph& g = *ctx.g;
  const auto& nm = ctx.nm;
  ChildPartition part = partition_children(g, *ctx.dec, nm, t);
  ImbTable table = table_skeleton(ctx, t);

  const auto& bag = ctx.dec->bags[t];
  std::vector<char> in_bag(g.n(), 0);
  for (Vertex v : bag) in_bag[v] = 1;

  // Z: bag plus the borders of A-children
  std::vector<Vertex> zs = bag;
  for (Node c : part.a_set)
    for (Vertex v : tables[c].boundary) zs.push_back(v);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  if (zs.size() > 9) throw std::invalid_argument("imb_join: Z too large");
  std::vector<char> in_z(g.n(), 0);
  for (Vertex v : zs) in_z[v] = 1;

  // boundary position bookkeeping: every border vertex of t is either in the
  // bag or on the border of exactly one A-child
  std::vector<int> bpos(g.n(), -1);
  for (size_t i = 0; i < table.boundary.size(); ++i)
    bpos[table.boundary[i]] = static_cast<int>(i);
  std::vector<int> x_bd_positions;  // boundary positions sitting in the bag
  for (size_t i = 0; i < table.boundary.size(); ++i)
    if (in_bag[table.boundary[i]]) x_bd_positions.push_back(static_cast<int>(i));
  for (Vertex v : table.boundary)
    if (!in_z[v])
      throw std::logic_error("imb_join: border vertex outside bag and A-borders");

  std::map<std::uint64_t, std::int64_t> cost;

  struct ReducedKey {
    std::vector<Vertex> fx;
    std::vector<std::int64_t> omega;
    std::vector<std::tuple<int, int, std::int64_t>> zeta;  // (x idx, rel, rhs)
    bool operator<(const ReducedKey& o) const {
      return std::tie(fx, omega, zeta) < std::tie(o.fx, o.omega, o.zeta);
    }
  };
  std::map<ReducedKey, std::int64_t> reduced_cache;

  // reduced-instance children are fixed across j
  std::vector<ImbReducedInstance::BChild> b_children_proto;
  for (Node c : part.b_set) {
    ImbReducedInstance::BChild bc;
    bc.boundary = tables[c].boundary;
    bc.adh = tables[c].adh_v;
    bc.a = tables[c].a;
    bc.beta = tables[c].beta;
    b_children_proto.push_back(std::move(bc));
  }

  for (const auto& j : permutations_of(zs)) {
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < j.size(); ++i) pos[j[i]] = static_cast<int>(i);

    std::vector<Vertex> f_x;  // bag order induced by j
    for (Vertex v : j)
      if (in_bag[v]) f_x.push_back(v);
    std::vector<Vertex> f_bd;  // border order induced by j
    for (Vertex v : j)
      if (bpos[v] >= 0) f_bd.push_back(v);

    std::vector<std::int64_t> omega(f_x.size(), 0);
    for (size_t xi = 0; xi < f_x.size(); ++xi)
      for (Vertex w : g.neighbors(f_x[xi]))
        if (in_z[w]) omega[xi] += pos[w] > pos[f_x[xi]] ? 1 : -1;

    // A-side: per child a menu keyed by the tau digits it imposes on the
    // border of t, combined across children by cross product
    std::map<std::vector<int>, std::int64_t> amap;
    amap[std::vector<int>(table.boundary.size(), -1)] = 0;
    bool dead = false;
    for (Node c : part.a_set) {
      const ImbTable& ct = tables[c];
      std::vector<Vertex> induced;
      for (Vertex v : j)
        if (std::binary_search(ct.boundary.begin(), ct.boundary.end(), v))
          induced.push_back(v);
      std::map<std::vector<int>, std::int64_t> menu;
      for (const auto& [id, b] : ct.beta) {
        Extract e = decode_extract(ct, id);
        if (e.order != induced) continue;
        std::int64_t c_cost = inf_add(ct.a, b);
        std::vector<int> digs(table.boundary.size(), -1);
        for (size_t i = 0; i < ct.boundary.size(); ++i) {
          Vertex v = ct.boundary[i];
          std::int64_t net = 0;
          for (Vertex w : g.neighbors(v))
            if (in_z[w] && !nm.in_y(c, w)) net += pos[w] > pos[v] ? 1 : -1;
          c_cost += shift_delta(e.tau[i], net);
          if (bpos[v] >= 0) {
            int adh_t_v = table.adh_v[bpos[v]];
            int top_tau;
            if (e.tau[i] == kTauPosInf)
              top_tau = kTauPosInf;
            else if (e.tau[i] == kTauNegInf)
              top_tau = kTauNegInf;
            else
              top_tau = saturate(e.tau[i] + net, adh_t_v);
            digs[bpos[v]] = digit_from_tau(top_tau, adh_t_v);
          }
        }
        auto it = menu.find(digs);
        if (it == menu.end() || c_cost < it->second) menu[digs] = c_cost;
      }
      if (menu.empty()) {
        dead = true;
        break;
      }
      std::map<std::vector<int>, std::int64_t> next;
      for (const auto& [ad, ac] : amap)
        for (const auto& [md, mc] : menu) {
          std::vector<int> merged = ad;
          for (size_t i = 0; i < merged.size(); ++i)
            if (md[i] >= 0) merged[i] = md[i];
          std::int64_t v = inf_add(ac, mc);
          auto it = next.find(merged);
          if (it == next.end() || v < it->second) next[merged] = v;
        }
      amap = std::move(next);
    }
    if (dead) continue;

    // X-side tau digits: iterate the product of ranges over bag borders
    std::vector<int> xdigits(x_bd_positions.size(), 0);
    for (;;) {
      ReducedKey key;
      key.fx = f_x;
      key.omega = omega;
      std::vector<ImbReducedInstance::ZetaRow> zrows(f_x.size());
      for (size_t q = 0; q < x_bd_positions.size(); ++q) {
        int bi = x_bd_positions[q];
        Vertex v = table.boundary[bi];
        int adh = table.adh_v[bi];
        int tau = tau_from_digit(xdigits[q], adh);
        int xi = static_cast<int>(
            std::find(f_x.begin(), f_x.end(), v) - f_x.begin());
        ImbReducedInstance::ZetaRow row;
        row.present = true;
        if (tau == kTauPosInf) {
          row.rel = Rel::GreaterEq;
          row.rhs = adh + 1;
        } else if (tau == kTauNegInf) {
          row.rel = Rel::LessEq;
          row.rhs = -adh - 1;
        } else {
          row.rel = Rel::Eq;
          row.rhs = tau;
        }
        zrows[xi] = row;
        key.zeta.emplace_back(xi, static_cast<int>(row.rel), row.rhs);
      }

      std::int64_t reduced;
      auto cit = reduced_cache.find(key);
      if (cit != reduced_cache.end()) {
        reduced = cit->second;
      } else {
        ImbReducedInstance inst;
        inst.xs = f_x;
        inst.omega = omega;
        inst.zeta = zrows;
        inst.children = b_children_proto;
        // attachment x-indices follow the f_x order of this call
        for (auto& bc : inst.children) {
          bc.attach.clear();
          for (Vertex v : bc.boundary) {
            std::vector<int> at;
            for (Vertex w : g.neighbors(v)) {
              auto it = std::find(f_x.begin(), f_x.end(), w);
              if (it != f_x.end()) at.push_back(static_cast<int>(it - f_x.begin()));
            }
            std::sort(at.begin(), at.end());
            bc.attach.push_back(at);
          }
        }
        reduced = imb_reduced_join(inst);
        reduced_cache.emplace(key, reduced);
      }

      if (reduced < kInf) {
        for (const auto& [ad, ac] : amap) {
          if (ac >= kInf) continue;
          Extract e;
          e.order = f_bd;
          e.tau.resize(table.boundary.size());
          bool complete = true;
          for (size_t i = 0; i < table.boundary.size(); ++i) {
            int digit = ad[i];
            for (size_t q = 0; q < x_bd_positions.size(); ++q)
              if (x_bd_positions[q] == static_cast<int>(i)) digit = xdigits[q];
            if (digit < 0) {
              complete = false;
              break;
            }
            e.tau[i] = tau_from_digit(digit, table.adh_v[i]);
          }
          if (!complete)
            throw std::logic_error("imb_join: border position unset");
          std::uint64_t id = encode_extract(table, e);
          std::int64_t v = inf_add(reduced, ac);
          auto it = cost.find(id);
          if (it == cost.end() || v < it->second) cost[id] = v;
        }
      }

      // next xdigit assignment
      size_t q = 0;
      while (q < xdigits.size()) {
        int bi = x_bd_positions[q];
        if (++xdigits[q] < tau_digit_count(table.adh_v[bi])) break;
        xdigits[q] = 0;
        ++q;
      }
      if (q == xdigits.size()) break;
    }
  }

  assemble_table(ctx, table, cost);
  return table;
}

ImbResult solve_imb(const Graph& g, const TreeCutDecomposition& dec,
                    std::int64_t budget, bool use_cutoff) {
  auto rep = validate(g, dec);
  if (!rep.ok) throw std::invalid_argument("solve_imb: " + rep.message);
  ImbResult res;
  res.nice_dec = nicify(g, dec);
  ImbContext ctx = make_imb_context(g, res.nice_dec, use_cutoff);
  res.width = ctx.nm.width;

  const int m = res.nice_dec.node_count();
  auto depth = res.nice_dec.depths();
  std::vector<Node> order(m);
  for (Node t = 0; t < m; ++t) order[t] = t;
  std::sort(order.begin(), order.end(),
            [&](Node a, Node b) { return depth[a] > depth[b]; });
  res.tables.resize(m);
  for (Node t : order)
    res.tables[t] = ctx.children[t].empty() ? imb_leaf_table(ctx, t)
                                            : imb_join(ctx, t, res.tables);
  res.optimum = res.tables[res.nice_dec.root].a;
  res.yes = res.optimum <= budget;
  return res;
}

}  // namespace tcw
