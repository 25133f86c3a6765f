#include "tcw/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tcw/cds.hpp"
#include "tcw/imbalance.hpp"

namespace tcw {

std::int64_t cvc_brute(const CapacitatedGraph& cg,
                       const std::vector<Vertex>& allowed) {
  if (allowed.size() > 20) throw std::invalid_argument("cvc_brute: too large");
  return min_capacitated_cover(cg.graph.n(), cg.graph.edges(), cg.capacity,
                               allowed);
}

std::int64_t cds_brute(const CapacitatedGraph& cg) {
  const int n = cg.graph.n();
  if (n > 20) throw std::invalid_argument("cds_brute: too large");
  std::int64_t best = kInf;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    std::vector<Vertex> d;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) d.push_back(v);
    if (cds_witness_feasible(cg, d)) best = size;
  }
  return best;
}

std::int64_t imb_brute(const Graph& g) {
  if (g.n() > 9) throw std::invalid_argument("imb_brute: too large");
  std::vector<Vertex> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  std::int64_t best = g.n() == 0 ? 0 : kInf;
  do {
    best = std::min(best, imbalance_of_order(g, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return g.n() == 0 ? 0 : best;
}

std::int64_t vertex_cover_brute(const Graph& g) {
  const int n = g.n();
  if (n > 20) throw std::invalid_argument("vertex_cover_brute: too large");
  std::int64_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool ok = true;
    for (const auto& [u, v] : g.edges())
      if (!(mask >> u & 1) && !(mask >> v & 1)) {
        ok = false;
        break;
      }
    if (ok) best = size;
  }
  return best;
}

namespace {

struct TcwSearch {
  const Graph& g;
  int n;
  int w;  // candidate width
  std::vector<std::vector<char>> adj;
  std::map<std::uint32_t, char> memo;  // subset -> subtree of width <= w?

  explicit TcwSearch(const Graph& graph, int width)
      : g(graph), n(graph.n()), w(width) {
    adj.assign(n, std::vector<char>(n, 0));
    for (const auto& [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  }

  int cut_size(std::uint32_t s) const {
    int c = 0;
    for (const auto& [u, v] : g.edges())
      if (((s >> u) & 1) != ((s >> v) & 1)) ++c;
    return c;
  }

  // torso-size check at a node with bag `bag`, child vertex sets `parts`,
  // inside set `s` (the outside V - s forms one more consolidated block)
  bool torso_ok(std::uint32_t s, std::uint32_t bag,
                const std::vector<std::uint32_t>& parts) const {
    MultiGraph h;
    std::set<Vertex> protect;
    std::vector<int> where(n, -1);
    for (int v = 0; v < n; ++v) {
      if (bag >> v & 1) {
        where[v] = v;
        h.add_vertex(v);
        protect.insert(v);
      }
    }
    int next = n;
    for (std::uint32_t p : parts) {
      h.add_vertex(next);
      for (int v = 0; v < n; ++v)
        if (p >> v & 1) where[v] = next;
      ++next;
    }
    std::uint32_t outside = ~s & ((n == 32 ? ~0u : (1u << n) - 1));
    if (outside) {
      h.add_vertex(next);
      for (int v = 0; v < n; ++v)
        if (outside >> v & 1) where[v] = next;
    }
    for (const auto& [u, v] : g.edges()) {
      if (where[u] == where[v] && where[u] >= n) continue;
      h.add_edge(where[u], where[v]);
    }
    return three_center(h, protect).vertex_count() <= w;
  }

  // can the vertex set s be covered by a rooted subtree whose own adhesion
  // the caller has already checked?
  bool can(std::uint32_t s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    memo.emplace(s, 0);  // cycle guard; overwritten below
    bool ok = try_node(s);
    memo[s] = ok ? 1 : 0;
    return ok;
  }

  // choose the bag at the subtree root and partition the rest into children
  bool try_node(std::uint32_t s) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) members.push_back(v);
    // iterate bags as sub-masks of s (including empty and full)
    std::uint32_t bag = s;
    for (;;) {
      if (static_cast<int>(__builtin_popcount(bag)) <= w) {
        std::uint32_t rest = s & ~bag;
        if (partition_rest(s, bag, rest, 0, {})) return true;
      }
      if (bag == 0) break;
      bag = (bag - 1) & s;
    }
    return false;
  }

  bool partition_rest(std::uint32_t s, std::uint32_t bag, std::uint32_t rest,
                      int kids, std::vector<std::uint32_t> parts) {
    if (rest == 0) {
      if (bag == 0 && kids == 1 && s != full_mask())
        return false;  // empty single-child nodes are never needed
      return torso_ok(s, bag, parts);
    }
    // the part containing the lowest remaining vertex: iterate its submasks
    int low = __builtin_ctz(rest);
    std::uint32_t others = rest & ~(1u << low);
    std::uint32_t sub = others;
    for (;;) {
      std::uint32_t part = sub | (1u << low);
      if (cut_size(part) <= w && can(part)) {
        parts.push_back(part);
        if (partition_rest(s, bag, rest & ~part, kids + 1, parts)) return true;
        parts.pop_back();
      }
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
    return false;
  }

  std::uint32_t full_mask() const {
    return n == 32 ? ~0u : (1u << n) - 1;
  }

  bool feasible() {
    if (n == 0) return true;
    return try_node(full_mask());
  }
};

}  // namespace

int tcw_exact(const Graph& g, int upper) {
  if (g.n() > 13) throw std::invalid_argument("tcw_exact: too large");
  if (g.n() == 0) return 0;
  for (int w = 1; w <= upper; ++w) {
    TcwSearch s(g, w);
    if (s.feasible()) return w;
  }
  return upper + 1;
}

}  // namespace tcw
