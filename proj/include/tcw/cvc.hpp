#ifndef TCW_CVC_HPP
#define TCW_CVC_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "tcw/decomposition.hpp"
#include "tcw/nice.hpp"

namespace tcw {

// Shared "no solution" sentinel for solver costs.
constexpr std::int64_t kInf = std::int64_t(1) << 60;

inline std::int64_t inf_add(std::int64_t a, std::int64_t b) {
  return (a >= kInf || b >= kInf) ? kInf : a + b;
}

// True iff the edges of cg can be mapped to endpoints inside C without
// exceeding capacities (max-flow check).
bool cvc_witness_feasible(const CapacitatedGraph& cg,
                          const std::vector<Vertex>& cover);

// Minimum cardinality cover C subseteq allowed for an explicit edge list;
// kInf when none exists. Exhaustive over subsets of `allowed`.
std::int64_t min_capacitated_cover(int n, const std::vector<Edge>& edges,
                                   const std::vector<std::int64_t>& caps,
                                   const std::vector<Vertex>& allowed);

// Per-node record: a = cvc(G[Y_t], Y_t); beta indexed by subsets of the
// canonical boundary-edge list k_edges (bit i = k_edges[i] present).
struct CvcTable {
  std::vector<Edge> k_edges;
  std::int64_t a = 0;
  std::vector<std::int64_t> beta;
};

struct CvcContext {
  const CapacitatedGraph* cg = nullptr;
  const TreeCutDecomposition* dec = nullptr;
  NodeMetrics nm;
  std::vector<std::vector<Node>> children;
};

CvcContext make_cvc_context(const CapacitatedGraph& cg,
                            const TreeCutDecomposition& dec);

CvcTable cvc_leaf_table(const CvcContext& ctx, Node t);

CvcTable cvc_join(const CvcContext& ctx, Node t,
                  const std::vector<CvcTable>& tables);

// Reduced instance: adhesion 0, edgeless bag, thin children attached to bag
// vertices only. Pendant gadget children encode forced cover membership.
struct CvcReducedChild {
  std::vector<int> attach;          // per boundary edge: index into xs
  std::vector<std::int64_t> beta;   // 1 << attach.size() entries
  std::int64_t a = 0;
};

struct CvcReducedInstance {
  std::vector<std::int64_t> caps;   // per bag vertex (already debited)
  std::vector<CvcReducedChild> children;
  int width = 1;
};

std::int64_t cvc_reduced_join(const CvcReducedInstance& inst);

struct CvcResult {
  bool yes = false;
  std::int64_t optimum = kInf;      // a_r of the nicified decomposition
  TreeCutDecomposition nice_dec;
  std::vector<CvcTable> tables;     // per node of nice_dec
  int width = 0;
};

CvcResult solve_cvc(const CapacitatedGraph& cg,
                    const TreeCutDecomposition& dec, std::int64_t budget);

}  // namespace tcw

#endif
