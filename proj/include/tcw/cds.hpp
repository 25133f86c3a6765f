#ifndef TCW_CDS_HPP
#define TCW_CDS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "tcw/cvc.hpp"  // kInf / inf_add
#include "tcw/decomposition.hpp"
#include "tcw/nice.hpp"

namespace tcw {

// True iff every vertex outside D can be assigned to a D-neighbor with each
// v in D receiving at most c(v) assignees (max-flow check).
bool cds_witness_feasible(const CapacitatedGraph& cg,
                          const std::vector<Vertex>& dom_set);

// Partial-solution summary at the border of Y_t. Border vertices are either
// active (in the dominating set or dominated from within Y_t; offset =
// capacity reserved for outside neighbors) or passive (dominated from
// outside Y_t, hence exempt inside the subproblem).
struct Snapshot {
  std::vector<char> active;  // per sorted border position
  std::vector<int> offset;   // per position; meaningful when active
};

// Sparse record: a = cost of the all-passive snapshot; beta entries only for
// snapshots with a defined cost (absent = bottom).
struct CdsTable {
  std::vector<Vertex> boundary;  // sorted
  std::vector<int> adh_v;
  std::int64_t a = 0;
  std::map<std::uint64_t, std::int64_t> beta;
};

std::uint64_t encode_snapshot(const CdsTable& table, const Snapshot& s);
Snapshot decode_snapshot(const CdsTable& table, std::uint64_t id);
std::uint64_t snapshot_space_size(const std::vector<int>& adh_v);

struct CdsContext {
  const CapacitatedGraph* cg = nullptr;
  const TreeCutDecomposition* dec = nullptr;
  NodeMetrics nm;
  std::vector<std::vector<Node>> children;
};

CdsContext make_cds_context(const CapacitatedGraph& cg,
                            const TreeCutDecomposition& dec);

// Exhaustive cost of one snapshot (leaves and tests). With explicit_gadget
// the offsets are realized as capacity-0 pendant vertices instead of
// capacity debits; both encodings must agree.
std::int64_t cds_snapshot_cost(const CdsContext& ctx, Node t,
                               const Snapshot& s, bool explicit_gadget = false);

CdsTable cds_leaf_table(const CdsContext& ctx, Node t);

CdsTable cds_join(const CdsContext& ctx, Node t,
                  const std::vector<CdsTable>& tables);

// Reduced instance: edgeless bag, no A-children. S = bag vertices chosen
// into the dominating set (capacities already debited), need = bag vertices
// that must be dominated from below.
struct CdsReducedInstance {
  int bag_size = 0;
  std::vector<char> in_s;             // per bag index
  std::vector<std::int64_t> caps;     // per bag index, S entries meaningful
  std::vector<int> need;              // bag indices needing a child dominator
  struct BChild {
    std::vector<int> adh;                  // per border position
    std::vector<std::vector<int>> attach;  // per border position: bag indices
    std::int64_t a = 0;
    std::map<std::uint64_t, std::int64_t> beta;
  };
  std::vector<BChild> children;
};

// Minimum number of dominating vertices below the bag (children side), kInf
// when the demands cannot be met.
std::int64_t cds_reduced_min(const CdsReducedInstance& inst);

// Decision wrapper: is there a capacitated dominating set honoring S and the
// pendant exclusions of total size at most budget.
bool cds_reduced_join(const CdsReducedInstance& inst, std::int64_t budget);

struct CdsResult {
  bool yes = false;
  std::int64_t optimum = kInf;
  TreeCutDecomposition nice_dec;
  std::vector<CdsTable> tables;
  int width = 0;
};

CdsResult solve_cds(const CapacitatedGraph& cg,
                    const TreeCutDecomposition& dec, std::int64_t budget);

}  // namespace tcw

#endif
