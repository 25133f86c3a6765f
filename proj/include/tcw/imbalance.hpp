#ifndef TCW_IMBALANCE_HPP
#define TCW_IMBALANCE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "tcw/cvc.hpp"  // kInf / inf_add
#include "tcw/decomposition.hpp"
#include "tcw/ilp.hpp"
#include "tcw/nice.hpp"

namespace tcw {

// Sentinels for saturated extract targets.
constexpr int kTauNegInf = -(1 << 28);
constexpr int kTauPosInf = +(1 << 28);

std::int64_t imbalance_of_order(const Graph& g,
                                const std::vector<Vertex>& order);

// Extract of a node: a linear order of its border vertices plus a signed
// balance target per border vertex (exact value or saturated +-inf).
struct Extract {
  std::vector<Vertex> order;  // permutation of the sorted border list
  std::vector<int> tau;       // indexed by position in the SORTED border list
};

// Sparse per-node record: absent extract ids mean infinity. Extract ids
// combine the permutation rank of `order` with a mixed-radix tau code.
struct ImbTable {
  std::vector<Vertex> boundary;  // sorted
  std::vector<int> adh_v;        // per boundary vertex
  std::int64_t a = 0;
  std::map<std::uint64_t, std::int64_t> beta;  // finite entries only
  std::int64_t e_t = 0;                        // edges leaving Y_t
};

std::uint64_t encode_extract(const ImbTable& table, const Extract& e);
Extract decode_extract(const ImbTable& table, std::uint64_t id);
std::uint64_t extract_space_size(const std::vector<int>& adh_v);

struct ImbContext {
  const Graph* g = nullptr;
  const TreeCutDecomposition* dec = nullptr;
  NodeMetrics nm;
  std::vector<std::vector<Node>> children;
  bool use_cutoff = true;
};

ImbContext make_imb_context(const Graph& g, const TreeCutDecomposition& dec,
                            bool use_cutoff = true);

// Exhaustive minimum cost of an order of Y_t realizing the extract; used at
// leaves and in tests.
std::int64_t extract_realized_cost(const ImbContext& ctx, Node t,
                                   const Extract& e);

ImbTable imb_leaf_table(const ImbContext& ctx, Node t);

ImbTable imb_join(const ImbContext& ctx, Node t,
                  const std::vector<ImbTable>& tables);

// Reduced instance: edgeless bag in a fixed order, per-vertex balance shifts
// omega, optional balance constraints zeta, thin children attached to bag
// vertices only.
struct ImbReducedInstance {
  struct ZetaRow {
    bool present = false;
    Rel rel = Rel::Eq;
    std::int64_t rhs = 0;
  };

  std::vector<Vertex> xs;  // in required order f
  std::vector<std::int64_t> omega;
  std::vector<ZetaRow> zeta;

  struct BChild {
    std::vector<Vertex> boundary;           // sorted, size 0..2
    std::vector<int> adh;                   // per boundary vertex
    std::vector<std::vector<int>> attach;   // per boundary vertex: x indices
    std::int64_t a = 0;
    std::map<std::uint64_t, std::int64_t> beta;
  };
  std::vector<BChild> children;
};

std::int64_t imb_reduced_join(const ImbReducedInstance& inst);

struct ImbResult {
  bool yes = false;
  std::int64_t optimum = kInf;
  TreeCutDecomposition nice_dec;
  std::vector<ImbTable> tables;
  int width = 0;
};

ImbResult solve_imb(const Graph& g, const TreeCutDecomposition& dec,
                    std::int64_t budget, bool use_cutoff = true);

}  // namespace tcw

#endif
