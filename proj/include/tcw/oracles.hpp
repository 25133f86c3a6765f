#ifndef TCW_ORACLES_HPP
#define TCW_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "tcw/cvc.hpp"
#include "tcw/decomposition.hpp"

namespace tcw {

// Minimum capacitated vertex cover C subseteq allowed, kInf when none.
std::int64_t cvc_brute(const CapacitatedGraph& cg,
                       const std::vector<Vertex>& allowed);

// Minimum capacitated dominating set, kInf when none.
std::int64_t cds_brute(const CapacitatedGraph& cg);

// Minimum imbalance over all vertex orders.
std::int64_t imb_brute(const Graph& g);

// Classical minimum vertex cover (independent search, no flow machinery).
std::int64_t vertex_cover_brute(const Graph& g);

// Exact tree-cut width by exhaustive search over decompositions, memoized
// over vertex subsets. `upper` caps the search.
int tcw_exact(const Graph& g, int upper);

}  // namespace tcw

#endif
