#ifndef TCW_NICE_HPP
#define TCW_NICE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "tcw/decomposition.hpp"

namespace tcw {

// A node t is thin when adh(t) <= 2. The decomposition is nice when no thin
// node's subtree vertices have neighbors inside a sibling's subtree.
bool is_nice(const Graph& g, const TreeCutDecomposition& dec);

// Bad nodes violate the niceness condition; bad neighbors are the candidate
// new parents (siblings or their descendants whose bag touches N(Y_t)).
std::vector<Node> bad_nodes(const Graph& g, const TreeCutDecomposition& dec);
std::vector<Node> bad_neighbors(const Graph& g,
                                const TreeCutDecomposition& dec, Node t);

struct RerouteAudit {
  int steps = 0;
  // pairs (bad node, chosen parent) eliminated so far; a pair must never
  // show up as a live bad pair again once eliminated
  std::vector<std::pair<Node, Node>> eliminated;
  bool reappearance = false;
};

// Reparent the bad node t under its deepest bad neighbor (ties by lowest id).
TreeCutDecomposition reroute(const Graph& g, const TreeCutDecomposition& dec,
                             Node t);

// Repeatedly reroute a minimum-depth bad node until nice.
TreeCutDecomposition top_down_reroute(const Graph& g,
                                      const TreeCutDecomposition& dec,
                                      RerouteAudit* audit = nullptr);

// Drop empty leaves and splice out empty single-child nodes; node ids are
// renumbered compactly. Keeps at least the root.
TreeCutDecomposition contract_empty(const TreeCutDecomposition& dec);

struct NicifyStats {
  int reroute_steps = 0;
  int input_nodes = 0;
  int output_nodes = 0;
};

TreeCutDecomposition nicify(const Graph& g, const TreeCutDecomposition& dec,
                            NicifyStats* stats = nullptr,
                            RerouteAudit* audit = nullptr);

struct ChildPartition {
  std::vector<Node> a_set;
  std::vector<Node> b_set;
};

// B_t: thin children whose outside neighborhood lies entirely in X_t.
// Requires a nice decomposition; |A_t| <= 2k+1 is checked against width k.
ChildPartition partition_children(const Graph& g,
                                  const TreeCutDecomposition& dec,
                                  const NodeMetrics& nm, Node t);

struct TreeDecomposition {
  Node root = 0;
  std::vector<Node> parent;
  std::vector<std::vector<Vertex>> bags;

  int node_count() const { return static_cast<int>(parent.size()); }
  int width() const;  // max bag size - 1
};

// Standard axioms: connected occurrence per vertex, every edge covered.
ValidationReport validate_tree_decomposition(const Graph& g,
                                             const TreeDecomposition& td);

// Export of a nice tree-cut decomposition of width k into a tree
// decomposition with bags of at most 2k^2+3k vertices.
TreeDecomposition to_tree_decomposition(const Graph& g,
                                        const TreeCutDecomposition& dec);

}  // namespace tcw

#endif
