#ifndef TCW_REDUCTIONS_HPP
#define TCW_REDUCTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tcw/decomposition.hpp"

namespace tcw {

// k-partite graph with parts of equal size n; vertex (i,a) has the global
// id i*n + a; edges only between distinct parts.
struct MccInstance {
  int k = 0;
  int n = 0;
  Graph graph;

  int part_of(Vertex v) const { return v / n; }
  bool has_clique() const;  // exhaustive multicolored-clique check
};

struct ListColoringInstance {
  Graph graph;
  std::vector<std::vector<int>> lists;  // permitted colors per vertex
};

// lists restricted to a single color or the whole palette
struct PrecoloringInstance {
  Graph graph;
  std::vector<int> palette;             // all colors
  std::vector<std::vector<int>> lists;  // singleton or full palette
};

struct CspConstraint {
  std::vector<int> scope;                  // distinct variable indices
  std::vector<std::vector<int>> tuples;    // allowed assignments
};

struct CspInstance {
  int num_vars = 0;
  std::vector<int> domain;
  std::vector<CspConstraint> constraints;
};

struct ListColoringReduction {
  ListColoringInstance instance;
  TreeCutDecomposition dec;
};

struct PrecoloringReduction {
  PrecoloringInstance instance;
  TreeCutDecomposition dec;
};

struct CspReduction {
  CspInstance instance;
  Graph incidence;  // the decomposition below is of this graph
  TreeCutDecomposition dec;
};

ListColoringReduction mcc_to_list_coloring(const MccInstance& m);
PrecoloringReduction list_to_precoloring(const ListColoringInstance& lc,
                                         const TreeCutDecomposition& dec);
CspReduction mcc_to_boolean_csp(const MccInstance& m);

Graph gen_star_of_stars(int n);
Graph gen_ternary_tree(int depth);

// Hand-built tree-cut decomposition of gen_star_of_stars(n) of the least
// possible width (n for n <= 2, n+1 beyond).
TreeCutDecomposition star_of_stars_decomposition(int n);

// Exact satisfiability by backtracking over assignments. node_guard caps the
// explored assignment prefixes.
bool brute_list_coloring(const ListColoringInstance& lc,
                         std::int64_t node_guard = 100000000);
bool brute_precoloring(const PrecoloringInstance& pc,
                       std::int64_t node_guard = 100000000);
bool brute_csp(const CspInstance& csp, std::int64_t node_guard = 100000000);

}  // namespace tcw

#endif
