#ifndef TCW_IO_HPP
#define TCW_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tcw/decomposition.hpp"
#include "tcw/nice.hpp"
#include "tcw/reductions.hpp"

namespace tcw {

// Parse errors carry the 1-based line number in what().
struct ParseError : std::runtime_error {
  explicit ParseError(int line, const std::string& what);
  int line;
};

// graph: "p graph <n> <m>" header, "e <u> <v>" edges, "c" comments
Graph parse_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

// capacities: "v <id> <cap>" lines; unlisted vertices default to 0
std::vector<std::int64_t> parse_capacities(std::istream& in, int n);
void write_capacities(std::ostream& out,
                      const std::vector<std::int64_t>& caps);

// decomposition: "t <#nodes> <root>", "n <node> <parent>",
// "b <node> <v1> <v2> ..." (empty bags omitted)
TreeCutDecomposition parse_decomposition(std::istream& in);
void write_decomposition(std::ostream& out, const TreeCutDecomposition& dec);

// tree decomposition export: "s td <#bags> <maxbag> <n>", "b <id> <v...>",
// then one "<u> <v>" line per tree edge (1-based ids)
void write_tree_decomposition(std::ostream& out, const Graph& g,
                              const TreeDecomposition& td);

// list coloring: "p listcol <n> <m>", edges, "l <v> <c...>" lists
ListColoringInstance parse_list_coloring(std::istream& in);
void write_list_coloring(std::ostream& out, const ListColoringInstance& lc);

// precoloring: "p precol <n> <m>", "q <c...>" palette, edges,
// "l <v> <c...>" lists
PrecoloringInstance parse_precoloring(std::istream& in);
void write_precoloring(std::ostream& out, const PrecoloringInstance& pc);

// csp: "p csp <#vars> <#constraints>", "d <values...>" domain,
// "s <ci> <vars...>" scopes, "r <ci> <tuple values...>" allowed tuples
CspInstance parse_csp(std::istream& in);
void write_csp(std::ostream& out, const CspInstance& csp);

}  // namespace tcw

#endif
