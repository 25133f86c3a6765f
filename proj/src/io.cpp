#include "tcw/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tcw {

ParseError::ParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
      line(line_no) {}

namespace {

// tokenized input lines, comments ('c', '#') and blanks skipped
struct Entry {
  int no = 0;
  std::vector<std::string> tok;

  const std::string& tag() const { return tok[0]; }
  int arity() const { return static_cast<int>(tok.size()) - 1; }

  long long num(int i) const {
    const std::string& s = tok[i + 1];
    try {
      size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (...) {
      throw ParseError(no, "expected a number, got '" + s + "'");
    }
  }
};

std::vector<Entry> tokenize(std::istream& in) {
  std::vector<Entry> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::istringstream ls(line);
    Entry e;
    e.no = no;
    std::string t;
    while (ls >> t) e.tok.push_back(t);
    if (e.tok.empty() || e.tag() == "c" || e.tag()[0] == '#') continue;
    out.push_back(std::move(e));
  }
  return out;
}

// "p <kind> <a> <b>" header returning (a, b)
std::pair<long long, long long> expect_header(const Entry& e,
                                              const std::string& kind) {
  if (e.arity() != 3 || e.tok[1] != kind)
    throw ParseError(e.no, "expected 'p " + kind + " <a> <b>'");
  return {e.num(1), e.num(2)};
}

}  // namespace

Graph parse_graph(std::istream& in) {
  auto entries = tokenize(in);
  bool header = false;
  long long m = 0, seen = 0;
  Graph g;
  for (const auto& e : entries) {
    if (e.tag() == "p") {
      if (header) throw ParseError(e.no, "duplicate header");
      auto [n_, m_] = expect_header(e, "graph");
      if (n_ < 0) throw ParseError(e.no, "negative vertex count");
      g = Graph(static_cast<int>(n_));
      m = m_;
      header = true;
    } else if (e.tag() == "e") {
      if (!header) throw ParseError(e.no, "edge before header");
      if (e.arity() != 2) throw ParseError(e.no, "edge needs 2 endpoints");
      try {
        g.add_edge(static_cast<int>(e.num(0)), static_cast<int>(e.num(1)));
      } catch (const std::invalid_argument& ex) {
        throw ParseError(e.no, ex.what());
      }
      ++seen;
    } else {
      throw ParseError(e.no, "unknown line tag '" + e.tag() + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p graph' header");
  if (seen != m) throw ParseError(0, "edge count mismatch");
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p graph " << g.n() << " " << g.m() << "\n";
  for (const auto& [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

std::vector<std::int64_t> parse_capacities(std::istream& in, int n) {
  auto entries = tokenize(in);
  std::vector<std::int64_t> caps(n, 0);
  for (const auto& e : entries) {
    if (e.tag() != "v" || e.arity() != 2)
      throw ParseError(e.no, "expected 'v <id> <cap>'");
    long long v = e.num(0), c = e.num(1);
    if (v < 0 || v >= n) throw ParseError(e.no, "vertex id out of range");
    if (c < 0) throw ParseError(e.no, "negative capacity");
    caps[v] = c;
  }
  return caps;
}

void write_capacities(std::ostream& out,
                      const std::vector<std::int64_t>& caps) {
  for (size_t v = 0; v < caps.size(); ++v)
    out << "v " << v << " " << caps[v] << "\n";
}

TreeCutDecomposition parse_decomposition(std::istream& in) {
  auto entries = tokenize(in);
  TreeCutDecomposition dec;
  bool header = false;
  for (const auto& e : entries) {
    if (e.tag() == "t") {
      if (header) throw ParseError(e.no, "duplicate header");
      if (e.arity() != 2)
        throw ParseError(e.no, "expected 't <#nodes> <root>'");
      long long cnt = e.num(0);
      if (cnt <= 0) throw ParseError(e.no, "node count must be positive");
      dec.parent.assign(cnt, -1);
      dec.bags.resize(cnt);
      dec.root = static_cast<int>(e.num(1));
      if (dec.root < 0 || dec.root >= dec.node_count())
        throw ParseError(e.no, "root out of range");
      dec.parent[dec.root] = dec.root;
      header = true;
    } else if (e.tag() == "n") {
      if (!header) throw ParseError(e.no, "node line before header");
      if (e.arity() != 2) throw ParseError(e.no, "expected 'n <node> <parent>'");
      Node t = static_cast<int>(e.num(0));
      Node p = static_cast<int>(e.num(1));
      if (t < 0 || t >= dec.node_count() || p < 0 || p >= dec.node_count())
        throw ParseError(e.no, "node id out of range");
      if (t != dec.root) dec.parent[t] = p;
    } else if (e.tag() == "b") {
      if (!header) throw ParseError(e.no, "bag line before header");
      if (e.arity() < 1) throw ParseError(e.no, "bag line needs a node id");
      Node t = static_cast<int>(e.num(0));
      if (t < 0 || t >= dec.node_count())
        throw ParseError(e.no, "node id out of range");
      for (int i = 1; i < e.arity(); ++i)
        dec.bags[t].push_back(static_cast<int>(e.num(i)));
      std::sort(dec.bags[t].begin(), dec.bags[t].end());
    } else {
      throw ParseError(e.no, "unknown line tag '" + e.tag() + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 't' header");
  for (Node t = 0; t < dec.node_count(); ++t)
    if (dec.parent[t] == -1)
      throw ParseError(0, "node " + std::to_string(t) + " has no parent line");
  return dec;
}

void write_decomposition(std::ostream& out, const TreeCutDecomposition& dec) {
  out << "t " << dec.node_count() << " " << dec.root << "\n";
  for (Node t = 0; t < dec.node_count(); ++t)
    if (t != dec.root) out << "n " << t << " " << dec.parent[t] << "\n";
  for (Node t = 0; t < dec.node_count(); ++t) {
    if (dec.bags[t].empty()) continue;
    out << "b " << t;
    for (Vertex v : dec.bags[t]) out << " " << v;
    out << "\n";
  }
}

void write_tree_decomposition(std::ostream& out, const Graph& g,
                              const TreeDecomposition& td) {
  int maxbag = 0;
  for (const auto& bag : td.bags)
    maxbag = std::max(maxbag, static_cast<int>(bag.size()));
  out << "s td " << td.node_count() << " " << maxbag << " " << g.n() << "\n";
  for (Node t = 0; t < td.node_count(); ++t) {
    out << "b " << t + 1;
    for (Vertex v : td.bags[t]) out << " " << v + 1;
    out << "\n";
  }
  for (Node t = 0; t < td.node_count(); ++t)
    if (t != td.root) out << td.parent[t] + 1 << " " << t + 1 << "\n";
}

ListColoringInstance parse_list_coloring(std::istream& in) {
  auto entries = tokenize(in);
  ListColoringInstance lc;
  bool header = false;
  for (const auto& e : entries) {
    if (e.tag() == "p") {
      if (header) throw ParseError(e.no, "duplicate header");
      auto [n_, m_] = expect_header(e, "listcol");
      (void)m_;
      lc.graph = Graph(static_cast<int>(n_));
      lc.lists.resize(n_);
      header = true;
    } else if (e.tag() == "e") {
      if (!header) throw ParseError(e.no, "edge before header");
      if (e.arity() != 2) throw ParseError(e.no, "edge needs 2 endpoints");
      lc.graph.add_edge(static_cast<int>(e.num(0)),
                        static_cast<int>(e.num(1)));
    } else if (e.tag() == "l") {
      if (!header) throw ParseError(e.no, "list before header");
      if (e.arity() < 1) throw ParseError(e.no, "list line needs a vertex");
      Vertex v = static_cast<int>(e.num(0));
      if (v < 0 || v >= lc.graph.n())
        throw ParseError(e.no, "vertex id out of range");
      for (int i = 1; i < e.arity(); ++i)
        lc.lists[v].push_back(static_cast<int>(e.num(i)));
    } else {
      throw ParseError(e.no, "unknown line tag '" + e.tag() + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p listcol' header");
  return lc;
}

void write_list_coloring(std::ostream& out, const ListColoringInstance& lc) {
  out << "p listcol " << lc.graph.n() << " " << lc.graph.m() << "\n";
  for (const auto& [u, v] : lc.graph.edges())
    out << "e " << u << " " << v << "\n";
  for (Vertex v = 0; v < lc.graph.n(); ++v) {
    out << "l " << v;
    for (int c : lc.lists[v]) out << " " << c;
    out << "\n";
  }
}

PrecoloringInstance parse_precoloring(std::istream& in) {
  auto entries = tokenize(in);
  PrecoloringInstance pc;
  bool header = false;
  for (const auto& e : entries) {
    if (e.tag() == "p") {
      if (header) throw ParseError(e.no, "duplicate header");
      auto [n_, m_] = expect_header(e, "precol");
      (void)m_;
      pc.graph = Graph(static_cast<int>(n_));
      pc.lists.resize(n_);
      header = true;
    } else if (e.tag() == "q") {
      for (int i = 0; i < e.arity(); ++i)
        pc.palette.push_back(static_cast<int>(e.num(i)));
    } else if (e.tag() == "e") {
      if (!header) throw ParseError(e.no, "edge before header");
      pc.graph.add_edge(static_cast<int>(e.num(0)),
                        static_cast<int>(e.num(1)));
    } else if (e.tag() == "l") {
      if (!header) throw ParseError(e.no, "list before header");
      Vertex v = static_cast<int>(e.num(0));
      if (v < 0 || v >= pc.graph.n())
        throw ParseError(e.no, "vertex id out of range");
      for (int i = 1; i < e.arity(); ++i)
        pc.lists[v].push_back(static_cast<int>(e.num(i)));
    } else {
      throw ParseError(e.no, "unknown line tag '" + e.tag() + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p precol' header");
  return pc;
}

void write_precoloring(std::ostream& out, const PrecoloringInstance& pc) {
  out << "p precol " << pc.graph.n() << " " << pc.graph.m() << "\n";
  out << "q";
  for (int c : pc.palette) out << " " << c;
  out << "\n";
  for (const auto& [u, v] : pc.graph.edges())
    out << "e " << u << " " << v << "\n";
  for (Vertex v = 0; v < pc.graph.n(); ++v) {
    out << "l " << v;
    for (int c : pc.lists[v]) out << " " << c;
    out << "\n";
  }
}

CspInstance parse_csp(std::istream& in) {
  auto entries = tokenize(in);
  CspInstance csp;
  bool header = false;
  for (const auto& e : entries) {
    if (e.tag() == "p") {
      if (header) throw ParseError(e.no, "duplicate header");
      auto [nv, nc] = expect_header(e, "csp");
      csp.num_vars = static_cast<int>(nv);
      csp.constraints.resize(nc);
      header = true;
    } else if (e.tag() == "d") {
      for (int i = 0; i < e.arity(); ++i)
        csp.domain.push_back(static_cast<int>(e.num(i)));
    } else if (e.tag() == "s") {
      if (!header) throw ParseError(e.no, "scope before header");
      if (e.arity() < 1) throw ParseError(e.no, "scope needs an id");
      size_t ci = static_cast<size_t>(e.num(0));
      if (ci >= csp.constraints.size())
        throw ParseError(e.no, "constraint id out of range");
      for (int i = 1; i < e.arity(); ++i) {
        int x = static_cast<int>(e.num(i));
        if (x < 0 || x >= csp.num_vars)
          throw ParseError(e.no, "variable id out of range");
        csp.constraints[ci].scope.push_back(x);
      }
    } else if (e.tag() == "r") {
      if (!header) throw ParseError(e.no, "tuple before header");
      if (e.arity() < 1) throw ParseError(e.no, "tuple needs an id");
      size_t ci = static_cast<size_t>(e.num(0));
      if (ci >= csp.constraints.size())
        throw ParseError(e.no, "constraint id out of range");
      if (static_cast<size_t>(e.arity()) - 1 !=
          csp.constraints[ci].scope.size())
        throw ParseError(e.no, "tuple arity mismatch");
      std::vector<int> tuple;
      for (int i = 1; i < e.arity(); ++i)
        tuple.push_back(static_cast<int>(e.num(i)));
      csp.constraints[ci].tuples.push_back(tuple);
    } else {
      throw ParseError(e.no, "unknown line tag '" + e.tag() + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p csp' header");
  return csp;
}

void write_csp(std::ostream& out, const CspInstance& csp) {
  out << "p csp " << csp.num_vars << " " << csp.constraints.size() << "\n";
  out << "d";
  for (int x : csp.domain) out << " " << x;
  out << "\n";
  for (size_t ci = 0; ci < csp.constraints.size(); ++ci) {
    out << "s " << ci;
    for (int x : csp.constraints[ci].scope) out << " " << x;
    out << "\n";
    for (const auto& tuple : csp.constraints[ci].tuples) {
      out << "r " << ci;
      for (int x : tuple) out << " " << x;
      out << "\n";
    }
  }
}

}  // namespace tcw
