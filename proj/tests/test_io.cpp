#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "tcw/cli.hpp"
#include "tcw/io.hpp"
#include "tcw/reductions.hpp"

using namespace tcw;

namespace {

template <typename T, typename W, typename P>
T roundtrip(const T& value, W&& writer, P&& parser) {
  std::ostringstream out;
  writer(out, value);
  std::istringstream in(out.str());
  return parser(in);
}

}  // namespace

TEST_CASE("graph round-trip") {
  std::mt19937_64 rng(127);
  for (int round = 0; round < 30; ++round) {
    Graph g = testing::random_graph(7, 0.4, rng);
    Graph back = roundtrip(
        g, [](std::ostream& o, const Graph& x) { write_graph(o, x); },
        [](std::istream& i) { return parse_graph(i); });
    CHECK(back.n() == g.n());
    CHECK(back.edges() == g.edges());
  }
}

TEST_CASE("capacities round-trip") {
  std::vector<std::int64_t> caps{3, 0, 2, 1};
  std::ostringstream out;
  write_capacities(out, caps);
  std::istringstream in(out.str());
  CHECK(parse_capacities(in, 4) == caps);
}

TEST_CASE("decomposition round-trip") {
  std::mt19937_64 rng(131);
  for (int round = 0; round < 30; ++round) {
    Graph g = testing::random_graph(6, 0.4, rng);
    auto dec = testing::random_decomposition(g, rng);
    auto back = roundtrip(
        dec,
        [](std::ostream& o, const TreeCutDecomposition& d) {
          write_decomposition(o, d);
        },
        [](std::istream& i) { return parse_decomposition(i); });
    CHECK(back.root == dec.root);
    CHECK(back.parent == dec.parent);
    CHECK(back.bags == dec.bags);
  }
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream bad_graph("p graph 2 1\ne 0 5\n");
  CHECK_THROWS_AS(parse_graph(bad_graph), ParseError);
  try {
    std::istringstream again("p graph 2 1\ne 0 5\n");
    parse_graph(again);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }

  std::istringstream bad_dec("t 2 0\nn 1 7\n");
  CHECK_THROWS_AS(parse_decomposition(bad_dec), ParseError);
}

TEST_CASE("reduction instance round-trips") {
  MccInstance m;
  m.k = 2;
  m.n = 2;
  m.graph = Graph::from_edges(4, {{0, 2}, {1, 3}});
  auto lc = mcc_to_list_coloring(m).instance;
  auto lc2 = roundtrip(
      lc,
      [](std::ostream& o, const ListColoringInstance& x) {
        write_list_coloring(o, x);
      },
      [](std::istream& i) { return parse_list_coloring(i); });
  CHECK(lc2.graph.edges() == lc.graph.edges());
  CHECK(lc2.lists == lc.lists);

  auto pc = list_to_precoloring(lc, mcc_to_list_coloring(m).dec).instance;
  auto pc2 = roundtrip(
      pc,
      [](std::ostream& o, const PrecoloringInstance& x) {
        write_precoloring(o, x);
      },
      [](std::istream& i) { return parse_precoloring(i); });
  CHECK(pc2.lists == pc.lists);
  CHECK(pc2.palette == pc.palette);

  auto csp = mcc_to_boolean_csp(m).instance;
  auto csp2 = roundtrip(
      csp, [](std::ostream& o, const CspInstance& x) { write_csp(o, x); },
      [](std::istream& i) { return parse_csp(i); });
  CHECK(csp2.num_vars == csp.num_vars);
  CHECK(csp2.domain == csp.domain);
  REQUIRE(csp2.constraints.size() == csp.constraints.size());
  for (size_t i = 0; i < csp.constraints.size(); ++i) {
    CHECK(csp2.constraints[i].scope == csp.constraints[i].scope);
    CHECK(csp2.constraints[i].tuples == csp.constraints[i].tuples);
  }
}

TEST_CASE("cli end-to-end on the bundled example") {
  std::ostringstream out, err;

  auto run = [&](std::vector<std::string> args) {
    out.str("");
    err.str("");
    return run_cli(args, out, err);
  };

  CHECK(run({"gen", "star-of-stars", "3", "-o", "/tmp/tcw_s3.gr"}) == 0);
  CHECK(out.str().find("n 13") != std::string::npos);

  {
    std::ofstream g("/tmp/tcw_fig1.gr");
    write_graph(g, testing::fig1_graph());
    std::ofstream d("/tmp/tcw_fig1.tcd");
    write_decomposition(d, testing::fig1_decomposition());
  }
  CHECK(run({"validate", "/tmp/tcw_fig1.gr", "/tmp/tcw_fig1.tcd"}) == 0);
  CHECK(out.str().find("width 3") != std::string::npos);

  CHECK(run({"metrics", "/tmp/tcw_fig1.gr", "/tmp/tcw_fig1.tcd", "--json"}) ==
        0);
  CHECK(out.str().find("\"width\": 3") != std::string::npos);

  {
    std::ofstream c("/tmp/tcw_fig1.cap");
    write_capacities(c, std::vector<std::int64_t>(7, 3));
  }
  int code = run({"solve", "cvc", "/tmp/tcw_fig1.gr", "/tmp/tcw_fig1.tcd",
                  "--caps", "/tmp/tcw_fig1.cap", "--budget", "4",
                  "--check-oracle"});
  CHECK(code == 0);
  CHECK(out.str().find("answer yes") != std::string::npos);
  CHECK(out.str().find("optimum 4") != std::string::npos);

  CHECK(run({"oracle", "imb", "/tmp/tcw_fig1.gr"}) == 0);

  CHECK(run({"export-treedec", "/tmp/tcw_fig1.gr", "/tmp/tcw_fig1.tcd", "-o",
             "/tmp/tcw_fig1.td"}) == 0);

  CHECK(run({"validate", "/tmp/missing.gr", "/tmp/tcw_fig1.tcd"}) == 2);
}
