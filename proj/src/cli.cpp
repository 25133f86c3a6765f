#include "tcw/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcw/cds.hpp"
#include "tcw/cvc.hpp"
#include "tcw/imbalance.hpp"
#include "tcw/io.hpp"
#include "tcw/nice.hpp"
#include "tcw/oracles.hpp"
#include "tcw/reductions.hpp"

namespace tcw {

namespace {

using nlohmann::json;

struct Report {
  json doc;
  bool as_json = false;

  void set(const std::string& key, const json& value) { doc[key] = value; }

  void print(std::ostream& out) const {
    if (as_json) {
      out << doc.dump(2) << "\n";
      return;
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      out << it.key() << " ";
      if (it.value().is_string())
        out << it.value().get<std::string>();
      else
        out << it.value().dump();
      out << "\n";
    }
  }
};

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_graph(in);
}

TreeCutDecomposition load_decomposition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_decomposition(in);
}

std::vector<std::int64_t> load_caps(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_capacities(in, n);
}

std::string value_str(std::int64_t v) {
  return v >= kInf ? "infeasible" : std::to_string(v);
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void emit_instance_summary(Report& rep, const Graph& g,
                           const TreeCutDecomposition& dec) {
  rep.set("n", g.n());
  rep.set("m", g.m());
  rep.set("nodes", dec.node_count());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"tree-cut decomposition toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand
  bool as_json = false;
  int threads = 1;
  app.add_flag("--json", as_json, "emit one JSON document");
  app.add_option("--threads", threads, "worker cap (processing is per-node)");

  std::string graph_path, dec_path, caps_path, out_path, dec_out;
  std::int64_t budget = 0;
  bool check_oracle = false;
  bool no_cutoff = false;
  int cap_arg = -1;

  auto* validate_cmd = app.add_subcommand("validate", "check a decomposition");
  validate_cmd->add_option("graph", graph_path)->required();
  validate_cmd->add_option("dec", dec_path)->required();

  auto* metrics_cmd = app.add_subcommand("metrics", "per-node width metrics");
  metrics_cmd->add_option("graph", graph_path)->required();
  metrics_cmd->add_option("dec", dec_path)->required();

  auto* nicify_cmd = app.add_subcommand("nicify", "make a decomposition nice");
  nicify_cmd->add_option("graph", graph_path)->required();
  nicify_cmd->add_option("dec", dec_path)->required();
  nicify_cmd->add_option("-o,--output", out_path, "write the result here");

  auto* solve_cmd = app.add_subcommand("solve", "run a solver");
  std::string problem;
  solve_cmd->add_option("problem", problem, "cvc, cds, or imb")->required();
  solve_cmd->add_option("graph", graph_path)->required();
  solve_cmd->add_option("dec", dec_path)->required();
  solve_cmd->add_option("--caps", caps_path, "capacity file (cvc, cds)");
  solve_cmd->add_option("--budget", budget, "decision budget d")->required();
  solve_cmd->add_flag("--check-oracle", check_oracle,
                      "cross-check small instances against brute force");
  solve_cmd->add_flag("--no-cutoff", no_cutoff,
                      "imb: keep full tables instead of the 4e cutoff");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force baselines");
  std::string oracle_kind;
  oracle_cmd->add_option("kind", oracle_kind, "cvc, cds, imb, or tcw")
      ->required();
  oracle_cmd->add_option("graph", graph_path)->required();
  oracle_cmd->add_option("--caps", caps_path, "capacity file (cvc, cds)");
  oracle_cmd->add_option("--cap", cap_arg, "tcw: width search cap");

  auto* gen_cmd = app.add_subcommand("gen", "instance generators");
  std::string family;
  int gen_a = 0, gen_b = 0;
  unsigned seed = 1;
  double edge_prob = 0.5;
  gen_cmd
      ->add_option("family", family,
                   "star-of-stars, ternary, mcc-listcol, mcc-precol, mcc-csp")
      ->required();
  gen_cmd->add_option("size", gen_a, "n / depth / k")->required();
  gen_cmd->add_option("size2", gen_b, "part size for mcc families");
  gen_cmd->add_option("--seed", seed, "rng seed for mcc edge patterns");
  gen_cmd->add_option("--edge-prob", edge_prob, "mcc cross-edge probability");
  gen_cmd->add_option("-o,--output", out_path, "output file or base name")
      ->required();
  gen_cmd->add_option("--dec", dec_out,
                      "also write a decomposition (star families)");

  auto* export_cmd =
      app.add_subcommand("export-treedec", "tree-decomposition export");
  export_cmd->add_option("graph", graph_path)->required();
  export_cmd->add_option("dec", dec_path)->required();
  export_cmd->add_option("-o,--output", out_path, "write the result here");

  std::vector<std::string> argv_vec = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("tcwtool");
    for (const auto& a : argv_vec) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (threads < 1) {
    err << "--threads must be positive\n";
    return 2;
  }

  Report rep;
  rep.as_json = as_json;
  Timer timer;

  try {
    if (*validate_cmd) {
      Graph g = load_graph(graph_path);
      auto dec = load_decomposition(dec_path);
      rep.set("command", "validate");
      emit_instance_summary(rep, g, dec);
      auto vr = validate(g, dec);
      rep.set("valid", vr.ok);
      if (!vr.ok) rep.set("reason", vr.message);
      if (vr.ok) {
        auto nm = metrics(g, dec);
        rep.set("width", nm.width);
        rep.set("nice", is_nice(g, dec));
      }
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return vr.ok ? 0 : 1;
    }

    if (*metrics_cmd) {
      Graph g = load_graph(graph_path);
      auto dec = load_decomposition(dec_path);
      auto nm = metrics(g, dec);
      rep.set("command", "metrics");
      emit_instance_summary(rep, g, dec);
      json nodes = json::array();
      for (Node t = 0; t < dec.node_count(); ++t) {
        json e;
        e["node"] = t;
        e["torso_size"] = nm.torso_size[t];
        e["adhesion"] = nm.adhesion[t];
        nodes.push_back(e);
      }
      rep.set("per_node", nodes);
      rep.set("width", nm.width);
      rep.set("nice", is_nice(g, dec));
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return 0;
    }

    if (*nicify_cmd) {
      Graph g = load_graph(graph_path);
      auto dec = load_decomposition(dec_path);
      auto before = metrics(g, dec);
      NicifyStats stats;
      auto nice = nicify(g, dec, &stats);
      auto after = metrics(g, nice);
      rep.set("command", "nicify");
      emit_instance_summary(rep, g, dec);
      rep.set("width_before", before.width);
      rep.set("width_after", after.width);
      rep.set("nodes_after", nice.node_count());
      rep.set("reroute_steps", stats.reroute_steps);
      std::ostringstream body;
      write_decomposition(body, nice);
      if (out_path.empty()) {
        rep.set("decomposition", body.str());
      } else {
        std::ofstream f(out_path);
        f << body.str();
        rep.set("output", out_path);
      }
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return 0;
    }

    if (*solve_cmd) {
      Graph g = load_graph(graph_path);
      auto dec = load_decomposition(dec_path);
      rep.set("command", "solve " + problem);
      emit_instance_summary(rep, g, dec);
      bool yes = false;
      std::int64_t opt = kInf;
      if (problem == "cvc" || problem == "cds") {
        if (caps_path.empty()) {
          err << "solve " << problem << " requires --caps\n";
          return 2;
        }
        CapacitatedGraph cg(g, load_caps(caps_path, g.n()));
        if (problem == "cvc") {
          auto res = solve_cvc(cg, dec, budget);
          yes = res.yes;
          opt = res.optimum;
          rep.set("width", res.width);
          if (check_oracle && g.n() <= 8) {
            std::vector<Vertex> all(g.n());
            std::iota(all.begin(), all.end(), 0);
            std::int64_t ref = cvc_brute(cg, all);
            rep.set("oracle", value_str(ref));
            if (ref != opt) throw std::logic_error("oracle mismatch");
          }
        } else {
          auto res = solve_cds(cg, dec, budget);
          yes = res.yes;
          opt = res.optimum;
          rep.set("width", res.width);
          if (check_oracle && g.n() <= 8) {
            std::int64_t ref = cds_brute(cg);
            rep.set("oracle", value_str(ref));
            if (ref != opt) throw std::logic_error("oracle mismatch");
          }
        }
      } else if (problem == "imb") {
        auto res = solve_imb(g, dec, budget, !no_cutoff);
        yes = res.yes;
        opt = res.optimum;
        rep.set("width", res.width);
        if (check_oracle && g.n() <= 8) {
          std::int64_t ref = imb_brute(g);
          rep.set("oracle", value_str(ref));
          if (ref != opt) throw std::logic_error("oracle mismatch");
        }
      } else {
        err << "unknown problem '" << problem << "'\n";
        return 2;
      }
      rep.set("budget", budget);
      rep.set("answer", yes ? "yes" : "no");
      rep.set("optimum", value_str(opt));
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return yes ? 0 : 1;
    }

    if (*oracle_cmd) {
      Graph g = load_graph(graph_path);
      rep.set("command", "oracle " + oracle_kind);
      rep.set("n", g.n());
      rep.set("m", g.m());
      std::int64_t value = kInf;
      if (oracle_kind == "cvc" || oracle_kind == "cds") {
        if (caps_path.empty()) {
          err << "oracle " << oracle_kind << " requires --caps\n";
          return 2;
        }
        CapacitatedGraph cg(g, load_caps(caps_path, g.n()));
        if (oracle_kind == "cvc") {
          std::vector<Vertex> all(g.n());
          std::iota(all.begin(), all.end(), 0);
          value = cvc_brute(cg, all);
        } else {
          value = cds_brute(cg);
        }
      } else if (oracle_kind == "imb") {
        value = imb_brute(g);
      } else if (oracle_kind == "tcw") {
        value = tcw_exact(g, cap_arg > 0 ? cap_arg : g.n());
      } else {
        err << "unknown oracle '" << oracle_kind << "'\n";
        return 2;
      }
      rep.set("value", value_str(value));
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return 0;
    }

    if (*gen_cmd) {
      rep.set("command", "gen " + family);
      if (family == "star-of-stars" || family == "ternary") {
        Graph g = family == "star-of-stars" ? gen_star_of_stars(gen_a)
                                            : gen_ternary_tree(gen_a);
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        write_graph(f, g);
        rep.set("n", g.n());
        rep.set("m", g.m());
        rep.set("output", out_path);
        if (!dec_out.empty() && family == "star-of-stars") {
          auto sdec = star_of_stars_decomposition(gen_a);
          std::ofstream df(dec_out);
          write_decomposition(df, sdec);
          rep.set("dec_output", dec_out);
          rep.set("dec_width", metrics(g, sdec).width);
        }
      } else if (family == "mcc-listcol" || family == "mcc-precol" ||
                 family == "mcc-csp") {
        if (gen_b <= 0) {
          err << "mcc families need '<k> <n>'\n";
          return 2;
        }
        MccInstance mcc;
        mcc.k = gen_a;
        mcc.n = gen_b;
        Graph mg(gen_a * gen_b);
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(edge_prob);
        for (int i = 0; i < gen_a; ++i)
          for (int j = i + 1; j < gen_a; ++j)
            for (int a = 0; a < gen_b; ++a)
              for (int b = 0; b < gen_b; ++b)
                if (coin(rng)) mg.add_edge(i * gen_b + a, j * gen_b + b);
        mcc.graph = mg;
        rep.set("mcc_k", mcc.k);
        rep.set("mcc_n", mcc.n);
        rep.set("mcc_edges", mg.m());
        if (family == "mcc-listcol") {
          auto red = mcc_to_list_coloring(mcc);
          std::ofstream f(out_path + ".lc");
          write_list_coloring(f, red.instance);
          std::ofstream df(out_path + ".tcd");
          write_decomposition(df, red.dec);
          rep.set("output", out_path + ".lc");
          rep.set("dec_output", out_path + ".tcd");
          rep.set("width", metrics(red.instance.graph, red.dec).width);
        } else if (family == "mcc-precol") {
          auto lcred = mcc_to_list_coloring(mcc);
          auto red = list_to_precoloring(lcred.instance, lcred.dec);
          std::ofstream f(out_path + ".pc");
          write_precoloring(f, red.instance);
          std::ofstream df(out_path + ".tcd");
          write_decomposition(df, red.dec);
          rep.set("output", out_path + ".pc");
          rep.set("dec_output", out_path + ".tcd");
          rep.set("width", metrics(red.instance.graph, red.dec).width);
        } else {
          auto red = mcc_to_boolean_csp(mcc);
          std::ofstream f(out_path + ".csp");
          write_csp(f, red.instance);
          std::ofstream df(out_path + ".tcd");
          write_decomposition(df, red.dec);
          std::ofstream gf(out_path + ".gr");
          write_graph(gf, red.incidence);
          rep.set("output", out_path + ".csp");
          rep.set("incidence_output", out_path + ".gr");
          rep.set("dec_output", out_path + ".tcd");
          rep.set("width", metrics(red.incidence, red.dec).width);
        }
      } else {
        err << "unknown family '" << family << "'\n";
        return 2;
      }
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return 0;
    }

    if (*export_cmd) {
      Graph g = load_graph(graph_path);
      auto dec = load_decomposition(dec_path);
      auto nice = is_nice(g, dec) ? dec : nicify(g, dec);
      auto td = to_tree_decomposition(g, nice);
      auto vr = validate_tree_decomposition(g, td);
      if (!vr.ok)
        throw std::logic_error("exported decomposition invalid: " + vr.message);
      rep.set("command", "export-treedec");
      emit_instance_summary(rep, g, dec);
      rep.set("tree_decomposition_width", td.width());
      std::ostringstream body;
      write_tree_decomposition(body, g, td);
      if (out_path.empty()) {
        rep.set("tree_decomposition", body.str());
      } else {
        std::ofstream f(out_path);
        f << body.str();
        rep.set("output", out_path);
      }
      rep.set("time_ms", timer.ms());
      rep.print(out);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace tcw
