// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hamwedge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hamwedge/census.hpp"
#include "hamwedge/graph.hpp"
#include "hamwedge/hamclass.hpp"
#include "hamwedge/polytope.hpp"

namespace hamwedge::cli {

namespace {

// Input problems that are the caller's fault; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  std::string graph;
  std::string p = "1/2";
  int samples = 20;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string mode;
  bool strict = false;
  int max_n_guard = 0;
  std::string spec;
  std::string basis;
  bool allow_large = false;
  bool no_prune = false;
  bool list = false;
};

const char* tf(bool b) { return b ? "true" : "false"; }

Digraph load_graph(const Options& o, std::ostream& err) {
  std::vector<std::string> warnings;
  Digraph g;
  try {
    g = read_digraph_file(o.graph, &warnings);
  } catch (const std::exception& e) {
    throw UsageError("--graph: " + std::string(e.what()));
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return g;
}

Basis load_basis(const Options& o, const Digraph& g) {
  try {
    Basis b = canonical(parse_basis(o.basis));
    validate_basis(b, g);
    return b;
  } catch (const std::exception& e) {
    throw UsageError("--basis: " + std::string(e.what()));
  }
}

GraphCensusOptions graph_options(const Options& o) {
  GraphCensusOptions g;
  if (o.mode == "oracle") {
    g.mode = GraphCensusMode::Oracle;
  } else if (o.mode.empty() || o.mode == "pruned") {
    g.mode = GraphCensusMode::Pruned;
  } else {
    throw UsageError("--mode: expected 'pruned' or 'oracle', got '" + o.mode + "'");
  }
  if (o.max_n_guard > 0) {
    g.max_n = o.max_n_guard;
    g.max_n_oracle = o.max_n_guard;
  }
  return g;
}

int cmd_census_class(const Options& o, std::ostream& out) {
  CensusOptions c;
  c.threads = o.threads;
  c.prune = !o.no_prune;
  c.allow_large = o.allow_large;
  if (o.mode.empty() || o.mode == "parity") {
    c.predicate = CensusPredicate::Parity;
  } else if (o.mode == "general") {
    c.predicate = CensusPredicate::General;
  } else if (o.mode == "oracle") {
    c.predicate = CensusPredicate::Oracle;
  } else {
    throw UsageError("--mode: expected 'parity', 'general' or 'oracle', got '" + o.mode + "'");
  }
  if (o.n < 5) throw UsageError("--n: class census needs n >= 5");
  if (o.n >= 11 && !o.allow_large) throw UsageError("--n: n >= 11 requires --allow-large");
  if (o.list) {
    out << "quadruple\n";
    for (const auto& q : counted_quadruples(o.n, c)) out << format_quadruple(q) << "\n";
    return kExitOk;
  }
  out << write_census_csv(census_class(o.n, c));
  return kExitOk;
}

int cmd_census_graph(const Options& o, std::ostream& out, std::ostream& err) {
  const Digraph g = load_graph(o, err);
  out << write_graph_census_csv(census_graph(g, graph_options(o)));
  return kExitOk;
}

int cmd_conjecture(const Options& o, std::ostream& out) {
  Rational p;
  try {
    p = parse_rational(o.p);
  } catch (const std::exception& e) {
    throw UsageError("--p: " + std::string(e.what()));
  }
  if (p < 0 || p > 1) throw UsageError("--p: must lie in [0, 1]");
  if (o.n < 3) throw UsageError("--n: needs n >= 3");
  if (o.samples < 1) throw UsageError("--samples: needs at least one sample");
  out << write_conjecture_csv(conjecture_experiment(o.n, p, o.samples, o.seed, o.threads, graph_options(o)));
  return kExitOk;
}

int cmd_check_quadruple(const Options& o, std::ostream& out) {
  Quadruple q;
  try {
    q = parse_quadruple(o.spec);
  } catch (const std::exception& e) {
    throw UsageError("--spec: " + std::string(e.what()));
  }
  if (const auto chk = validate_quadruple(q); !chk.valid()) throw UsageError("--spec: " + chk.reason);
  bool feasible = false;
  if (o.mode.empty() || o.mode == "parity") {
    feasible = check_char_parity(q);
  } else if (o.mode == "general") {
    feasible = check_char_general(q);
  } else if (o.mode == "oracle") {
    feasible = polytope_feasible(q);
  } else {
    throw UsageError("--mode: expected 'parity', 'general' or 'oracle', got '" + o.mode + "'");
  }
  const auto star = i_star(q);
  out << "feasible=" << tf(feasible) << " i_star=" << (star ? std::to_string(*star) : "none") << "\n";
  return feasible || !o.strict ? kExitOk : kExitNegative;
}

int cmd_solve_basis(const Options& o, std::ostream& out, std::ostream& err) {
  const Digraph g = load_graph(o, err);
  const Basis b = load_basis(o, g);
  const auto sol = solve_basis(build_system(g), b);
  if (!sol) {
    out << "singular=true\nfeasible=false\n";
    return o.strict ? kExitNegative : kExitOk;
  }
  const bool feasible = is_ultimately_feasible(*sol, b);
  out << "singular=false\n";
  out << "det=" << to_string(sol->det) << "\n";
  out << "feasible=" << tf(feasible) << "\n";
  const auto classes = classify_arcs(*sol);
  for (const auto& [arc, v] : sol->x) {
    out << "x_" << arc.from << "_" << arc.to << "=" << to_string(v) << " class=" << to_string(classes.at(arc)) << "\n";
  }
  for (int i = 2; i <= g.node_count(); ++i) out << "y_" << i << "=" << to_string(sol->y_value(i)) << "\n";
  if (feasible) out << "quasi_hamiltonian=" << tf(is_quasi_hamiltonian(g, *sol)) << "\n";
  return feasible || !o.strict ? kExitOk : kExitNegative;
}

int cmd_split_graph(const Options& o, std::ostream& out, std::ostream& err) {
  const Digraph g = load_graph(o, err);
  const SplitGraph sg = split(g);
  const auto arcs = sg.arcs();
  out << "nodes=" << sg.node_count() << "\narcs=" << arcs.size() << "\n";
  out << "tail,head,kind,multiplier\n";
  for (const auto& a : arcs) {
    out << split_node_name(a.tail()) << "," << split_node_name(a.head()) << ","
        << (a.kind == SplitArcKind::Transit ? "transit" : "internal") << ","
        << (a.kind == SplitArcKind::Transit ? "beta" : "1") << "\n";
  }
  return kExitOk;
}

int cmd_verify_structure(const Options& o, std::ostream& out, std::ostream& err) {
  const Digraph g = load_graph(o, err);
  const Basis b = load_basis(o, g);
  const auto sol = solve_basis(build_system(g), b);
  if (!sol || !is_ultimately_feasible(*sol, b)) {
    out << "feasible=false\n";
    return o.strict ? kExitNegative : kExitOk;
  }
  const StructureReport r = verify_structure(g, b, *sol);
  out << "feasible=true\n";
  for (const auto& [name, ok] : r.fields()) out << name << "=" << tf(ok) << "\n";
  out << "all=" << tf(r.all()) << "\n";
  return r.all() || !o.strict ? kExitOk : kExitNegative;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact feasibility and counting tools for the wedge-constrained Hamiltonian polytope", "hamwedge"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Write results to FILE instead of stdout"); };
  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 1024));
  };

  auto* cc = app.add_subcommand("census-class", "Count feasible (s, pi, L, U) quadruples by cycle type and s");
  cc->add_option("--n", o.n, "Number of nodes")->required();
  add_threads(cc);
  cc->add_option("--mode", o.mode, "Predicate: parity (default), general, oracle");
  cc->add_flag("--allow-large", o.allow_large, "Permit n >= 11");
  cc->add_flag("--no-prune", o.no_prune, "Enumerate every quadruple without necessary-condition filters");
  cc->add_flag("--list", o.list, "List the counted quadruples instead of the table");
  add_out(cc);

  auto* cg = app.add_subcommand("census-graph", "List the feasible bases of a small digraph");
  cg->add_option("--graph", o.graph, "Graph file")->required();
  cg->add_option("--mode", o.mode, "pruned (default) or oracle");
  cg->add_option("--max-n-guard", o.max_n_guard, "Override the node-count guard")->check(CLI::PositiveNumber);
  add_out(cg);

  auto* cj = app.add_subcommand("conjecture", "Quasi-Hamiltonian ratio over random digraphs with a planted cycle");
  cj->add_option("--n", o.n, "Number of nodes")->required();
  cj->add_option("--p", o.p, "Arc probability NUM/DEN");
  cj->add_option("--samples", o.samples, "Number of graphs");
  cj->add_option("--seed", o.seed, "64-bit seed");
  cj->add_option("--mode", o.mode, "pruned (default) or oracle");
  cj->add_option("--max-n-guard", o.max_n_guard, "Override the node-count guard")->check(CLI::PositiveNumber);
  add_threads(cj);
  add_out(cj);

  auto* cq = app.add_subcommand("check-quadruple", "Decide feasibility of one quadruple");
  cq->add_option("--spec", o.spec, "e.g. \"n=8 s=5 pi=(16453)(287) L=2,6,7 U=3,4,8\"")->required();
  cq->add_option("--mode", o.mode, "parity (default), general, oracle");
  cq->add_flag("--strict", o.strict, "Exit 1 when infeasible");
  add_out(cq);

  auto* sb = app.add_subcommand("solve-basis", "Solve a basis exactly and report its values");
  sb->add_option("--graph", o.graph, "Graph file")->required();
  sb->add_option("--basis", o.basis, "\"A: i-j,... ; Y: i,... ; L: i,... ; U: i,...\"")->required();
  sb->add_flag("--strict", o.strict, "Exit 1 when singular or infeasible");
  add_out(sb);

  auto* sg = app.add_subcommand("split-graph", "Print the split graph as an arc list");
  sg->add_option("--graph", o.graph, "Graph file")->required();
  add_out(sg);

  auto* vs = app.add_subcommand("verify-structure", "Check the structural properties of a feasible basis");
  vs->add_option("--graph", o.graph, "Graph file")->required();
  vs->add_option("--basis", o.basis, "Basis text")->required();
  vs->add_flag("--strict", o.strict, "Exit 1 when infeasible or any property fails");
  add_out(vs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (cc->parsed()) code = cmd_census_class(o, buffer);
    if (cg->parsed()) code = cmd_census_graph(o, buffer, err);
    if (cj->parsed()) code = cmd_conjecture(o, buffer);
    if (cq->parsed()) code = cmd_check_quadruple(o, buffer);
    if (sb->parsed()) code = cmd_solve_basis(o, buffer, err);
    if (sg->parsed()) code = cmd_split_graph(o, buffer, err);
    if (vs->parsed()) code = cmd_verify_structure(o, buffer, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeGuardExceeded& e) {
    err << "error: " << e.what() << "; raise it with --max-n-guard\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (o.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "error: --out: cannot open '" << o.out << "'\n";
      return kExitUsage;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace hamwedge::cli
