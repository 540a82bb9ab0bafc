#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "constraints.hpp"
#include "edit_script.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "kernelize.hpp"
#include "oracle.hpp"
#include "search_tree.hpp"
#include "treewidth.hpp"

namespace fptedit {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void print_answer(std::ostream& out, bool answer, Weight cost, const std::optional<EditScript>& witness) {
  if (!answer) {
    out << "NO\n";
    return;
  }
  out << "YES cost=" << cost << '\n';
  if (witness)
    out << serialize_script(canonical(*witness));
}

} // namespace detail

// Runs the fptedit command line. Exit codes: 0 yes/ok, 1 no/failed check,
// 2 usage or input error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-constrained graph editing solver"};
  app.require_subcommand(1);
  int code = 0;

  std::string file, script_file, td_file, family, mode = "induced", problem = "WEDCE";
  std::vector<std::string> params, op_names{"vdel", "edel"};
  bool stats = false;
  int r = -1, lambda = 0, mu = 0;
  std::int64_t k = 1;
  std::uint64_t seed = 1;

  CLI::App* solve = app.add_subcommand("solve", "Decide an instance and print a minimum-cost edit script");
  solve->add_option("file", file, "instance file")->required();
  solve->add_flag("--stats", stats, "report solver statistics on stderr");

  CLI::App* kern = app.add_subcommand("kernelize", "Apply the reduction rules; kernel on stdout, trace on stderr");
  kern->add_option("file", file, "instance file")->required();

  CLI::App* verify = app.add_subcommand("verify", "Check an edit script against an instance");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("script", script_file, "edit script file")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive search over all edit sets");
  oracle->add_option("file", file, "instance file")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance from a graph family");
  gen->add_option("family", family, "complete|cycle|path|star|petersen|empty|random")->required();
  gen->add_option("params", params, "family parameters, e.g. n, or n p for random");
  gen->add_option("--seed", seed, "seed for random families");
  gen->add_option("--problem", problem, "WDCE|WEDCE|WERE|WSRE");
  gen->add_option("--ops", op_names, "allowed operations")->delimiter(',');
  gen->add_option("-k", k, "budget");
  gen->add_option("-r", r, "every degree list becomes {r}")->required();
  gen->add_option("--lambda", lambda, "every nu list becomes {lambda}");
  gen->add_option("--mu", mu, "every xi list becomes {mu}");

  CLI::App* tw = app.add_subcommand("tw", "Nonempty r-regular subgraph questions via tree decompositions");
  tw->add_option("file", file, "instance file (only the graph is used)")->required();
  tw->add_option("--td", td_file, "tree decomposition in PACE format");
  tw->add_option("--mode", mode, "induced|subgraph|addition")
      ->check(CLI::IsMember({"induced", "subgraph", "addition"}));
  tw->add_option("-r", r, "target degree")->required()->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (*solve) {
      const ProblemInstance inst = parse_instance(detail::read_file(file));
      const SolveReport report = fptedit::solve(inst);
      std::optional<EditScript> witness = report.witness;
      Weight cost = report.cost;
      if (report.answer && !witness) {
        // The kernel witness could not be lifted; fall back to exhaustive search.
        const OracleResult exact = brute_force_solve(inst);
        witness = exact.witness;
        cost = exact.cost;
      }
      detail::print_answer(out, report.answer, cost, witness);
      if (stats) {
        err << "solver=" << report.solver << " nodes=" << report.nodes_visited;
        if (report.tree_bound)
          err << " bound=" << *report.tree_bound;
        err << '\n';
      }
      code = report.answer ? 0 : 1;
    } else if (*kern) {
      const ProblemInstance inst = parse_instance(detail::read_file(file));
      const KernelTrace trace = kernelize(inst);
      out << serialize_instance(trace.final_instance);
      for (const TraceStep& step : trace.steps)
        err << to_string(step) << '\n';
    } else if (*verify) {
      const ProblemInstance inst = parse_instance(detail::read_file(file));
      const EditScript script = parse_script(detail::read_file(script_file));
      EditResult applied;
      try {
        applied = apply_edit_script(inst.graph, script, inst.ops);
      } catch (const EditError& e) {
        out << "INVALID " << e.what() << '\n';
        return 1;
      }
      if (applied.cost > inst.k) {
        out << "INVALID cost " << applied.cost << " exceeds k=" << inst.k << '\n';
        return 1;
      }
      if (auto violation = first_violation(inst, applied.graph)) {
        out << "INVALID " << *violation << '\n';
        return 1;
      }
      out << "VALID cost=" << applied.cost << '\n';
    } else if (*oracle) {
      const ProblemInstance inst = parse_instance(detail::read_file(file));
      const OracleResult res = brute_force_solve(inst);
      if (res.warning)
        err << "warning: " << *res.warning << '\n';
      detail::print_answer(out, res.answer, res.cost, res.witness);
      code = res.answer ? 0 : 1;
    } else if (*gen) {
      auto kind = parse_problem_kind(problem);
      if (!kind)
        throw std::invalid_argument("unknown problem kind " + problem);
      OpSet ops;
      for (const std::string& name : op_names) {
        auto op = parse_edit_kind(name);
        if (!op)
          throw std::invalid_argument("unknown operation " + name);
        ops.insert(*op);
      }
      auto param = [&](std::size_t i) {
        if (i >= params.size())
          throw std::invalid_argument("family " + family + " needs more parameters");
        return std::stoi(params[i]);
      };
      WeightedGraph g;
      if (family == "complete") g = gen::complete(param(0));
      else if (family == "cycle") g = gen::cycle(param(0));
      else if (family == "path") g = gen::path(param(0));
      else if (family == "star") g = gen::star(param(0));
      else if (family == "empty") g = gen::empty_graph(param(0));
      else if (family == "petersen") g = gen::petersen();
      else if (family == "random") {
        if (params.size() < 2)
          throw std::invalid_argument("random needs n and p");
        g = gen::random_graph(param(0), std::stod(params[1]), seed);
      } else
        throw std::invalid_argument("unknown family " + family);
      ProblemInstance inst = uniform_instance(std::move(g), *kind, ops, k, r, lambda, mu);
      validate(inst);
      const std::string text = serialize_instance(inst);
      parse_instance(text);
      out << text;
    } else if (*tw) {
      const ProblemInstance inst = parse_instance(detail::read_file(file));
      bool answer = false;
      if (mode == "addition") {
        answer = solve_with_addition(inst.graph, r);
      } else {
        const TreeDecomposition td =
            td_file.empty() ? greedy_decomposition(inst.graph) : parse_decomposition(detail::read_file(td_file));
        if (!validate_decomposition(inst.graph, td))
          throw DecompositionError("tree decomposition does not fit the graph");
        err << "width=" << td.width() << '\n';
        answer = mode == "induced" ? solve_induced_regular(inst.graph, r, td)
                                   : solve_regular_subgraph(inst.graph, r, td);
      }
      out << (answer ? "YES" : "NO") << '\n';
      code = answer ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return code;
}

} // namespace fptedit
