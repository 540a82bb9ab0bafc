// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <fptedit.hpp>

#include "support/golden.hpp"
#include "support/reference.hpp"
#include "support/sampling.hpp"

using namespace fptedit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Config {
  ProblemKind kind;
  OpSet ops;
  const char* name;
};

const std::vector<Config> kSolverConfigs = {{ProblemKind::WEDCE, kVdelEdel, "WEDCE(vdel,edel)"},
                                            {ProblemKind::WEDCE, kVdel, "WEDCE(vdel)"},
                                            {ProblemKind::WERE, kVdelEdel, "WERE(vdel,edel)"},
                                            {ProblemKind::WSRE, kVdelEdel, "WSRE(vdel,edel)"}};

// Every instance of criteria 1 and 4: all graphs on 5 vertices, r in 1..3,
// lambda and mu in 0..r where the kind uses them, k in 0..3.
void for_each_solver_instance(const std::function<void(const Config&, const ProblemInstance&)>& f) {
  const auto graphs = enumerate_labeled_graphs(5);
  for (const Config& c : kSolverConfigs)
    for (int r = 1; r <= 3; ++r)
      for (int lambda = 0; lambda <= (uses_nu(c.kind) ? r : 0); ++lambda)
        for (int mu = 0; mu <= (uses_xi(c.kind) ? r : 0); ++mu)
          for (int k = 0; k <= 3; ++k)
            for (const WeightedGraph& g : graphs)
              f(c, uniform_instance(g, c.kind, c.ops, k, r, lambda, mu));
}

Outcome oracle_agreement() {
  long checked = 0, mismatched = 0;
  std::string first;
  for_each_solver_instance([&](const Config& c, const ProblemInstance& inst) {
    ++checked;
    if (solve(inst).answer != brute_force_solve(inst).answer && mismatched++ == 0)
      first = std::string(c.name) + "\n" + serialize_instance(inst);
  });
  return {mismatched == 0, std::to_string(checked) + " instances, " + std::to_string(mismatched) + " mismatches" +
                               (first.empty() ? "" : "; first:\n" + first)};
}

Outcome rule_soundness() {
  Outcome o;
  for (int rule = 1; rule <= 6; ++rule) {
    std::mt19937_64 rng(1000 + rule);
    int drawn = 0, mismatched = 0;
    for (; drawn < 500; ++drawn) {
      const auto c = sampling::draw_rule_case(rng, rule);
      if (!c)
        break;
      if (brute_force_solve(c->before).answer != brute_force_solve(c->after.instance).answer)
        ++mismatched;
    }
    if (drawn < 500 || mismatched > 0)
      o.pass = false;
    o.detail += (rule > 1 ? ", " : "") + std::string("RR") + std::to_string(rule) + " " + std::to_string(mismatched) +
                "/" + std::to_string(drawn);
  }
  o.detail += " mismatches";
  return o;
}

Outcome kernel_bounds() {
  Outcome o;
  for (const auto& config : sampling::kernel_configs()) {
    std::mt19937_64 rng(2000 + static_cast<int>(config.first) * 8 + static_cast<int>(config.second.to_string().size()));
    int violations = 0, not_yes = 0;
    std::size_t largest = 0;
    for (int i = 0; i < 200; ++i) {
      const planted::Planted p = sampling::draw_yes_instance(rng, config);
      if (!brute_force_solve(p.instance).answer)
        ++not_yes;
      const std::size_t n = kernelize(p.instance).final_instance.graph.num_vertices();
      largest = std::max(largest, n);
      if (n > kernel_bound(config.first, config.second, p.instance.k, p.instance.constraints.r))
        ++violations;
    }
    if (violations > 0 || not_yes > 0)
      o.pass = false;
    if (!o.detail.empty())
      o.detail += ", ";
    o.detail += to_string(config.first) + "(" + config.second.to_string() + ") " + std::to_string(violations) +
                " over (largest kernel " + std::to_string(largest) + ")";
    if (not_yes)
      o.detail += " [" + std::to_string(not_yes) + " draws were not yes-instances]";
  }
  return o;
}

Outcome search_tree_bounds() {
  long checked = 0, over = 0, unbounded = 0;
  for_each_solver_instance([&](const Config& c, const ProblemInstance& inst) {
    if (c.kind == ProblemKind::WSRE)
      return;
    ++checked;
    const SolveReport res = solve(inst);
    const int r = inst.constraints.r;
    const std::uint64_t b = c.ops == kVdel ? r + 3 : c.kind == ProblemKind::WEDCE ? 2 * r + 5 : 3 * r + 6;
    if (!res.tree_bound || *res.tree_bound != tr(b, inst.k))
      ++unbounded;
    else if (res.nodes_visited > *res.tree_bound)
      ++over;
  });
  return {over == 0 && unbounded == 0, std::to_string(checked) + " runs, " + std::to_string(over) +
                                           " over the bound, " + std::to_string(unbounded) + " with a wrong bound"};
}

Outcome recognizers() {
  Outcome o;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      o.pass = false;
      o.detail += "failed: " + what + "; ";
    }
  };
  auto holds = [](const ProblemInstance& inst) { return check_constraints(inst, inst.graph); };
  expect(holds(uniform_instance(gen::petersen(), ProblemKind::WSRE, kVdel, 0, 3, 0, 1)), "Petersen (3,0,1)");
  expect(holds(uniform_instance(gen::cycle(5), ProblemKind::WSRE, kVdel, 0, 2, 0, 1)), "C5 (2,0,1)");
  expect(holds(uniform_instance(gen::complete(4), ProblemKind::WERE, kVdel, 0, 3, 2)), "K4 (3,2) edge-regular");
  expect(holds(uniform_instance(gen::complete(4), ProblemKind::WSRE, kVdel, 0, 3, 2, 0)), "K4 with vacuous xi");

  int regular = 0;
  std::mt19937_64 rng(5);
  std::vector<std::pair<WeightedGraph, int>> graphs = {{gen::petersen(), 3}};
  for (int n = 1; n <= 8; ++n)
    graphs.emplace_back(gen::complete(n), n - 1);
  for (int n = 3; n <= 12; ++n)
    graphs.emplace_back(gen::cycle(n), 2);
  for (int trial = 0; trial < 2000; ++trial) {
    const WeightedGraph g = gen::random_graph(2 + static_cast<int>(rng() % 7), 0.5, rng());
    const Weight d = g.num_vertices() ? weighted_degree(g, g.vertices().front()) : 0;
    bool is_regular = true;
    for (VertexId v : g.vertices())
      is_regular &= weighted_degree(g, v) == d;
    if (is_regular)
      graphs.emplace_back(g, static_cast<int>(d));
  }
  for (const auto& [g, r] : graphs) {
    ++regular;
    expect(holds(uniform_instance(g, ProblemKind::WEDCE, kVdel, 0, 2 * r)), "an r-regular graph with delta = 2r");
  }

  long line_checked = 0;
  for (int n = 1; n <= 5; ++n)
    for_each_labeled_graph(n, [&](const WeightedGraph& g) {
      for (VertexId v : g.vertices())
        if (g.neighbours(v).empty())
          return;
      ++line_checked;
      // Edge-degree 2r-regular in g iff the line graph is 2r-2 regular.
      const WeightedGraph lg = line_graph(g);
      for (int r = 1; r <= 4; ++r) {
        bool line_regular = true;
        for (VertexId v : lg.vertices())
          line_regular &= weighted_degree(lg, v) == 2 * r - 2;
        expect(holds(uniform_instance(g, ProblemKind::WEDCE, kVdel, 0, 2 * r)) == line_regular,
               "line-graph equivalence");
      }
    });
  o.detail += "4 named fixtures, " + std::to_string(regular) + " regular graphs, " + std::to_string(line_checked) +
              " graphs for the line-graph check";
  return o;
}

Outcome treewidth_dps() {
  long checked = 0, wrong = 0, guard_wrong = 0;
  auto check = [&](const WeightedGraph& g, int r) {
    const TreeDecomposition td = greedy_decomposition(g);
    const bool induced = reference::induced_regular(g, r);
    const bool sub = reference::regular_subgraph(g, r);
    ++checked;
    if (solve_induced_regular(g, r, td) != induced || solve_regular_subgraph(g, r, td) != sub)
      ++wrong;
    if (r > td.width() && (induced || sub))
      ++guard_wrong;
    if (solve_with_addition(g, r) != (g.num_vertices() >= static_cast<std::size_t>(r) + 1))
      ++wrong;
  };
  for (int n = 0; n <= 5; ++n)
    for_each_labeled_graph(n, [&](const WeightedGraph& g) {
      for (int r = 0; r <= 4; ++r)
        check(g, r);
    });
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const WeightedGraph g = gen::random_graph(n, 0.2 + 0.6 * gen::unit_draw(rng), rng());
    check(g, static_cast<int>(rng() % 5));
  }
  return {wrong == 0 && guard_wrong == 0, std::to_string(checked) + " (graph, r) pairs, " + std::to_string(wrong) +
                                              " disagreements, " + std::to_string(guard_wrong) + " guard errors"};
}

Outcome cli_round_trip() {
  Outcome o;
  int files = 0;
  auto fail = [&](const std::string& what) {
    o.pass = false;
    o.detail += what + "; ";
  };
  for (const auto& f : golden::instances()) {
    ++files;
    const std::string name = f.filename().string();
    const ProblemInstance inst = parse_instance(golden::read(f));
    const std::string text = serialize_instance(inst);
    if (!(parse_instance(text) == inst) || serialize_instance(parse_instance(text)) != text)
      fail(name + " does not round-trip");
    for (const char* cmd : {"solve", "oracle", "kernelize"}) {
      if (std::string(cmd) == "kernelize" && inst.kind == ProblemKind::WDCE)
        continue;
      const auto a = golden::run({cmd, f.string()});
      const auto b = golden::run({cmd, f.string()});
      if (a.out != b.out || a.err != b.err || a.code != b.code)
        fail(std::string(cmd) + " " + name + " is not reproducible");
      if (std::string(cmd) != "kernelize" && a.out != golden::read(f.string() + ".expected"))
        fail(std::string(cmd) + " " + name + " differs from the golden output");
    }
  }
  for (const auto& c : golden::tw_cases()) {
    const auto a = golden::run(c.args);
    if (a.out != c.expected + "\n" || golden::run(c.args).out != a.out)
      fail("tw case on " + c.args[1]);
  }
  const auto td_text = golden::read(golden::dir() / "k4_pendant.td");
  const TreeDecomposition td = parse_decomposition(td_text);
  if (!(parse_decomposition(serialize_decomposition(td, 5)) == td))
    fail("decomposition round trip");
  o.detail += std::to_string(files) + " instance files, " + std::to_string(golden::tw_cases().size()) + " tw cases";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle agreement", oracle_agreement},   {"reduction-rule soundness", rule_soundness},
      {"kernel-size bounds", kernel_bounds},    {"search-tree bounds", search_tree_bounds},
      {"recognizer fixtures", recognizers},     {"treewidth DPs", treewidth_dps},
      {"CLI round-trip", cli_round_trip}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all &= o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " - "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
