#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edit_script.hpp"
#include "instance.hpp"
#include "treewidth.hpp"

namespace fptedit {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {

// Splits one line into tokens. '#' starts a comment; whitespace inside
// braces does not split, so "{1, 2}" stays one token.
inline std::vector<std::string> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : line) {
    if (ch == '#' && depth == 0)
      break;
    if (ch == '{')
      ++depth;
    if (ch == '}' && --depth < 0)
      throw ParseError(lineno, "unbalanced '}'");
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (depth == 0 && !cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
      continue;
    }
    cur += ch;
  }
  if (depth != 0)
    throw ParseError(lineno, "unterminated '{'");
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

inline std::int64_t parse_int(std::string_view s, std::size_t lineno, const std::string& what) {
  std::int64_t value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw ParseError(lineno, "expected an integer for " + what + ", got '" + std::string(s) + "'");
  return value;
}

inline int parse_small(std::string_view s, std::size_t lineno, const std::string& what, std::int64_t lo) {
  const std::int64_t v = parse_int(s, lineno, what);
  if (v < lo || v > std::numeric_limits<int>::max())
    throw ParseError(lineno, what + " out of range: " + std::string(s));
  return static_cast<int>(v);
}

inline ValueSet parse_value_set(std::string_view s, std::size_t lineno) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ParseError(lineno, "expected a set like {1,3..5}, got '" + std::string(s) + "'");
  std::vector<int> values;
  std::string_view body = s.substr(1, s.size() - 2);
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    if (comma != std::string_view::npos && body.empty())
      throw ParseError(lineno, "trailing ',' in set");
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      values.push_back(parse_small(item, lineno, "set value", 0));
      continue;
    }
    const int lo = parse_small(item.substr(0, dots), lineno, "range start", 0);
    const int hi = parse_small(item.substr(dots + 2), lineno, "range end", 0);
    if (lo > hi)
      throw ParseError(lineno, "empty range " + std::string(item));
    if (hi - lo > 1000000)
      throw ParseError(lineno, "range too large: " + std::string(item));
    for (int x = lo; x <= hi; ++x)
      values.push_back(x);
  }
  if (values.empty())
    throw ParseError(lineno, "empty set");
  return ValueSet(std::move(values));
}

// Splits "key=value"; returns nullopt if the token has another key.
inline std::optional<std::string_view> option_value(std::string_view token, std::string_view key) {
  if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=')
    return std::nullopt;
  return token.substr(key.size() + 1);
}

} // namespace detail

// Reads the text instance format. Missing weights default to 1; nu and xi
// pairs not listed take the declared defaults, else the full range [0..lambda]
// or [0..mu]. Isolated vertices of WEDCE instances are dropped.
inline ProblemInstance parse_instance(const std::string& text) {
  ProblemInstance inst;
  ConstraintSet& c = inst.constraints;
  bool have_problem = false, have_ops = false, have_k = false, have_r = false;
  std::optional<std::size_t> lambda_line, mu_line, nu_default_line, xi_default_line;
  std::map<VertexId, std::size_t> vertex_lines;
  std::map<Edge, std::size_t> edge_lines;
  std::vector<std::pair<std::size_t, const ValueSet*>> delta_refs;
  std::vector<std::pair<std::size_t, Edge>> nu_lines, xi_lines;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::vector<std::string> t = detail::tokenize(raw, lineno);
    if (t.empty())
      continue;
    const std::string& d = t[0];
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (t.size() < lo || t.size() > hi)
        throw ParseError(lineno, "wrong number of fields for '" + d + "'");
    };
    auto once = [&](bool& flag) {
      if (flag)
        throw ParseError(lineno, "duplicate '" + d + "' directive");
      flag = true;
    };
    if (d != "problem" && !have_problem)
      throw ParseError(lineno, "the first directive must be 'problem'");

    if (d == "problem") {
      need(2, 2);
      once(have_problem);
      auto kind = parse_problem_kind(t[1]);
      if (!kind)
        throw ParseError(lineno, "unknown problem kind '" + t[1] + "'");
      inst.kind = *kind;
    } else if (d == "ops") {
      need(2, 4);
      once(have_ops);
      for (std::size_t i = 1; i < t.size(); ++i) {
        auto op = parse_edit_kind(t[i]);
        if (!op)
          throw ParseError(lineno, "unknown operation '" + t[i] + "'");
        if (inst.ops.contains(*op))
          throw ParseError(lineno, "operation '" + t[i] + "' listed twice");
        inst.ops.insert(*op);
      }
      if (inst.kind == ProblemKind::WEDCE && inst.ops.contains(EditKind::AddEdge))
        throw ParseError(lineno, "eadd is not available for WEDCE");
    } else if (d == "k") {
      need(2, 2);
      once(have_k);
      inst.k = detail::parse_int(t[1], lineno, "k");
    } else if (d == "r") {
      need(2, 2);
      once(have_r);
      c.r = detail::parse_small(t[1], lineno, "r", 0);
    } else if (d == "lambda" || d == "mu") {
      need(2, 2);
      const bool is_lambda = d == "lambda";
      if (is_lambda ? !uses_nu(inst.kind) : !uses_xi(inst.kind))
        throw ParseError(lineno, "'" + d + "' does not apply to " + to_string(inst.kind));
      auto& line = is_lambda ? lambda_line : mu_line;
      if (line)
        throw ParseError(lineno, "duplicate '" + d + "' directive");
      line = lineno;
      (is_lambda ? c.lambda : c.mu) = detail::parse_small(t[1], lineno, d, 0);
    } else if (d == "vertex") {
      need(2, 4);
      const VertexId v = detail::parse_small(t[1], lineno, "vertex id", 0);
      if (vertex_lines.count(v))
        throw ParseError(lineno, "duplicate vertex " + t[1]);
      Weight weight = 1;
      std::optional<ValueSet> delta;
      for (std::size_t i = 2; i < t.size(); ++i) {
        if (auto w = detail::option_value(t[i], "weight")) {
          weight = detail::parse_int(*w, lineno, "weight");
          if (weight < 1)
            throw ParseError(lineno, "weights must be positive");
        } else if (auto s = detail::option_value(t[i], "delta")) {
          if (!uses_vertex_lists(inst.kind))
            throw ParseError(lineno, "vertex degree lists do not apply to WEDCE");
          delta = detail::parse_value_set(*s, lineno);
        } else {
          throw ParseError(lineno, "unknown vertex attribute '" + t[i] + "'");
        }
      }
      inst.graph.add_vertex(v, weight);
      vertex_lines[v] = lineno;
      if (delta) {
        c.delta_v[v] = *delta;
        delta_refs.emplace_back(lineno, &c.delta_v[v]);
      }
    } else if (d == "edge") {
      need(3, 5);
      const VertexId a = detail::parse_small(t[1], lineno, "vertex id", 0);
      const VertexId b = detail::parse_small(t[2], lineno, "vertex id", 0);
      if (a == b)
        throw ParseError(lineno, "self-loops are not allowed");
      if (!vertex_lines.count(a) || !vertex_lines.count(b))
        throw ParseError(lineno, "edge uses an undeclared vertex");
      const Edge e = make_edge(a, b);
      if (edge_lines.count(e))
        throw ParseError(lineno, "duplicate edge " + WeightedGraph::describe(e));
      Weight weight = 1;
      std::optional<ValueSet> delta;
      for (std::size_t i = 3; i < t.size(); ++i) {
        if (auto w = detail::option_value(t[i], "weight")) {
          weight = detail::parse_int(*w, lineno, "weight");
          if (weight < 1)
            throw ParseError(lineno, "weights must be positive");
        } else if (auto s = detail::option_value(t[i], "delta")) {
          if (inst.kind != ProblemKind::WEDCE)
            throw ParseError(lineno, "edge-degree lists only apply to WEDCE");
          delta = detail::parse_value_set(*s, lineno);
        } else {
          throw ParseError(lineno, "unknown edge attribute '" + t[i] + "'");
        }
      }
      inst.graph.add_edge(a, b, weight);
      edge_lines[e] = lineno;
      if (delta) {
        c.delta_e[e] = *delta;
        delta_refs.emplace_back(lineno, &c.delta_e[e]);
      }
    } else if (d == "nu" || d == "xi") {
      need(4, 4);
      const bool is_nu = d == "nu";
      if (is_nu ? !uses_nu(inst.kind) : !uses_xi(inst.kind))
        throw ParseError(lineno, "'" + d + "' does not apply to " + to_string(inst.kind));
      const VertexId a = detail::parse_small(t[1], lineno, "vertex id", 0);
      const VertexId b = detail::parse_small(t[2], lineno, "vertex id", 0);
      if (a == b)
        throw ParseError(lineno, "'" + d + "' needs two distinct vertices");
      if (!vertex_lines.count(a) || !vertex_lines.count(b))
        throw ParseError(lineno, "'" + d + "' uses an undeclared vertex");
      auto& map = is_nu ? c.nu : c.xi;
      const Edge e = make_edge(a, b);
      if (map.count(e))
        throw ParseError(lineno, "duplicate '" + d + "' entry for " + WeightedGraph::describe(e));
      map[e] = detail::parse_value_set(t[3], lineno);
      (is_nu ? nu_lines : xi_lines).emplace_back(lineno, e);
    } else if (d == "default") {
      need(3, 3);
      const bool is_nu = t[1] == "nu";
      if (!is_nu && t[1] != "xi")
        throw ParseError(lineno, "'default' takes nu or xi");
      if (is_nu ? !uses_nu(inst.kind) : !uses_xi(inst.kind))
        throw ParseError(lineno, "default " + t[1] + " does not apply to " + to_string(inst.kind));
      auto& line = is_nu ? nu_default_line : xi_default_line;
      if (line)
        throw ParseError(lineno, "duplicate default " + t[1]);
      line = lineno;
      (is_nu ? c.nu_default : c.xi_default) = detail::parse_value_set(t[2], lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + d + "'");
    }
  }

  const std::size_t end = lineno + 1;
  if (!have_problem)
    throw ParseError(end, "missing 'problem' directive");
  if (!have_ops)
    throw ParseError(end, "missing 'ops' directive");
  if (!have_k)
    throw ParseError(end, "missing 'k' directive");
  if (!have_r)
    throw ParseError(end, "missing 'r' directive");
  if (uses_nu(inst.kind) && !c.lambda)
    throw ParseError(end, "missing 'lambda' directive");
  if (uses_xi(inst.kind) && !c.mu)
    throw ParseError(end, "missing 'mu' directive");
  if (c.lambda && *c.lambda > c.r)
    throw ParseError(*lambda_line, "lambda exceeds r");
  if (c.mu && *c.mu > c.r)
    throw ParseError(*mu_line, "mu exceeds r");

  for (const auto& [line, s] : delta_refs)
    if (s->max() > c.r)
      throw ParseError(line, "degree list " + s->to_string() + " exceeds r = " + std::to_string(c.r));
  if (uses_vertex_lists(inst.kind)) {
    for (const auto& [v, line] : vertex_lines)
      if (!c.delta_v.count(v))
        throw ParseError(line, "vertex " + std::to_string(v) + " has no delta list");
  } else {
    for (const auto& [e, line] : edge_lines)
      if (!c.delta_e.count(e))
        throw ParseError(line, "edge " + WeightedGraph::describe(e) + " has no delta list");
  }
  if (uses_nu(inst.kind)) {
    if (!nu_default_line)
      c.nu_default = ValueSet::range(0, *c.lambda);
    else if (c.nu_default.max() > *c.lambda)
      throw ParseError(*nu_default_line, "default nu exceeds lambda");
    for (const auto& [line, e] : nu_lines)
      if (c.nu.at(e).max() > *c.lambda)
        throw ParseError(line, "nu list exceeds lambda");
  }
  if (uses_xi(inst.kind)) {
    if (!xi_default_line)
      c.xi_default = ValueSet::range(0, *c.mu);
    else if (c.xi_default.max() > *c.mu)
      throw ParseError(*xi_default_line, "default xi exceeds mu");
    for (const auto& [line, e] : xi_lines)
      if (c.xi.at(e).max() > *c.mu)
        throw ParseError(line, "xi list exceeds mu");
  }

  if (inst.kind == ProblemKind::WEDCE)
    for (VertexId v : inst.graph.vertices())
      if (inst.graph.neighbours(v).empty())
        inst.graph.remove_vertex(v);
  inst.unit_weights = is_unit_weight(inst.graph);
  try {
    validate(inst);
  } catch (const InstanceError& e) {
    throw ParseError(end, e.what());
  }
  return inst;
}

inline std::string serialize_instance(const ProblemInstance& inst) {
  const ConstraintSet& c = inst.constraints;
  std::ostringstream out;
  out << "problem " << to_string(inst.kind) << '\n';
  out << "ops " << inst.ops.to_string() << '\n';
  out << "k " << inst.k << '\n';
  out << "r " << c.r << '\n';
  if (uses_nu(inst.kind) && c.lambda)
    out << "lambda " << *c.lambda << '\n';
  if (uses_xi(inst.kind) && c.mu)
    out << "mu " << *c.mu << '\n';
  if (uses_nu(inst.kind))
    out << "default nu " << c.nu_default.to_string() << '\n';
  if (uses_xi(inst.kind))
    out << "default xi " << c.xi_default.to_string() << '\n';
  for (VertexId v : inst.graph.vertices()) {
    out << "vertex " << v << " weight=" << inst.graph.vertex_weight(v);
    if (uses_vertex_lists(inst.kind))
      if (const ValueSet* s = c.vertex_list(v))
        out << " delta=" << s->to_string();
    out << '\n';
  }
  for (Edge e : inst.graph.edges()) {
    out << "edge " << e.u << ' ' << e.v << " weight=" << inst.graph.edge_weight(e.u, e.v);
    if (inst.kind == ProblemKind::WEDCE)
      if (const ValueSet* s = c.edge_list(e))
        out << " delta=" << s->to_string();
    out << '\n';
  }
  if (uses_nu(inst.kind))
    for (const auto& [e, s] : c.nu)
      out << "nu " << e.u << ' ' << e.v << ' ' << s.to_string() << '\n';
  if (uses_xi(inst.kind))
    for (const auto& [e, s] : c.xi)
      out << "xi " << e.u << ' ' << e.v << ' ' << s.to_string() << '\n';
  return out.str();
}

// One edit per line. A leading "YES cost=<c>" line, as printed by the
// solver, is skipped.
inline EditScript parse_script(const std::string& text) {
  EditScript script;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::vector<std::string> t = detail::tokenize(raw, lineno);
    if (t.empty())
      continue;
    if (!seen_content && t[0] == "YES") {
      seen_content = true;
      continue;
    }
    seen_content = true;
    auto kind = parse_edit_kind(t[0]);
    if (!kind)
      throw ParseError(lineno, "unknown edit '" + t[0] + "'");
    if (*kind == EditKind::DeleteVertex) {
      if (t.size() != 2)
        throw ParseError(lineno, "vdel takes one vertex");
      script.ops.push_back(EditOp::delete_vertex(detail::parse_small(t[1], lineno, "vertex id", 0)));
      continue;
    }
    if (t.size() != 3)
      throw ParseError(lineno, t[0] + " takes two vertices");
    const VertexId a = detail::parse_small(t[1], lineno, "vertex id", 0);
    const VertexId b = detail::parse_small(t[2], lineno, "vertex id", 0);
    if (a == b)
      throw ParseError(lineno, t[0] + " needs two distinct vertices");
    script.ops.push_back(*kind == EditKind::DeleteEdge ? EditOp::delete_edge(a, b) : EditOp::add_edge(a, b));
  }
  return script;
}

inline std::string serialize_script(const EditScript& script) {
  std::string out;
  for (const EditOp& op : script.ops)
    out += to_string(op) + '\n';
  return out;
}

// PACE .td format: "s td <bags> <width+1> <vertices>", "b <id> <v...>",
// then one tree edge per line. Lines starting with 'c' are comments.
inline TreeDecomposition parse_decomposition(const std::string& text) {
  TreeDecomposition td;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::int64_t> bag_count, bag_size;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::vector<std::string> t = detail::tokenize(raw, lineno);
    if (t.empty() || t[0] == "c")
      continue;
    if (t[0] == "s") {
      if (bag_count)
        throw ParseError(lineno, "duplicate header");
      if (t.size() != 5 || t[1] != "td")
        throw ParseError(lineno, "expected 's td <bags> <width+1> <vertices>'");
      bag_count = detail::parse_int(t[2], lineno, "bag count");
      bag_size = detail::parse_int(t[3], lineno, "bag size");
      detail::parse_int(t[4], lineno, "vertex count");
      continue;
    }
    if (!bag_count)
      throw ParseError(lineno, "missing 's td' header");
    if (t[0] == "b") {
      if (t.size() < 2)
        throw ParseError(lineno, "bag line needs an id");
      const int id = detail::parse_small(t[1], lineno, "bag id", 0);
      if (td.bags.count(id))
        throw ParseError(lineno, "duplicate bag " + t[1]);
      std::vector<VertexId> bag;
      for (std::size_t i = 2; i < t.size(); ++i)
        bag.push_back(detail::parse_small(t[i], lineno, "vertex id", 0));
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
        throw ParseError(lineno, "bag repeats a vertex");
      td.bags[id] = bag;
      continue;
    }
    if (t.size() != 2)
      throw ParseError(lineno, "expected a tree edge '<bag> <bag>'");
    td.tree.emplace_back(detail::parse_small(t[0], lineno, "bag id", 0), detail::parse_small(t[1], lineno, "bag id", 0));
  }
  if (!bag_count)
    throw ParseError(lineno + 1, "missing 's td' header");
  if (*bag_count != static_cast<std::int64_t>(td.bags.size()))
    throw ParseError(lineno + 1, "header announces " + std::to_string(*bag_count) + " bags, found " +
                                     std::to_string(td.bags.size()));
  if (*bag_size != td.width() + 1 && !td.bags.empty())
    throw ParseError(lineno + 1, "header width does not match the bags");
  return td;
}

inline std::string serialize_decomposition(const TreeDecomposition& td, std::size_t num_vertices) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << num_vertices << '\n';
  for (const auto& [id, bag] : td.bags) {
    out << "b " << id;
    for (VertexId v : bag)
      out << ' ' << v;
    out << '\n';
  }
  for (const auto& [a, b] : td.tree)
    out << a << ' ' << b << '\n';
  return out.str();
}

} // namespace fptedit
