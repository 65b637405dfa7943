#include "amc/compile.hpp"
#include "amc/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace amc {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T number(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

} // namespace

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  bool have_header = false;
  std::size_t declared = 0, seen = 0, line_no = 0, pos = 0;
  std::vector<Literal> clause;

  auto finish_clause = [&]() {
    ++seen;
    std::vector<Literal> unique;
    for (Literal l : clause)
      if (std::find(unique.begin(), unique.end(), l) == unique.end()) unique.push_back(l);
    const bool tautology = std::any_of(unique.begin(), unique.end(), [&](Literal l) {
      return std::find(unique.begin(), unique.end(), -l) != unique.end();
    });
    if (tautology) {
      cnf.notices.push_back("clause " + std::to_string(seen) + " (line " + std::to_string(line_no) +
                            ") is tautological; dropped");
    } else {
      cnf.clauses.push_back(std::move(unique));
    }
    clause.clear();
  };

  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = tokens(line);
    if (tok.empty() || tok[0].front() == 'c') continue;
    if (tok[0] == "%") break; // SATLIB end marker
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "p" || tok[1] != "cnf") throw ParseError(line_no, "expected 'p cnf <vars> <clauses>'");
      cnf.variable_count = number<Var>(tok[2], line_no);
      declared = number<std::size_t>(tok[3], line_no);
      have_header = true;
      continue;
    }
    for (auto t : tok) {
      const auto l = number<Literal>(t, line_no);
      if (l == 0) {
        finish_clause();
        continue;
      }
      if (var_of(l) > cnf.variable_count)
        throw ParseError(line_no, "literal " + std::string(t) + " out of range (" + std::to_string(cnf.variable_count) +
                                      " variables)");
      clause.push_back(l);
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!clause.empty()) throw ParseError(line_no, "last clause is missing its terminating 0");
  if (seen != declared)
    throw ParseError(line_no, "header declares " + std::to_string(declared) + " clauses but body has " +
                                  std::to_string(seen));
  return cnf;
}

void validate_order(const Cnf& cnf, const std::vector<Var>& order) {
  std::vector<bool> in_order(cnf.variable_count + 1, false);
  for (Var v : order) {
    if (v == 0 || v > cnf.variable_count)
      throw ConfigError("order variable " + std::to_string(v) + " outside 1.." + std::to_string(cnf.variable_count));
    if (in_order[v]) throw ConfigError("order repeats variable " + std::to_string(v));
    in_order[v] = true;
  }
  for (const auto& clause : cnf.clauses)
    for (Literal l : clause)
      if (!in_order[var_of(l)]) throw ConfigError("order is missing variable " + std::to_string(var_of(l)));
}

ObddRef compile_cnf_to_obdd(const Cnf& cnf, ObddStore& store) {
  std::vector<ObddRef> layer;
  layer.reserve(cnf.clauses.size());
  for (const auto& clause : cnf.clauses) {
    ObddRef d = store.zero();
    for (Literal l : clause) d = store.disjoin(d, store.literal(l));
    layer.push_back(d);
  }
  if (layer.empty()) return store.one();
  while (layer.size() > 1) {
    std::vector<ObddRef> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(store.conjoin(layer[i], layer[i + 1]));
    if (layer.size() % 2) next.push_back(layer.back());
    layer.swap(next);
  }
  return layer.front();
}

Circuit compile_cnf_to_sddnnf(const Cnf& cnf, const std::vector<Var>& order, CompileStats* stats) {
  std::vector<Var> effective = order;
  if (effective.empty())
    for (Var v = 1; v <= cnf.variable_count; ++v) effective.push_back(v);
  validate_order(cnf, effective);
  ObddStore store(effective);
  const ObddRef f = compile_cnf_to_obdd(cnf, store);
  Circuit c = smooth(obdd_to_circuit(store, f, cnf.variable_count), /*extend_root=*/true);
  if (stats) {
    stats->diagram_nodes = store.decision_count(f);
    stats->circuit_nodes = c.size();
    stats->circuit_edges = c.edge_count();
  }
  return c;
}

} // namespace amc
