#pragma once

#include "amc/circuit.hpp"
#include "amc/obdd.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace amc {

struct Cnf {
  Var variable_count = 0;
  std::vector<std::vector<Literal>> clauses;
  std::vector<std::string> notices; // e.g. dropped tautological clauses
};

// DIMACS CNF. Duplicate literals are merged and tautological clauses dropped
// (with a notice); the header's clause count must match the body.
Cnf parse_dimacs(std::string_view text);

// Throws ConfigError unless every variable used by a clause appears in the
// order and every order entry lies in 1..variable_count.
void validate_order(const Cnf& cnf, const std::vector<Var>& order);

// Conjunction of the per-clause diagrams, combined pairwise in a balanced tree.
ObddRef compile_cnf_to_obdd(const Cnf& cnf, ObddStore& store);

struct CompileStats {
  std::size_t diagram_nodes = 0;
  std::size_t circuit_nodes = 0;
  std::size_t circuit_edges = 0;
};

// CNF -> OBDD -> decision circuit -> smoothed over all variables. An empty
// order means ascending variable index.
Circuit compile_cnf_to_sddnnf(const Cnf& cnf, const std::vector<Var>& order = {}, CompileStats* stats = nullptr);

} // namespace amc
