#pragma once

#include "amc/circuit.hpp"
#include "amc/semiring.hpp"

#include <span>
#include <vector>

namespace amc {

// Total assignment: one signed literal per variable, in variable order.
using Model = std::vector<Literal>;

// Boolean semantics of the circuit; assignment[v] for v in 1..n (index 0 unused).
bool satisfies(const Circuit& c, std::span<const bool> assignment);

// Tests all 2^n assignments. Assignment i sets variable v true iff bit v-1
// of i is set, so models come out with variable 1 varying fastest.
// Throws BudgetExceeded when n > budget.
std::vector<Model> enumerate_models(const Circuit& c, std::size_t budget = kDefaultBudget);

// ⊕ over the given models of the ⊗ of their literal labels, folded in order.
Value amc_over_models(std::span<const Model> models, const SemiringDescriptor& desc, const Labeling& lab);

// Reference algebraic model count by explicit enumeration.
Value amc_brute_force(const Circuit& c, const SemiringDescriptor& desc, const Labeling& lab,
                      std::size_t budget = kDefaultBudget);

} // namespace amc
