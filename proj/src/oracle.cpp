#include "amc/oracle.hpp"
#include "amc/error.hpp"

#include <memory>

namespace amc {

bool satisfies(const Circuit& c, std::span<const bool> assignment) {
  std::vector<char> val(c.size());
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
    case NodeKind::True: val[i] = 1; break;
    case NodeKind::False: val[i] = 0; break;
    case NodeKind::Literal: {
      const bool x = assignment[var_of(n.literal)];
      val[i] = n.literal > 0 ? x : !x;
      break;
    }
    case NodeKind::And:
      val[i] = 1;
      for (NodeId ch : n.children) val[i] &= val[ch];
      break;
    case NodeKind::Or:
      val[i] = 0;
      for (NodeId ch : n.children) val[i] |= val[ch];
      break;
    }
  }
  return val[c.root()] != 0;
}

std::vector<Model> enumerate_models(const Circuit& c, std::size_t budget) {
  const Var n = c.variable_count();
  if (n > budget || n >= 63)
    throw BudgetExceeded("model enumeration over " + std::to_string(n) + " variables needs 2^" + std::to_string(n) +
                         " assignments; budget is " + std::to_string(budget) + " variables");
  std::vector<Model> models;
  auto bits = std::make_unique<bool[]>(n + 1);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < total; ++i) {
    for (Var v = 1; v <= n; ++v) bits[v] = ((i >> (v - 1)) & 1) != 0;
    if (!satisfies(c, std::span<const bool>(bits.get(), n + 1))) continue;
    Model m(n);
    for (Var v = 1; v <= n; ++v) m[v - 1] = bits[v] ? static_cast<Literal>(v) : -static_cast<Literal>(v);
    models.push_back(std::move(m));
  }
  return models;
}

Value amc_over_models(std::span<const Model> models, const SemiringDescriptor& desc, const Labeling& lab) {
  Value sum = desc.zero;
  for (const Model& m : models) {
    Value product = desc.one;
    for (Literal l : m) product = times(desc, product, lab.model_factor(l));
    sum = plus(desc, sum, product);
  }
  return sum;
}

Value amc_brute_force(const Circuit& c, const SemiringDescriptor& desc, const Labeling& lab, std::size_t budget) {
  const auto models = enumerate_models(c, budget);
  return amc_over_models(models, desc, lab);
}

} // namespace amc
