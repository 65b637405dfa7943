#pragma once

#include "amc/circuit.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace amc {

// Handle to a diagram root; only meaningful against the store that made it.
struct ObddRef {
  std::uint64_t store = 0;
  std::uint32_t node = 0;

  friend auto operator<=>(const ObddRef&, const ObddRef&) = default;
};

enum class BoolOp { And, Or };

// Reduced ordered BDD manager with a unique table and apply/negate caches.
// Terminal ids are fixed: 0 is false, 1 is true. Not thread-safe.
class ObddStore {
public:
  static constexpr std::uint32_t kFalse = 0;
  static constexpr std::uint32_t kTrue = 1;

  struct Decision {
    Var var;
    std::uint32_t low;
    std::uint32_t high;
  };

  explicit ObddStore(std::vector<Var> order);
  static std::shared_ptr<ObddStore> ascending(Var variable_count);

  ObddStore(const ObddStore&) = delete;
  ObddStore& operator=(const ObddStore&) = delete;

  std::uint64_t id() const noexcept { return id_; }
  const std::vector<Var>& order() const noexcept { return order_; }
  bool has_var(Var v) const noexcept;
  // Largest variable index in the order.
  Var variable_count() const noexcept { return max_var_; }

  ObddRef zero() const noexcept { return {id_, kFalse}; }
  ObddRef one() const noexcept { return {id_, kTrue}; }
  ObddRef var(Var v);
  ObddRef literal(Literal l);

  ObddRef apply(BoolOp op, ObddRef f, ObddRef g);
  ObddRef conjoin(ObddRef f, ObddRef g) { return apply(BoolOp::And, f, g); }
  ObddRef disjoin(ObddRef f, ObddRef g) { return apply(BoolOp::Or, f, g); }
  ObddRef negate(ObddRef f);

  bool is_false(ObddRef f) const;
  bool is_true(ObddRef f) const;
  // Literals along one path to terminal 1; unlisted variables are free.
  std::optional<std::vector<Literal>> satisfying_assignment(ObddRef f) const;
  // assignment[v] is the value of variable v; index 0 is unused.
  bool evaluate(ObddRef f, std::span<const bool> assignment) const;
  std::size_t decision_count(ObddRef f) const;

  bool is_terminal(std::uint32_t node) const noexcept { return node <= kTrue; }
  const Decision& decision(std::uint32_t node) const { return nodes_.at(node); }
  std::size_t size() const noexcept { return nodes_.size(); }

  bool owns(ObddRef f) const noexcept { return f.store == id_ && f.node < nodes_.size(); }

private:
  struct Key {
    Var var;
    std::uint32_t low;
    std::uint32_t high;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  void check(ObddRef f) const;
  std::size_t level(std::uint32_t node) const;
  std::uint32_t make(Var v, std::uint32_t low, std::uint32_t high);
  std::uint32_t apply_rec(BoolOp op, std::uint32_t f, std::uint32_t g);
  std::uint32_t negate_rec(std::uint32_t f);

  std::uint64_t id_;
  std::vector<Var> order_;
  std::vector<std::size_t> level_of_var_; // npos for variables outside the order
  Var max_var_ = 0;
  std::vector<Decision> nodes_;
  std::unordered_map<Key, std::uint32_t, KeyHash> unique_;
  std::unordered_map<std::uint64_t, std::uint32_t> and_cache_;
  std::unordered_map<std::uint64_t, std::uint32_t> or_cache_;
  std::unordered_map<std::uint32_t, std::uint32_t> negate_cache_;
};

// Each decision (v, lo, hi) becomes OR(AND(-v, lo'), AND(v, hi')); shared
// diagram nodes map to shared circuit nodes.
Circuit obdd_to_circuit(const ObddStore& store, ObddRef f, Var variable_count);
Circuit obdd_to_circuit(const ObddStore& store, ObddRef f);

} // namespace amc
