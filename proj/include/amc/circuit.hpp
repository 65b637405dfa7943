#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace amc {

using Var = std::uint32_t;
using Literal = std::int32_t;
using NodeId = std::uint32_t;

inline Var var_of(Literal l) { return static_cast<Var>(l < 0 ? -l : l); }

enum class NodeKind : std::uint8_t { True, False, Literal, And, Or };

struct Node {
  NodeKind kind = NodeKind::True;
  Literal literal = 0;          // Literal nodes
  Var decision = 0;             // Or nodes: c2d decision hint (0 = none), never trusted
  std::vector<NodeId> children; // And / Or nodes

  friend bool operator==(const Node&, const Node&) = default;
};

// Rooted NNF DAG stored in topological order: every child id is smaller than
// its parent's id and the root is the last node.
class Circuit {
public:
  Circuit(Var variable_count, std::vector<Node> nodes);

  Var variable_count() const noexcept { return variable_count_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return static_cast<NodeId>(nodes_.size() - 1); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::span<const Node> nodes() const noexcept { return nodes_; }

  std::size_t edge_count() const;
  // reachable()[i] is true iff node i lies below the root.
  std::vector<bool> reachable() const;
  bool has_reachable_false() const;
  bool has_negative_literal() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

private:
  Var variable_count_;
  std::vector<Node> nodes_;
};

// Append-only construction with optional structural hashing.
class CircuitBuilder {
public:
  explicit CircuitBuilder(Var variable_count, bool dedup = true);

  NodeId add(Node node);
  NodeId top();
  NodeId bottom();
  NodeId literal(Literal l);
  NodeId conj(std::vector<NodeId> children);
  NodeId disj(std::vector<NodeId> children, Var decision = 0);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  Var variable_count() const noexcept { return variable_count_; }

  // Keeps only the nodes below `root` (original relative order), root last.
  Circuit build(NodeId root) const;

private:
  struct NodeHash {
    std::size_t operator()(const Node& n) const;
  };
  Var variable_count_;
  bool dedup_;
  std::vector<Node> nodes_;
  std::unordered_map<Node, NodeId, NodeHash> index_;
};

// c2d NNF text format. Parsing validates the header counts and
// deduplicates structurally identical nodes.
Circuit parse_nnf(std::string_view text);
std::string write_nnf(const Circuit& c);

// Sorted variables mentioned below each node.
std::vector<std::vector<Var>> mentioned_vars(const Circuit& c);

enum class Tri { No, Yes, Undecided };

struct DecomposabilityWitness {
  NodeId node;
  Var variable;
  NodeId child_a;
  NodeId child_b;
};

struct DeterminismWitness {
  NodeId node;
  NodeId child_a;
  NodeId child_b;
  std::vector<Literal> shared_model;
};

struct SmoothnessWitness {
  NodeId node;
  NodeId child_a;
  NodeId child_b;
  Var variable;
};

struct DecomposabilityResult {
  bool holds = true;
  std::optional<DecomposabilityWitness> witness;
};

struct SmoothnessResult {
  bool holds = true;
  std::optional<SmoothnessWitness> witness;
};

struct DeterminismResult {
  Tri holds = Tri::Yes;
  std::optional<DeterminismWitness> witness;
};

inline constexpr std::size_t kDefaultBudget = 24;

DecomposabilityResult check_decomposable(const Circuit& c);
SmoothnessResult check_smooth(const Circuit& c);
// Sound but incomplete: every OR is a decision on some variable.
bool check_deterministic_syntactic(const Circuit& c);
// Exact pairwise inconsistency via OBDDs; Undecided when a child pair
// mentions more than `budget` variables and no violation was found.
DeterminismResult check_deterministic_semantic(const Circuit& c, std::size_t budget = kDefaultBudget);

struct CircuitClass {
  bool decomposable = false;
  bool deterministic = false;
  bool smooth = false;

  // NNF, s-NNF, d-NNF, sd-NNF, DNNF, s-DNNF, d-DNNF, sd-DNNF
  std::string name() const;
  friend bool operator==(const CircuitClass&, const CircuitClass&) = default;
};

struct PropertyReport {
  DecomposabilityResult decomposable;
  DeterminismResult deterministic;
  bool determinism_semantic = true; // false when the syntactic fallback was used
  SmoothnessResult smooth;
  bool lower_bound = false;         // determinism undecided, class is "at least"
  std::string class_label;

  CircuitClass circuit_class() const;
};

PropertyReport classify_circuit(const Circuit& c, std::size_t budget = kDefaultBudget);

// Conjoins every OR child with OR(v, -v) gadgets for the variables it misses
// relative to its siblings. With `extend_root` the root is also extended to
// mention all of 1..variable_count (unless it is FALSE).
Circuit smooth(const Circuit& c, bool extend_root = false);

} // namespace amc
