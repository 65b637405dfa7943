#include "amc/obdd.hpp"
#include "amc/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

namespace amc {

namespace {

constexpr std::size_t kNoLevel = std::numeric_limits<std::size_t>::max();

std::uint64_t next_store_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

std::uint64_t pair_key(std::uint32_t f, std::uint32_t g) {
  if (f > g) std::swap(f, g);
  return (static_cast<std::uint64_t>(f) << 32) | g;
}

} // namespace

std::size_t ObddStore::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.var;
  h = h * 0x9E3779B97F4A7C15ull ^ k.low;
  h = h * 0x9E3779B97F4A7C15ull ^ k.high;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

ObddStore::ObddStore(std::vector<Var> order) : id_(next_store_id()), order_(std::move(order)) {
  for (Var v : order_) {
    if (v == 0) throw ConfigError("variable order contains 0");
    max_var_ = std::max(max_var_, v);
  }
  level_of_var_.assign(max_var_ + 1, kNoLevel);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (level_of_var_[order_[i]] != kNoLevel)
      throw ConfigError("variable " + std::to_string(order_[i]) + " repeated in order");
    level_of_var_[order_[i]] = i;
  }
  // Terminal slots; their var field is unused.
  nodes_.push_back({0, kFalse, kFalse});
  nodes_.push_back({0, kTrue, kTrue});
}

std::shared_ptr<ObddStore> ObddStore::ascending(Var variable_count) {
  std::vector<Var> order(variable_count);
  for (Var v = 1; v <= variable_count; ++v) order[v - 1] = v;
  return std::make_shared<ObddStore>(std::move(order));
}

bool ObddStore::has_var(Var v) const noexcept {
  return v < level_of_var_.size() && level_of_var_[v] != kNoLevel;
}

void ObddStore::check(ObddRef f) const {
  if (f.store != id_) throw UsageError("diagram belongs to a different store");
  if (f.node >= nodes_.size()) throw UsageError("dangling diagram handle");
}

std::size_t ObddStore::level(std::uint32_t node) const {
  return is_terminal(node) ? kNoLevel : level_of_var_[nodes_[node].var];
}

std::uint32_t ObddStore::make(Var v, std::uint32_t low, std::uint32_t high) {
  if (low == high) return low;
  Key key{v, low, high};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({v, low, high});
  unique_.emplace(key, id);
  return id;
}

ObddRef ObddStore::var(Var v) {
  if (!has_var(v)) throw ConfigError("variable " + std::to_string(v) + " is not in the order");
  return {id_, make(v, kFalse, kTrue)};
}

ObddRef ObddStore::literal(Literal l) {
  ObddRef f = var(var_of(l));
  return l < 0 ? negate(f) : f;
}

ObddRef ObddStore::apply(BoolOp op, ObddRef f, ObddRef g) {
  check(f);
  check(g);
  return {id_, apply_rec(op, f.node, g.node)};
}

std::uint32_t ObddStore::apply_rec(BoolOp op, std::uint32_t f, std::uint32_t g) {
  if (op == BoolOp::And) {
    if (f == kFalse || g == kFalse) return kFalse;
    if (f == kTrue) return g;
    if (g == kTrue) return f;
  } else {
    if (f == kTrue || g == kTrue) return kTrue;
    if (f == kFalse) return g;
    if (g == kFalse) return f;
  }
  if (f == g) return f;

  auto& cache = op == BoolOp::And ? and_cache_ : or_cache_;
  const std::uint64_t key = pair_key(f, g);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const std::size_t lf = level(f);
  const std::size_t lg = level(g);
  const std::size_t top = std::min(lf, lg);
  const Var v = order_[top];
  // Copy before recursing: nodes_ may reallocate.
  const Decision df = nodes_[f];
  const Decision dg = nodes_[g];
  const std::uint32_t f0 = lf == top ? df.low : f;
  const std::uint32_t f1 = lf == top ? df.high : f;
  const std::uint32_t g0 = lg == top ? dg.low : g;
  const std::uint32_t g1 = lg == top ? dg.high : g;
  const std::uint32_t low = apply_rec(op, f0, g0);
  const std::uint32_t high = apply_rec(op, f1, g1);
  const std::uint32_t r = make(v, low, high);
  cache.emplace(key, r);
  return r;
}

ObddRef ObddStore::negate(ObddRef f) {
  check(f);
  return {id_, negate_rec(f.node)};
}

std::uint32_t ObddStore::negate_rec(std::uint32_t f) {
  if (f == kFalse) return kTrue;
  if (f == kTrue) return kFalse;
  if (auto it = negate_cache_.find(f); it != negate_cache_.end()) return it->second;
  const Decision d = nodes_[f];
  const std::uint32_t low = negate_rec(d.low);
  const std::uint32_t high = negate_rec(d.high);
  const std::uint32_t r = make(d.var, low, high);
  negate_cache_.emplace(f, r);
  negate_cache_.emplace(r, f);
  return r;
}

bool ObddStore::is_false(ObddRef f) const {
  check(f);
  return f.node == kFalse;
}

bool ObddStore::is_true(ObddRef f) const {
  check(f);
  return f.node == kTrue;
}

std::optional<std::vector<Literal>> ObddStore::satisfying_assignment(ObddRef f) const {
  check(f);
  if (f.node == kFalse) return std::nullopt;
  // In a reduced diagram every non-false node reaches true, so at each step
  // at least one child is not the false terminal.
  std::vector<Literal> path;
  std::uint32_t n = f.node;
  while (!is_terminal(n)) {
    const Decision& d = nodes_[n];
    if (d.high != kFalse) {
      path.push_back(static_cast<Literal>(d.var));
      n = d.high;
    } else {
      path.push_back(-static_cast<Literal>(d.var));
      n = d.low;
    }
  }
  std::sort(path.begin(), path.end(), [](Literal a, Literal b) { return var_of(a) < var_of(b); });
  return path;
}

bool ObddStore::evaluate(ObddRef f, std::span<const bool> assignment) const {
  check(f);
  std::uint32_t n = f.node;
  while (!is_terminal(n)) {
    const Decision& d = nodes_[n];
    if (d.var >= assignment.size()) throw UsageError("assignment does not cover variable " + std::to_string(d.var));
    n = assignment[d.var] ? d.high : d.low;
  }
  return n == kTrue;
}

std::size_t ObddStore::decision_count(ObddRef f) const {
  check(f);
  std::vector<std::uint32_t> stack{f.node};
  std::vector<bool> seen(nodes_.size(), false);
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    ++count;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  return count;
}

Circuit obdd_to_circuit(const ObddStore& store, ObddRef f) {
  return obdd_to_circuit(store, f, store.variable_count());
}

Circuit obdd_to_circuit(const ObddStore& store, ObddRef f, Var variable_count) {
  if (!store.owns(f)) throw UsageError("diagram belongs to a different store");

  // Post-order over the reachable diagram so children are emitted first.
  std::vector<std::uint32_t> post;
  std::vector<bool> seen(store.size(), false);
  std::vector<std::pair<std::uint32_t, bool>> stack{{f.node, false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      post.push_back(n);
      continue;
    }
    if (seen[n]) continue;
    seen[n] = true;
    stack.push_back({n, true});
    if (!store.is_terminal(n)) {
      stack.push_back({store.decision(n).high, false});
      stack.push_back({store.decision(n).low, false});
    }
  }

  CircuitBuilder b(variable_count);
  std::unordered_map<std::uint32_t, NodeId> translated;
  for (std::uint32_t n : post) {
    NodeId id;
    if (n == ObddStore::kFalse) {
      id = b.bottom();
    } else if (n == ObddStore::kTrue) {
      id = b.top();
    } else {
      const auto& d = store.decision(n);
      if (d.var > variable_count)
        throw ConfigError("diagram variable " + std::to_string(d.var) + " exceeds variable count");
      const auto v = static_cast<Literal>(d.var);
      const NodeId neg = b.conj({b.literal(-v), translated.at(d.low)});
      const NodeId pos = b.conj({b.literal(v), translated.at(d.high)});
      id = b.disj({neg, pos}, d.var);
    }
    translated.emplace(n, id);
  }
  return b.build(translated.at(f.node));
}

} // namespace amc
