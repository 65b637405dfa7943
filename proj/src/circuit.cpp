#include "amc/circuit.hpp"
#include "amc/error.hpp"
#include "amc/obdd.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace amc {

namespace {

void validate_node(const Node& n, NodeId id, Var variable_count) {
  switch (n.kind) {
  case NodeKind::True:
  case NodeKind::False:
    if (!n.children.empty()) throw UsageError("constant node with children");
    break;
  case NodeKind::Literal:
    if (!n.children.empty()) throw UsageError("literal node with children");
    if (n.literal == 0 || var_of(n.literal) > variable_count)
      throw UsageError("literal " + std::to_string(n.literal) + " out of range");
    break;
  case NodeKind::And:
  case NodeKind::Or:
    for (NodeId c : n.children)
      if (c >= id) throw UsageError("child " + std::to_string(c) + " does not precede node " + std::to_string(id));
    if (n.decision > variable_count) throw UsageError("decision variable out of range");
    break;
  }
}

} // namespace

Circuit::Circuit(Var variable_count, std::vector<Node> nodes)
    : variable_count_(variable_count), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw UsageError("circuit has no nodes");
  for (NodeId i = 0; i < nodes_.size(); ++i) validate_node(nodes_[i], i, variable_count_);
}

std::size_t Circuit::edge_count() const {
  std::size_t e = 0;
  for (const Node& n : nodes_) e += n.children.size();
  return e;
}

std::vector<bool> Circuit::reachable() const {
  std::vector<bool> r(nodes_.size(), false);
  r[root()] = true;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (!r[i]) continue;
    for (NodeId c : nodes_[i].children) r[c] = true;
  }
  return r;
}

bool Circuit::has_reachable_false() const {
  auto r = reachable();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (r[i] && nodes_[i].kind == NodeKind::False) return true;
  return false;
}

bool Circuit::has_negative_literal() const {
  auto r = reachable();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (r[i] && nodes_[i].kind == NodeKind::Literal && nodes_[i].literal < 0) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Builder

std::size_t CircuitBuilder::NodeHash::operator()(const Node& n) const {
  std::uint64_t h = static_cast<std::uint64_t>(n.kind) + 0x51ED27u;
  auto mix = [&h](std::uint64_t x) { h = (h ^ x) * 0x100000001B3ull; };
  mix(static_cast<std::uint32_t>(n.literal));
  mix(n.decision);
  for (NodeId c : n.children) mix(c + 1);
  return static_cast<std::size_t>(h);
}

CircuitBuilder::CircuitBuilder(Var variable_count, bool dedup) : variable_count_(variable_count), dedup_(dedup) {}

NodeId CircuitBuilder::add(Node node) {
  validate_node(node, static_cast<NodeId>(nodes_.size()), variable_count_);
  if (dedup_) {
    if (auto it = index_.find(node); it != index_.end()) return it->second;
  }
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(node);
  if (dedup_) index_.emplace(std::move(node), id);
  return id;
}

NodeId CircuitBuilder::top() {
  Node n;
  return add(std::move(n));
}
NodeId CircuitBuilder::bottom() {
  Node n;
  n.kind = NodeKind::False;
  return add(std::move(n));
}

NodeId CircuitBuilder::literal(Literal l) {
  Node n;
  n.kind = NodeKind::Literal;
  n.literal = l;
  return add(std::move(n));
}

NodeId CircuitBuilder::conj(std::vector<NodeId> children) {
  if (children.empty()) return top();
  Node n;
  n.kind = NodeKind::And;
  n.children = std::move(children);
  return add(std::move(n));
}

NodeId CircuitBuilder::disj(std::vector<NodeId> children, Var decision) {
  if (children.empty()) return bottom();
  Node n;
  n.kind = NodeKind::Or;
  n.decision = decision;
  n.children = std::move(children);
  return add(std::move(n));
}

Circuit CircuitBuilder::build(NodeId root) const {
  if (root >= nodes_.size()) throw UsageError("root out of range");
  std::vector<bool> keep(root + 1, false);
  keep[root] = true;
  for (std::size_t i = root + 1; i-- > 0;) {
    if (!keep[i]) continue;
    for (NodeId c : nodes_[i].children) keep[c] = true;
  }
  std::vector<NodeId> remap(root + 1, 0);
  std::vector<Node> out;
  for (NodeId i = 0; i <= root; ++i) {
    if (!keep[i]) continue;
    Node n = nodes_[i];
    for (NodeId& c : n.children) c = remap[c];
    remap[i] = static_cast<NodeId>(out.size());
    out.push_back(std::move(n));
  }
  return Circuit(variable_count_, std::move(out));
}

// ---------------------------------------------------------------------------
// c2d NNF format

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
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
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

} // namespace

Circuit parse_nnf(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::size_t node_count = 0, edge_count = 0, edges_seen = 0;
  Var var_count = 0;
  std::vector<NodeId> file_to_node;
  std::optional<CircuitBuilder> builder;

  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") {
      if (end == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (tok[0] != "nnf" || tok.size() != 4) throw ParseError(line_no, "expected header 'nnf <nodes> <edges> <vars>'");
      node_count = parse_number<std::size_t>(tok[1], line_no, "node count");
      edge_count = parse_number<std::size_t>(tok[2], line_no, "edge count");
      var_count = parse_number<Var>(tok[3], line_no, "variable count");
      if (node_count == 0) throw ParseError(line_no, "circuit must have at least one node");
      builder.emplace(var_count);
      have_header = true;
      continue;
    }

    const std::size_t id = file_to_node.size();
    if (id >= node_count) throw ParseError(line_no, "more nodes than the header declares (" + std::to_string(node_count) + ")");

    auto read_children = [&](std::size_t first, std::size_t count) {
      if (tok.size() != first + count)
        throw ParseError(line_no, "expected " + std::to_string(count) + " child ids");
      std::vector<NodeId> children;
      children.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        auto c = parse_number<std::size_t>(tok[first + i], line_no, "child id");
        if (c >= id) throw ParseError(line_no, "child " + std::to_string(c) + " is a forward reference");
        children.push_back(file_to_node[c]);
      }
      edges_seen += count;
      return children;
    };

    NodeId node;
    if (tok[0] == "L") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'L <literal>'");
      auto l = parse_number<Literal>(tok[1], line_no, "literal");
      if (l == 0 || var_of(l) > var_count) throw ParseError(line_no, "literal " + std::string(tok[1]) + " out of range");
      node = builder->literal(l);
    } else if (tok[0] == "A") {
      if (tok.size() < 2) throw ParseError(line_no, "expected 'A <count> <children...>'");
      auto count = parse_number<std::size_t>(tok[1], line_no, "child count");
      node = count == 0 ? builder->top() : builder->conj(read_children(2, count));
    } else if (tok[0] == "O") {
      if (tok.size() < 3) throw ParseError(line_no, "expected 'O <decision> <count> <children...>'");
      auto decision = parse_number<Var>(tok[1], line_no, "decision variable");
      if (decision > var_count) throw ParseError(line_no, "decision variable out of range");
      auto count = parse_number<std::size_t>(tok[2], line_no, "child count");
      node = count == 0 ? builder->bottom() : builder->disj(read_children(3, count), decision);
    } else {
      throw ParseError(line_no, "unknown node type '" + std::string(tok[0]) + "'");
    }
    file_to_node.push_back(node);
    if (end == text.size()) break;
  }

  if (!have_header) throw ParseError(line_no, "missing 'nnf' header");
  if (file_to_node.size() != node_count)
    throw ParseError(line_no, "header declares " + std::to_string(node_count) + " nodes but body has " +
                                  std::to_string(file_to_node.size()));
  if (edges_seen != edge_count)
    throw ParseError(line_no, "header declares " + std::to_string(edge_count) + " edges but body has " +
                                  std::to_string(edges_seen));
  return builder->build(file_to_node.back());
}

std::string write_nnf(const Circuit& c) {
  std::ostringstream out;
  out << "nnf " << c.size() << ' ' << c.edge_count() << ' ' << c.variable_count() << '\n';
  for (const Node& n : c.nodes()) {
    switch (n.kind) {
    case NodeKind::True: out << "A 0"; break;
    case NodeKind::False: out << "O 0 0"; break;
    case NodeKind::Literal: out << "L " << n.literal; break;
    case NodeKind::And:
      out << "A " << n.children.size();
      for (NodeId ch : n.children) out << ' ' << ch;
      break;
    case NodeKind::Or:
      out << "O " << n.decision << ' ' << n.children.size();
      for (NodeId ch : n.children) out << ' ' << ch;
      break;
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Structural properties

std::vector<std::vector<Var>> mentioned_vars(const Circuit& c) {
  std::vector<std::vector<Var>> vars(c.size());
  std::vector<Var> scratch;
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    if (n.kind == NodeKind::Literal) {
      vars[i] = {var_of(n.literal)};
    } else if (n.kind == NodeKind::And || n.kind == NodeKind::Or) {
      for (NodeId ch : n.children) {
        scratch.clear();
        std::set_union(vars[i].begin(), vars[i].end(), vars[ch].begin(), vars[ch].end(), std::back_inserter(scratch));
        vars[i].swap(scratch);
      }
    }
  }
  return vars;
}

DecomposabilityResult check_decomposable(const Circuit& c) {
  auto vars = mentioned_vars(c);
  std::unordered_map<Var, std::size_t> owner;
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    if (n.kind != NodeKind::And) continue;
    owner.clear();
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      for (Var v : vars[n.children[k]]) {
        auto [it, fresh] = owner.emplace(v, k);
        if (!fresh) return {false, DecomposabilityWitness{i, v, n.children[it->second], n.children[k]}};
      }
    }
  }
  return {};
}

SmoothnessResult check_smooth(const Circuit& c) {
  auto vars = mentioned_vars(c);
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    if (n.kind != NodeKind::Or || n.children.size() < 2) continue;
    const auto& ref = vars[n.children[0]];
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      const auto& other = vars[n.children[k]];
      if (other == ref) continue;
      std::vector<Var> diff;
      std::set_symmetric_difference(ref.begin(), ref.end(), other.begin(), other.end(), std::back_inserter(diff));
      return {false, SmoothnessWitness{i, n.children[0], n.children[k], diff.front()}};
    }
  }
  return {};
}

namespace {

// Literals conjoined at the top of a node: the literal itself, or the
// literals reachable through nested AND nodes (and single-child ORs).
void conjunct_literals(const Circuit& c, NodeId id, std::vector<Literal>& out) {
  const Node& n = c.node(id);
  if (n.kind == NodeKind::Literal) {
    out.push_back(n.literal);
  } else if (n.kind == NodeKind::And || (n.kind == NodeKind::Or && n.children.size() == 1)) {
    for (NodeId ch : n.children) conjunct_literals(c, ch, out);
  }
}

} // namespace

bool check_deterministic_syntactic(const Circuit& c) {
  std::vector<Literal> left, right;
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    if (n.kind != NodeKind::Or || n.children.size() < 2) continue;
    if (n.children.size() != 2) return false;
    left.clear();
    right.clear();
    conjunct_literals(c, n.children[0], left);
    conjunct_literals(c, n.children[1], right);
    std::sort(right.begin(), right.end());
    bool decided = std::any_of(left.begin(), left.end(), [&](Literal l) {
      return std::binary_search(right.begin(), right.end(), -l);
    });
    if (!decided) return false;
  }
  return true;
}

DeterminismResult check_deterministic_semantic(const Circuit& c, std::size_t budget) {
  auto vars = mentioned_vars(c);
  ObddStore store(ObddStore::ascending(c.variable_count())->order());
  std::vector<std::optional<ObddRef>> diagram(c.size());

  // Children of a node mention subsets of the node's variables, so every
  // diagram built here stays within the budget of the pair being checked.
  auto build = [&](auto&& self, NodeId id) -> ObddRef {
    if (diagram[id]) return *diagram[id];
    const Node& n = c.node(id);
    ObddRef r;
    switch (n.kind) {
    case NodeKind::True: r = store.one(); break;
    case NodeKind::False: r = store.zero(); break;
    case NodeKind::Literal: r = store.literal(n.literal); break;
    case NodeKind::And:
      r = store.one();
      for (NodeId ch : n.children) r = store.conjoin(r, self(self, ch));
      break;
    case NodeKind::Or:
      r = store.zero();
      for (NodeId ch : n.children) r = store.disjoin(r, self(self, ch));
      break;
    }
    diagram[id] = r;
    return r;
  };

  bool undecided = false;
  std::vector<Var> pair_vars;
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    if (n.kind != NodeKind::Or) continue;
    for (std::size_t a = 0; a < n.children.size(); ++a) {
      for (std::size_t b = a + 1; b < n.children.size(); ++b) {
        const NodeId ca = n.children[a], cb = n.children[b];
        pair_vars.clear();
        std::set_union(vars[ca].begin(), vars[ca].end(), vars[cb].begin(), vars[cb].end(), std::back_inserter(pair_vars));
        if (pair_vars.size() > budget) {
          undecided = true;
          continue;
        }
        ObddRef both = store.conjoin(build(build, ca), build(build, cb));
        if (store.is_false(both)) continue;
        auto model = *store.satisfying_assignment(both);
        // Fill don't-care variables of the pair positively.
        for (Var v : pair_vars) {
          if (std::none_of(model.begin(), model.end(), [v](Literal l) { return var_of(l) == v; }))
            model.push_back(static_cast<Literal>(v));
        }
        std::sort(model.begin(), model.end(), [](Literal x, Literal y) { return var_of(x) < var_of(y); });
        return {Tri::No, DeterminismWitness{i, ca, cb, std::move(model)}};
      }
    }
  }
  return {undecided ? Tri::Undecided : Tri::Yes, std::nullopt};
}

std::string CircuitClass::name() const {
  std::string prefix;
  if (smooth) prefix += 's';
  if (deterministic) prefix += 'd';
  std::string base = decomposable ? "DNNF" : "NNF";
  return prefix.empty() ? base : prefix + "-" + base;
}

CircuitClass PropertyReport::circuit_class() const {
  return {decomposable.holds, deterministic.holds == Tri::Yes, smooth.holds};
}

PropertyReport classify_circuit(const Circuit& c, std::size_t budget) {
  PropertyReport r;
  r.decomposable = check_decomposable(c);
  r.smooth = check_smooth(c);
  r.deterministic = check_deterministic_semantic(c, budget);
  if (r.deterministic.holds == Tri::Undecided) {
    r.determinism_semantic = false;
    if (check_deterministic_syntactic(c)) {
      r.deterministic.holds = Tri::Yes;
    } else {
      r.lower_bound = true;
    }
  }
  r.class_label = (r.lower_bound ? "at least " : "") + r.circuit_class().name();
  return r;
}

// ---------------------------------------------------------------------------
// Smoothing

Circuit smooth(const Circuit& c, bool extend_root) {
  auto vars = mentioned_vars(c);
  CircuitBuilder b(c.variable_count());
  std::vector<NodeId> map(c.size());

  auto gadget = [&b](Var v) {
    const auto l = static_cast<Literal>(v);
    return b.disj({b.literal(l), b.literal(-l)}, v);
  };
  auto pad = [&](NodeId built, const std::vector<Var>& missing) {
    if (missing.empty()) return built;
    std::vector<NodeId> children;
    if (b.node(built).kind == NodeKind::And) {
      children = b.node(built).children;
    } else {
      children.push_back(built);
    }
    for (Var v : missing) children.push_back(gadget(v));
    return b.conj(std::move(children));
  };

  std::vector<Var> missing;
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    Node copy = n;
    for (NodeId& ch : copy.children) ch = map[ch];
    if (n.kind == NodeKind::Or) {
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        const auto& have = vars[n.children[k]];
        missing.clear();
        std::set_difference(vars[i].begin(), vars[i].end(), have.begin(), have.end(), std::back_inserter(missing));
        copy.children[k] = pad(copy.children[k], missing);
      }
    }
    map[i] = b.add(std::move(copy));
  }

  NodeId root = map[c.root()];
  if (extend_root && c.node(c.root()).kind != NodeKind::False) {
    const auto& have = vars[c.root()];
    missing.clear();
    for (Var v = 1; v <= c.variable_count(); ++v)
      if (!std::binary_search(have.begin(), have.end(), v)) missing.push_back(v);
    root = pad(root, missing);
  }
  return b.build(root);
}

} // namespace amc
