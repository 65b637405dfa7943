#include "amc/eval.hpp"
#include "amc/error.hpp"

#include <algorithm>

namespace amc {

Value evaluate(const Circuit& c, const SemiringDescriptor& desc, const Labeling& lab) {
  const auto reachable = c.reachable();
  std::vector<Value> value(c.size());
  for (NodeId i = 0; i < c.size(); ++i) {
    if (!reachable[i]) continue;
    const Node& n = c.node(i);
    switch (n.kind) {
    case NodeKind::True: value[i] = desc.one; break;
    case NodeKind::False: value[i] = desc.zero; break;
    case NodeKind::Literal: value[i] = lab.label(n.literal); break;
    case NodeKind::And:
    case NodeKind::Or: {
      const bool is_and = n.kind == NodeKind::And;
      Value acc = value[n.children.front()];
      for (std::size_t k = 1; k < n.children.size(); ++k)
        acc = is_and ? times(desc, acc, value[n.children[k]]) : plus(desc, acc, value[n.children[k]]);
      value[i] = std::move(acc);
      break;
    }
    }
  }
  return value[c.root()];
}

CircuitClass required_circuit_class(const TaskProfile& p) {
  return {!p.times_idempotent_consistency_preserving, !p.plus_idempotent, !p.pair_neutral};
}

std::vector<std::string> missing_properties(const CircuitClass& actual, const TaskProfile& p) {
  const CircuitClass need = required_circuit_class(p);
  std::vector<std::string> out;
  if (need.decomposable && !actual.decomposable) out.emplace_back("decomposability");
  if (need.deterministic && !actual.deterministic) out.emplace_back("determinism");
  if (need.smooth && !actual.smooth) out.emplace_back("smoothness");
  return out;
}

bool is_sound(const CircuitClass& actual, const TaskProfile& p) { return missing_properties(actual, p).empty(); }

std::string describe_cell(const TaskProfile& p) {
  std::string s = "[";
  s += p.plus_idempotent ? "idempotent plus" : "non-idempotent plus";
  s += p.pair_neutral ? ", neutral (plus,label)" : ", non-neutral (plus,label)";
  s += p.times_idempotent_consistency_preserving ? ", idempotent consistency-preserving times" : ", general times";
  s += "] -> " + required_circuit_class(p).name();
  return s;
}

TaskProfile declared_profile(const SemiringDescriptor& desc) {
  return {desc.plus_idempotent, desc.canonical_pair_neutral, desc.times_idempotent_consistency_preserving};
}

TaskProfile task_profile_of(const SemiringDescriptor& desc, const Labeling& lab) {
  const PairProperties p = check_pair_properties(desc, lab);
  return {p.plus_idempotent, p.pair_neutral, p.times_idempotent_consistency_preserving};
}

Value extend_to_all_variables(const Value& value, const Circuit& c, const SemiringDescriptor& desc,
                              const Labeling& lab, std::vector<Var>* extended) {
  const auto vars = mentioned_vars(c);
  const auto& have = vars[c.root()];
  Value out = value;
  for (Var v = 1; v <= c.variable_count(); ++v) {
    if (std::binary_search(have.begin(), have.end(), v)) continue;
    const Value both = plus(desc, lab.model_factor(static_cast<Literal>(v)), lab.model_factor(-static_cast<Literal>(v)));
    out = times(desc, out, both);
    if (extended) extended->push_back(v);
  }
  return out;
}

const char* to_string(Mode m) {
  switch (m) {
  case Mode::Strict: return "strict";
  case Mode::Repair: return "repair";
  case Mode::Force: return "force";
  }
  return "?";
}

const char* to_string(EvalStatus s) {
  switch (s) {
  case EvalStatus::Sound: return "sound";
  case EvalStatus::Repaired: return "repaired";
  case EvalStatus::Unsound: return "unsound";
  case EvalStatus::Refused: return "refused";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "strict") return Mode::Strict;
  if (text == "repair") return Mode::Repair;
  if (text == "force") return Mode::Force;
  throw ConfigError("unknown mode '" + std::string(text) + "' (strict, repair, force)");
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i];
  }
  return s;
}

} // namespace

EvalOutcome evaluate_checked(const Circuit& c, const SemiringDescriptor& desc, const Labeling& lab,
                             const EvalOptions& options) {
  EvalOutcome out;
  out.report = classify_circuit(c, options.budget);
  out.actual = out.report.circuit_class();
  out.profile = task_profile_of(desc, lab);
  out.required = required_circuit_class(out.profile);
  out.missing = missing_properties(out.actual, out.profile);

  if (options.mode == Mode::Force) {
    out.value = evaluate(c, desc, lab);
    out.status = out.missing.empty() ? EvalStatus::Sound : EvalStatus::Unsound;
    if (!out.missing.empty())
      out.note = "unsound: circuit lacks " + join(out.missing) + " required by cell " + describe_cell(out.profile);
    return out;
  }

  if (!desc.zero_annihilates && c.has_reachable_false()) {
    out.status = EvalStatus::Refused;
    out.note = "refused: " + desc.name + " has a non-annihilating zero and the circuit contains FALSE nodes";
    return out;
  }

  const Circuit* target = &c;
  if (!out.missing.empty()) {
    const bool only_smoothness = out.missing.size() == 1 && out.missing.front() == "smoothness";
    if (options.mode == Mode::Strict || !only_smoothness) {
      out.status = EvalStatus::Refused;
      out.note = "refused: circuit (" + out.report.class_label + ") lacks " + join(out.missing) + " required by cell " +
                 describe_cell(out.profile);
      return out;
    }
    out.repaired = smooth(c);
    target = &*out.repaired;
    out.status = EvalStatus::Repaired;
    out.note = "repaired by smoothing";
  }

  Value v = evaluate(*target, desc, lab);
  if (options.extend_root) {
    v = extend_to_all_variables(v, *target, desc, lab, &out.extended_vars);
    if (!out.extended_vars.empty()) {
      if (!out.note.empty()) out.note += "; ";
      out.note += "extended root over " + std::to_string(out.extended_vars.size()) + " unmentioned variable(s)";
    }
  }
  out.value = std::move(v);
  return out;
}

} // namespace amc
