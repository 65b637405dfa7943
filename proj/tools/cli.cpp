#include "cli.hpp"

#include "amc/circuit.hpp"
#include "amc/compile.hpp"
#include "amc/error.hpp"
#include "amc/eval.hpp"
#include "amc/labeling_io.hpp"
#include "amc/oracle.hpp"
#include "amc/semiring.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace amc::cli {

namespace {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Circuit load_circuit(const std::string& path) {
  try {
    return parse_nnf(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("AMC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("AMC_SEED must be an unsigned integer");
    }
  }
  return kDefaultSeed;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Options shared by the commands that need a semiring.
struct SemiringOptions {
  std::string name;
  std::string labels;
  std::optional<std::uint64_t> k;
  std::optional<Var> grad_var;
  std::string order;

  void attach(CLI::App* app, bool labels_flag = true) {
    app->add_option("--semiring", name, "Built-in semiring (sat, count, wmc, prob, sens, grad, mpe, spath, wpath, "
                                        "fuzzy, kweight, obdd, why, ra+)");
    if (labels_flag) app->add_option("--labels", labels, "Labeling file");
    app->add_option("--k", k, "Bound for kweight");
    app->add_option("--grad-var", grad_var, "Differentiated variable for grad");
    app->add_option("--order", order, "Variable order for obdd, e.g. 1,2,3");
  }

  SemiringParams params(Var fallback_vars) const {
    SemiringParams p;
    p.k = k;
    p.grad_var = grad_var;
    if (!order.empty()) {
      p.order = parse_order(order);
    } else if (!name.empty() && canonical_semiring_name(name) == "OBDD") {
      for (Var v = 1; v <= fallback_vars; ++v) p.order.push_back(v);
    }
    return p;
  }

  // Semiring and labeling over at least `vars` variables.
  std::pair<SemiringDescriptor, std::optional<Labeling>> resolve(Var vars, bool need_labeling) const {
    if (!labels.empty()) {
      LoadedLabeling loaded = [&] {
        try {
          return parse_labeling(read_file(labels));
        } catch (const ParseError& e) {
          throw InputError(labels + ": " + e.what());
        }
      }();
      if (!name.empty() && canonical_semiring_name(name) != loaded.semiring.name)
        throw InputError("--semiring " + name + " disagrees with labeling file semiring " + loaded.semiring.name);
      if (loaded.labeling.variable_count() < vars)
        throw InputError("labeling covers " + std::to_string(loaded.labeling.variable_count()) +
                         " variables, circuit has " + std::to_string(vars));
      return {std::move(loaded.semiring), std::move(loaded.labeling)};
    }
    if (name.empty()) throw InputError("--semiring or --labels is required");
    SemiringDescriptor desc = builtin(name, params(vars));
    std::optional<Labeling> lab = default_labeling(desc, vars);
    if (need_labeling && !lab) throw InputError("semiring " + desc.name + " needs a labeling file (--labels)");
    return {std::move(desc), std::move(lab)};
  }
};

std::string render_value(const SemiringDescriptor& desc, const Value& v, const std::string& obdd_out, Var vars) {
  if (desc.carrier != Carrier::Diagram) return format_value(v);
  write_file(obdd_out, write_nnf(obdd_to_circuit(*desc.store, std::get<ObddRef>(v), vars)));
  return obdd_out;
}

std::string witness_lines(const Circuit& c, const PropertyReport& r) {
  std::ostringstream out;
  if (const auto& w = r.decomposable.witness)
    out << "witness decomposability: AND node " << w->node << ", children " << w->child_a << " and " << w->child_b
        << " share variable " << w->variable << '\n';
  if (const auto& w = r.deterministic.witness) {
    out << "witness determinism: OR node " << w->node << ", children " << w->child_a << " and " << w->child_b
        << " share model";
    for (Literal l : w->shared_model) out << ' ' << l;
    out << '\n';
  }
  if (const auto& w = r.smooth.witness)
    out << "witness smoothness: OR node " << w->node << ", children " << w->child_a << " and " << w->child_b
        << " differ on variable " << w->variable << '\n';
  (void)c;
  return out.str();
}

std::string determinism_text(const PropertyReport& r) {
  switch (r.deterministic.holds) {
  case Tri::Yes: return r.determinism_semantic ? "yes" : "yes (syntactic)";
  case Tri::No: return "no";
  case Tri::Undecided: return "undecided (budget)";
  }
  return "?";
}

json report_json(const PropertyReport& r) {
  json j;
  j["decomposable"] = r.decomposable.holds;
  j["deterministic"] = r.deterministic.holds == Tri::Yes   ? json("yes")
                       : r.deterministic.holds == Tri::No  ? json("no")
                                                           : json("undecided");
  j["smooth"] = r.smooth.holds;
  j["class"] = r.class_label;
  if (const auto& w = r.decomposable.witness)
    j["decomposability_witness"] = {{"node", w->node}, {"children", {w->child_a, w->child_b}}, {"variable", w->variable}};
  if (const auto& w = r.deterministic.witness)
    j["determinism_witness"] = {{"node", w->node}, {"children", {w->child_a, w->child_b}}, {"model", w->shared_model}};
  if (const auto& w = r.smooth.witness)
    j["smoothness_witness"] = {{"node", w->node}, {"children", {w->child_a, w->child_b}}, {"variable", w->variable}};
  return j;
}

// ---------------------------------------------------------------------------

struct EvalCmd {
  std::string circuit;
  SemiringOptions semiring;
  std::string mode = "strict";
  std::size_t budget = kDefaultBudget;
  bool no_extension = false;
  std::string out;
  bool json_out = false;

  int run(std::ostream& os) const {
    const Circuit c = load_circuit(circuit);
    auto [desc, lab] = semiring.resolve(c.variable_count(), true);
    EvalOptions opts;
    opts.mode = parse_mode(mode);
    opts.budget = budget;
    opts.extend_root = !no_extension;
    const EvalOutcome r = evaluate_checked(c, desc, *lab, opts);
    const std::string obdd_path = out.empty() ? circuit + ".obdd.nnf" : out;
    std::optional<std::string> value;
    if (r.value) value = render_value(desc, *r.value, obdd_path, c.variable_count());

    if (json_out) {
      json j;
      j["value"] = value ? json(*value) : json(nullptr);
      j["semiring"] = desc.name;
      j["class"] = r.report.class_label;
      j["required"] = r.required.name();
      j["status"] = to_string(r.status);
      j["missing"] = r.missing;
      j["note"] = r.note;
      os << j.dump() << '\n';
    } else {
      if (value) os << *value << '\n';
      os << "class: " << r.report.class_label << '\n';
      os << "required: " << r.required.name() << '\n';
      os << "status: " << to_string(r.status) << '\n';
      if (!r.note.empty()) os << "note: " << r.note << '\n';
    }
    return r.status == EvalStatus::Sound || r.status == EvalStatus::Repaired ? kOk : kUnsound;
  }
};

struct CheckCmd {
  std::string circuit;
  std::size_t budget = kDefaultBudget;
  bool json_out = false;

  int run(std::ostream& os) const {
    const Circuit c = load_circuit(circuit);
    const PropertyReport r = classify_circuit(c, budget);
    if (json_out) {
      os << report_json(r).dump() << '\n';
      return kOk;
    }
    os << "decomposable: " << yes_no(r.decomposable.holds) << ", deterministic: " << determinism_text(r)
       << ", smooth: " << yes_no(r.smooth.holds) << ", class: " << r.class_label << '\n';
    os << witness_lines(c, r);
    return kOk;
  }
};

struct ClassifyCmd {
  SemiringOptions semiring;
  bool json_out = false;

  int run(std::ostream& os) const {
    if (semiring.name.empty() && semiring.labels.empty()) throw InputError("--semiring or --labels is required");
    Var vars = 1;
    if (!semiring.order.empty())
      for (Var v : parse_order(semiring.order)) vars = std::max(vars, v);
    auto [desc, lab] = semiring.resolve(vars, false);
    const bool measured = !semiring.labels.empty();
    const TaskProfile p = measured ? task_profile_of(desc, *lab) : declared_profile(desc);
    const CircuitClass need = required_circuit_class(p);
    if (json_out) {
      json j = {{"semiring", desc.name},
                {"plus_idempotent", p.plus_idempotent},
                {"pair_neutral", p.pair_neutral},
                {"times_idempotent_consistency_preserving", p.times_idempotent_consistency_preserving},
                {"profile_source", measured ? "labeling" : "canonical"},
                {"required", need.name()}};
      os << j.dump() << '\n';
      return kOk;
    }
    os << "semiring: " << desc.name << '\n';
    os << "plus_idempotent: " << yes_no(p.plus_idempotent) << '\n';
    os << "pair_neutral: " << yes_no(p.pair_neutral) << '\n';
    os << "times_idempotent_consistency_preserving: " << yes_no(p.times_idempotent_consistency_preserving) << '\n';
    os << "required: " << need.name() << '\n';
    return kOk;
  }
};

struct CompileCmd {
  std::string cnf_path;
  std::string order;
  std::string out;
  bool json_out = false;

  int run(std::ostream& os) const {
    Cnf cnf;
    try {
      cnf = parse_dimacs(read_file(cnf_path));
    } catch (const ParseError& e) {
      throw InputError(cnf_path + ": " + e.what());
    }
    const std::vector<Var> ord = order.empty() ? std::vector<Var>{} : parse_order(order);
    CompileStats stats;
    const Circuit c = compile_cnf_to_sddnnf(cnf, ord, &stats);
    const std::string text = write_nnf(c);
    if (!out.empty()) write_file(out, text);
    if (json_out) {
      json j = {{"diagram_nodes", stats.diagram_nodes},
                {"circuit_nodes", stats.circuit_nodes},
                {"circuit_edges", stats.circuit_edges},
                {"notices", cnf.notices}};
      if (!out.empty()) j["out"] = out;
      os << j.dump() << '\n';
    } else {
      for (const auto& n : cnf.notices) os << "notice: " << n << '\n';
      if (out.empty()) os << text;
      os << "diagram nodes: " << stats.diagram_nodes << '\n';
      os << "circuit nodes: " << stats.circuit_nodes << '\n';
      os << "circuit edges: " << stats.circuit_edges << '\n';
      if (!out.empty()) os << "wrote " << out << '\n';
    }
    return kOk;
  }
};

struct VerifyCmd {
  std::string circuit;
  SemiringOptions semiring;
  std::size_t budget = kDefaultBudget;
  bool no_extension = false;
  bool json_out = false;

  int run(std::ostream& os) const {
    const Circuit c = load_circuit(circuit);
    auto [desc, lab] = semiring.resolve(c.variable_count(), true);
    Value evaluated = evaluate(c, desc, *lab);
    if (!no_extension) evaluated = extend_to_all_variables(evaluated, c, desc, *lab);
    Value reference;
    try {
      reference = amc_brute_force(c, desc, *lab, budget);
    } catch (const BudgetExceeded& e) {
      throw InputError(e.what());
    }
    const bool match = approx_equal(evaluated, reference, 1e-9, kRealTolerance);
    if (json_out) {
      json j = {{"evaluate", format_value(evaluated)}, {"oracle", format_value(reference)}, {"match", match}};
      os << j.dump() << '\n';
    } else {
      os << "evaluate: " << format_value(evaluated) << '\n';
      os << "oracle: " << format_value(reference) << '\n';
      os << "result: " << (match ? "match" : "mismatch") << '\n';
    }
    return match ? kOk : kUnsound;
  }
};

struct AxiomsCmd {
  SemiringOptions semiring;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  bool json_out = false;

  int run(std::ostream& os) const {
    if (semiring.name.empty()) throw InputError("--semiring is required");
    SemiringParams params = semiring.params(4);
    const SemiringDescriptor desc = builtin(semiring.name, params);
    const AxiomReport r = check_axioms(desc, trials, seed.value_or(default_seed()));
    if (json_out) {
      json laws = json::array();
      for (const auto& l : r.laws)
        laws.push_back({{"law", l.law}, {"passed", l.passed}, {"counterexample", l.counterexample}});
      os << json{{"semiring", r.semiring}, {"trials", r.trials}, {"laws", laws}, {"all_passed", r.all_passed()}}.dump()
         << '\n';
    } else {
      os << "semiring: " << r.semiring << " (" << r.trials << " trials)\n";
      for (const auto& l : r.laws) {
        os << l.law << ": " << (l.passed ? "pass" : "FAIL");
        if (!l.passed) os << " (" << l.counterexample << ")";
        os << '\n';
      }
    }
    return r.all_passed() ? kOk : kAxiomViolation;
  }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic model counting on NNF circuits", "amc"};
  app.require_subcommand(1);

  EvalCmd eval;
  auto* e = app.add_subcommand("eval", "Evaluate a circuit under a semiring");
  e->add_option("--circuit", eval.circuit, "c2d NNF file")->required();
  eval.semiring.attach(e);
  e->add_option("--mode", eval.mode, "strict | repair | force");
  e->add_option("--budget", eval.budget, "Variable budget for the determinism check");
  e->add_flag("--no-root-extension", eval.no_extension, "Do not extend the root over unmentioned variables");
  e->add_option("--out", eval.out, "Where to write an OBDD result as NNF");
  e->add_flag("--json", eval.json_out);

  CheckCmd check;
  auto* c = app.add_subcommand("check", "Report decomposability, determinism and smoothness");
  c->add_option("--circuit", check.circuit, "c2d NNF file")->required();
  c->add_option("--budget", check.budget, "Variable budget for the determinism check");
  c->add_flag("--json", check.json_out);

  ClassifyCmd classify;
  auto* k = app.add_subcommand("classify", "Circuit class required for sound evaluation");
  classify.semiring.attach(k);
  k->add_flag("--json", classify.json_out);

  CompileCmd compile;
  auto* m = app.add_subcommand("compile", "Compile DIMACS CNF to an sd-DNNF circuit");
  m->add_option("--cnf", compile.cnf_path, "DIMACS CNF file")->required();
  m->add_option("--order", compile.order, "Variable order, e.g. 3,1,2");
  m->add_option("--out", compile.out, "Output NNF file");
  m->add_flag("--json", compile.json_out);

  VerifyCmd verify;
  auto* v = app.add_subcommand("verify", "Compare circuit evaluation with brute-force enumeration");
  v->add_option("--circuit", verify.circuit, "c2d NNF file")->required();
  verify.semiring.attach(v);
  v->add_option("--budget", verify.budget, "Enumeration budget in variables");
  v->add_flag("--no-root-extension", verify.no_extension);
  v->add_flag("--json", verify.json_out);

  AxiomsCmd axioms;
  auto* a = app.add_subcommand("axioms", "Randomized check of the semiring laws");
  axioms.semiring.attach(a, false);
  a->add_option("--trials", axioms.trials, "Number of random triples")->check(CLI::PositiveNumber);
  a->add_option("--seed", axioms.seed, "RNG seed (default: AMC_SEED or a fixed constant)");
  a->add_flag("--json", axioms.json_out);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "amc: " << ex.what() << '\n';
    return kInputError;
  }

  try {
    if (*e) return eval.run(out);
    if (*c) return check.run(out);
    if (*k) return classify.run(out);
    if (*m) return compile.run(out);
    if (*v) return verify.run(out);
    return axioms.run(out);
  } catch (const InputError& ex) {
    err << "amc: " << ex.what() << '\n';
  } catch (const ParseError& ex) {
    err << "amc: " << ex.what() << '\n';
  } catch (const std::invalid_argument& ex) {
    err << "amc: " << ex.what() << '\n';
  } catch (const std::runtime_error& ex) {
    err << "amc: " << ex.what() << '\n';
  } catch (const std::logic_error& ex) {
    err << "amc: " << ex.what() << '\n';
  }
  return kInputError;
}

} // namespace amc::cli
