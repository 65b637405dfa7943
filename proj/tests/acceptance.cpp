// One line per acceptance criterion; exit status is the number of failures.
#include "amc/compile.hpp"
#include "amc/error.hpp"
#include "amc/eval.hpp"
#include "amc/oracle.hpp"
#include "support/generators.hpp"
#include "../tools/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace amc;
using namespace amc::testing;

namespace {

// Pinned tolerances.
constexpr double kExactReal = 1e-12;    // worked examples
constexpr double kRelReal = 1e-9;       // random real-carrier comparisons
constexpr double kFdStep = 1e-6;        // central-difference step
constexpr double kFdRel = 1e-5;         // gradient agreement
constexpr double kFdFloor = 1e-3;       // magnitude floor for the relative gradient test
constexpr double kFixtureBudgetMs = 1.0; // counting the two small circuits
constexpr double kUniversalityBudgetS = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

bool near(double a, double b, double tol = kExactReal) { return std::fabs(a - b) <= tol; }

double real(const Value& v) { return std::get<double>(v); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

SemiringParams params_for(const std::string& name, Var n, Rng& rng) {
  SemiringParams p;
  if (name == "kWEIGHT") p.k = std::uniform_int_distribution<std::uint64_t>(1, 25)(rng);
  if (name == "GRAD") p.grad_var = std::uniform_int_distribution<Var>(1, std::max<Var>(1, n))(rng);
  if (name == "OBDD")
    for (Var v = 1; v <= std::max<Var>(1, n); ++v) p.order.push_back(v);
  return p;
}

Outcome counting_fixtures() {
  const Circuit a = xor_circuit();
  const Circuit b = and_of_ors_circuit();
  const auto count = builtin("#SAT");
  const auto lab = *default_labeling(count, 2);
  const auto t = Clock::now();
  const Value va = evaluate(a, count, lab);
  const Value vb = evaluate(b, count, lab);
  const double ms = ms_since(t);
  Outcome o;
  o.pass = va == Value(NatInf::of(2)) && vb == Value(NatInf::of(4)) && ms < kFixtureBudgetMs;
  o.detail = "xor=" + format_value(va) + " and-of-ors=" + format_value(vb) + " in " + fmt(ms) + " ms";
  return o;
}

Outcome prob_disjunction() {
  const auto prob = builtin("PROB");
  const Labeling lab = complement_labels(prob, {0.6, 0.3});
  const double raw = real(evaluate(or_ab_circuit(), prob, lab));
  const double oracle = real(amc_brute_force(or_ab_circuit(), prob, lab));
  const Circuit compiled = compile_cnf_to_sddnnf(parse_dimacs("p cnf 2 1\n1 2 0\n"));
  const double sound = real(evaluate(compiled, prob, lab));
  Outcome o;
  o.pass = near(raw, 0.9) && near(oracle, 0.72) && near(sound, 0.72) &&
           classify_circuit(compiled).class_label == "sd-DNNF";
  o.detail = "evaluate=" + fmt(raw) + " oracle=" + fmt(oracle) + " compiled=" + fmt(sound);
  return o;
}

Outcome mpe_disjunction() {
  const auto mpe = builtin("MPE");
  const Labeling lab = complement_labels(mpe, {0.6, 0.3});
  const double raw = real(evaluate(or_ab_circuit(), mpe, lab));
  EvalOptions repair;
  repair.mode = Mode::Repair;
  const EvalOutcome r = evaluate_checked(or_ab_circuit(), mpe, lab, repair);
  const double oracle = real(amc_brute_force(or_ab_circuit(), mpe, lab));
  Outcome o;
  o.pass = near(raw, 0.6) && r.status == EvalStatus::Repaired && r.value && near(real(*r.value), 0.42) &&
           near(oracle, 0.42);
  o.detail = "evaluate=" + fmt(raw) + " repaired=" + (r.value ? format_value(*r.value) : "none") +
             " oracle=" + fmt(oracle);
  return o;
}

Outcome task_listing() {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"OBDD", "NNF"},      {"SAT", "DNNF"},    {"S-PATH", "DNNF"},  {"W-PATH", "DNNF"},
      {"FUZZY", "DNNF"},    {"PROB", "d-DNNF"}, {"SENS", "d-DNNF"},  {"GRAD", "d-DNNF"},
      {"MPE", "s-DNNF"},    {"kWEIGHT", "s-DNNF"}, {"#SAT", "sd-DNNF"}, {"WMC", "sd-DNNF"}};
  Rng rng(kDefaultSeed);
  Outcome o;
  int ok = 0;
  for (const auto& [name, cls] : expected) {
    const auto d = builtin(name, params_for(name, 6, rng));
    const std::string declared = required_circuit_class(declared_profile(d)).name();
    const std::string measured = required_circuit_class(task_profile_of(d, canonical_labeling(d, 6, rng))).name();
    if (declared == cls && measured == cls) {
      ++ok;
    } else {
      o.pass = false;
      o.detail += name + ": " + declared + "/" + measured + " (want " + cls + ") ";
    }
  }
  if (o.pass) o.detail = std::to_string(ok) + "/12 tasks";
  return o;
}

Outcome universality() {
  Rng rng(kDefaultSeed + 5);
  const auto t = Clock::now();
  std::size_t checks = 0, failures = 0;
  std::string first;
  auto record = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  };
  for (int i = 0; i < 200; ++i) {
    const Cnf cnf = random_cnf(rng, 12, 30);
    const Circuit c = compile_cnf_to_sddnnf(cnf);
    record(classify_circuit(c).class_label == "sd-DNNF", "compiled circuit not sd-DNNF");
    const auto models = enumerate_models(c);
    for (const auto& name : builtin_names()) {
      if (name == "WHY" || name == "RA+") continue;
      const auto d = builtin(name, params_for(name, c.variable_count(), rng));
      const Labeling lab = canonical_labeling(d, c.variable_count(), rng);
      const Value v = evaluate(c, d, lab);
      const Value ref = amc_over_models(models, d, lab);
      record(values_match(v, ref), name + " cnf#" + std::to_string(i) + ": " + format_value(v) + " vs " + format_value(ref));
    }
  }
  // Positive-only semirings on monotone sd-DNNF without FALSE nodes.
  for (int i = 0; i < 200; ++i) {
    const Var n = std::uniform_int_distribution<Var>(1, 12)(rng);
    const Circuit c = random_monotone_sddnnf(rng, n);
    record(!c.has_negative_literal() && !c.has_reachable_false() && classify_circuit(c).class_label == "sd-DNNF",
           "monotone generator produced a bad circuit");
    const auto models = enumerate_models(c);
    for (const char* name : {"WHY", "RA+"}) {
      const auto d = builtin(name);
      const Labeling lab = *default_labeling(d, n);
      const Value v = evaluate(c, d, lab);
      const Value ref = amc_over_models(models, d, lab);
      record(values_match(v, ref), std::string(name) + ": " + format_value(v) + " vs " + format_value(ref));
    }
  }
  const double s = ms_since(t) / 1000.0;
  Outcome o;
  o.pass = failures == 0 && s < kUniversalityBudgetS;
  o.detail = std::to_string(checks - failures) + "/" + std::to_string(checks) + " agree, " + fmt(s) + " s";
  if (failures) o.detail += "; first: " + first;
  return o;
}

struct Cell {
  TaskProfile profile;
  std::string semiring;
  std::function<SemiringDescriptor(Var)> make;
  std::function<Labeling(const SemiringDescriptor&, Var, Rng&)> label;
};

Circuit lacking(const std::string& property) {
  if (property == "decomposability") return parse_nnf("nnf 3 2 1\nL 1\nL -1\nA 2 0 1\n");
  if (property == "determinism") return smooth(or_ab_circuit());
  return parse_nnf("nnf 5 4 2\nL 1\nL -1\nL 2\nA 2 1 2\nO 0 2 0 3\n"); // smoothness
}

Outcome cell_soundness() {
  auto canonical = [](const SemiringDescriptor& d, Var n, Rng& rng) { return canonical_labeling(d, n, rng); };
  constexpr Var kCoords = 3;
  auto disjoint = [](bool allow_empty) {
    return [allow_empty](const SemiringDescriptor& d, Var n, Rng& rng) {
      return disjoint_labeling(d, n, kCoords, rng, allow_empty);
    };
  };
  auto named = [](const char* name) { return [name](Var) { return builtin(name); }; };
  const std::vector<Cell> cells = {
      {{false, false, false}, "WMC", named("WMC"), canonical},
      {{true, false, false}, "MPE", named("MPE"), canonical},
      {{false, true, false}, "PROB", named("PROB"), canonical},
      {{true, true, false}, "FUZZY", named("FUZZY"), canonical},
      {{false, false, true}, "SUBSET-RING", [](Var) { return subset_ring(kCoords); }, disjoint(true)},
      {{true, false, true}, "SUBSET-LATTICE", [](Var) { return subset_lattice(kCoords); }, disjoint(true)},
      {{false, true, true}, "SUBSET-RING", [](Var) { return subset_ring(kCoords); }, disjoint(false)},
      {{true, true, true}, "OBDD",
       [](Var n) {
         SemiringParams p;
         for (Var v = 1; v <= n; ++v) p.order.push_back(v);
         return builtin("OBDD", p);
       },
       canonical},
  };

  Rng rng(kDefaultSeed + 6);
  Outcome o;
  std::ostringstream detail;
  for (const Cell& cell : cells) {
    const CircuitClass need = required_circuit_class(cell.profile);
    std::size_t agree = 0, tested = 0, attempts = 0;
    std::string problem;
    while (tested < 200 && attempts < 20000) {
      ++attempts;
      CircuitShape shape;
      shape.vars = std::uniform_int_distribution<Var>(1, 10)(rng);
      shape.decomposable = need.decomposable;
      shape.deterministic = need.deterministic;
      shape.smooth = need.smooth;
      const Circuit c = random_circuit(rng, shape);
      if (c.size() > 40) continue;
      const PropertyReport rep = classify_circuit(c);
      if (rep.lower_bound || rep.circuit_class() != need) continue; // exactly the required properties
      ++tested;
      const auto d = cell.make(c.variable_count());
      const Labeling lab = cell.label(d, c.variable_count(), rng);
      if (!(task_profile_of(d, lab) == cell.profile)) {
        problem = "labeling profile differs from cell";
        continue;
      }
      const EvalOutcome r = evaluate_checked(c, d, lab);
      const Value ref = amc_brute_force(c, d, lab);
      if (r.status == EvalStatus::Sound && r.value && values_match(*r.value, ref)) {
        ++agree;
      } else if (problem.empty()) {
        problem = "circuit " + std::to_string(tested) + " status " + to_string(r.status);
      }
    }

    // Each missing property breaks evaluation for some labeling.
    std::string negatives;
    bool negatives_ok = true;
    for (const std::string& prop : missing_properties(CircuitClass{}, cell.profile)) {
      const Circuit w = lacking(prop);
      const auto d = cell.make(w.variable_count());
      int mismatches = 0;
      for (int i = 0; i < 50; ++i) {
        const Labeling lab = cell.label(d, w.variable_count(), rng);
        if (!values_match(evaluate(w, d, lab), amc_brute_force(w, d, lab))) ++mismatches;
      }
      negatives += "; without " + prop + ": " + std::to_string(mismatches) + "/50 mismatch";
      negatives_ok = negatives_ok && mismatches > 0;
    }
    if (negatives.empty()) negatives = "; nothing required, no negative case";

    const bool ok = tested == 200 && agree == 200 && negatives_ok;
    o.pass = o.pass && ok;
    detail << "\n      " << (ok ? "ok  " : "FAIL") << ' ' << describe_cell(cell.profile) << " via " << cell.semiring
           << ": " << agree << "/" << tested << " agree" << negatives;
    if (!problem.empty()) detail << " (" << problem << ")";
  }
  o.detail = detail.str();
  return o;
}

Outcome gradients() {
  Rng rng(kDefaultSeed + 7);
  std::size_t agree = 0;
  double worst = 0.0;
  const auto prob = builtin("PROB");
  for (int i = 0; i < 100; ++i) {
    const Circuit c = compile_cnf_to_sddnnf(random_cnf(rng, 12, 30));
    const Var n = c.variable_count();
    std::vector<double> p(n);
    for (auto& x : p) x = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    SemiringParams gp;
    gp.grad_var = std::uniform_int_distribution<Var>(1, n)(rng);
    const auto grad = builtin("GRAD", gp);
    std::vector<Value> pos;
    std::vector<std::optional<Value>> neg;
    for (Var v = 1; v <= n; ++v) {
      const double d = v == *gp.grad_var ? 1.0 : 0.0;
      pos.emplace_back(RealPair{p[v - 1], d});
      neg.emplace_back(RealPair{1.0 - p[v - 1], -d});
    }
    const double g = std::get<RealPair>(evaluate(c, grad, Labeling(grad, pos, neg))).second;
    auto at = [&](double delta) {
      std::vector<double> q = p;
      q[*gp.grad_var - 1] += delta;
      return real(evaluate(c, prob, complement_labels(prob, q)));
    };
    const double fd = (at(kFdStep) - at(-kFdStep)) / (2 * kFdStep);
    const double err = std::fabs(g - fd) / std::max({std::fabs(g), std::fabs(fd), kFdFloor});
    worst = std::max(worst, err);
    if (err <= kFdRel) ++agree;
  }
  Outcome o;
  o.pass = agree == 100;
  o.detail = std::to_string(agree) + "/100, worst relative error " + fmt(worst);
  return o;
}

Outcome sensitivity() {
  Rng rng(kDefaultSeed + 8);
  const auto sens = builtin("SENS");
  const auto prob = builtin("PROB");
  std::size_t agree = 0;
  for (int i = 0; i < 100; ++i) {
    const Circuit c = compile_cnf_to_sddnnf(random_cnf(rng, 12, 30));
    const Var n = c.variable_count();
    const Labeling sl = canonical_labeling(sens, n, rng);
    // Symbolic variables get fresh probabilities; constant labels carry over.
    std::vector<double> point(n + 1, 0.0), p(n);
    const std::vector<double> origin(n + 1, 0.0);
    for (Var v = 1; v <= n; ++v) {
      const auto& lab = std::get<Polynomial>(sl.positive(v));
      const bool symbolic = lab.coefficient({{v, 1}}) != 0.0;
      point[v] = symbolic ? std::uniform_real_distribution<double>(0, 1)(rng) : 0.0;
      p[v - 1] = symbolic ? point[v] : lab.evaluate(origin);
    }
    const double poly = std::get<Polynomial>(evaluate(c, sens, sl)).evaluate(point);
    const double pr = real(evaluate(c, prob, complement_labels(prob, p)));
    if (approx_equal(poly, pr, kRelReal, kExactReal)) ++agree;
  }
  Outcome o;
  o.pass = agree == 100;
  o.detail = std::to_string(agree) + "/100";
  return o;
}

Outcome canonicity() {
  Rng rng(kDefaultSeed + 9);
  std::size_t same = 0, pairs = 0;
  while (pairs < 100) {
    const Var n = std::uniform_int_distribution<Var>(1, 10)(rng);
    const Circuit a = random_nnf(rng, n, std::uniform_int_distribution<std::size_t>(2, 12)(rng));
    Circuit b = rewrite_equivalent(a, rng);
    for (int k = 0; k < 10 && write_nnf(b) == write_nnf(a); ++k) b = rewrite_equivalent(b, rng);
    if (write_nnf(b) == write_nnf(a)) continue;
    ++pairs;
    SemiringParams p;
    for (Var v = 1; v <= n; ++v) p.order.push_back(v);
    const auto d = builtin("OBDD", p);
    const Labeling lab = *default_labeling(d, n);
    const auto fa = std::get<ObddRef>(evaluate(a, d, lab));
    const auto fb = std::get<ObddRef>(evaluate(b, d, lab));
    if (fa == fb && enumerate_models(a) == enumerate_models(b)) ++same;
  }
  Outcome o;
  o.pass = same == 100;
  o.detail = std::to_string(same) + "/100 pairs share a root id";
  return o;
}

Outcome axioms() {
  Rng rng(kDefaultSeed);
  Outcome o;
  std::string failures;
  for (const auto& name : builtin_names()) {
    const auto d = builtin(name, params_for(name, 6, rng));
    const AxiomReport r = check_axioms(d, 1000);
    for (const auto& law : r.laws) {
      const bool expected_failure = name == "WHY" && law.law == "annihilation";
      if (law.passed == expected_failure) {
        o.pass = false;
        failures += " " + name + ":" + law.law;
      }
    }
  }
  std::ostringstream out, err;
  const int code = cli::run({"amc", "axioms", "--semiring", "why", "--trials", "1000"}, out, err);
  o.pass = o.pass && code == cli::kAxiomViolation;
  o.detail = "14 semirings x 1000 trials; WHY annihilation flagged, exit " + std::to_string(code);
  if (!failures.empty()) o.detail += "; unexpected:" + failures;
  return o;
}

Outcome smoothing() {
  Rng rng(kDefaultSeed + 11);
  std::size_t ok = 0;
  for (int i = 0; i < 200; ++i) {
    CircuitShape shape;
    shape.vars = std::uniform_int_distribution<Var>(1, 10)(rng);
    shape.decomposable = std::bernoulli_distribution(0.5)(rng);
    shape.deterministic = std::bernoulli_distribution(0.5)(rng);
    const Circuit c = i % 4 == 3 ? random_nnf(rng, shape.vars, 10) : random_circuit(rng, shape);
    const Circuit s = smooth(c);
    const bool models = enumerate_models(c) == enumerate_models(s);
    const bool dec = !check_decomposable(c).holds || check_decomposable(s).holds;
    const auto det_c = check_deterministic_semantic(c).holds;
    const bool det = det_c != Tri::Yes || check_deterministic_semantic(s).holds == Tri::Yes;
    if (models && dec && det && check_smooth(s).holds) ++ok;
  }
  Outcome o;
  o.pass = ok == 200;
  o.detail = std::to_string(ok) + "/200";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"xor / and-of-ors counts", counting_fixtures},
      {"PROB on a non-deterministic OR", prob_disjunction},
      {"MPE on a non-smooth OR", mpe_disjunction},
      {"per-task circuit classes", task_listing},
      {"sd-DNNF universality", universality},
      {"cell-by-cell soundness", cell_soundness},
      {"GRAD vs finite differences", gradients},
      {"SENS substitution", sensitivity},
      {"OBDD canonicity", canonicity},
      {"semiring axiom suite", axioms},
      {"smoothing invariants", smoothing},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " — " << o.detail
              << std::endl;
  }
  return failed;
}
