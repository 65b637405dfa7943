#include "doctest.h"

#include "amc/error.hpp"
#include "amc/eval.hpp"
#include "amc/oracle.hpp"
#include "support/generators.hpp"

using namespace amc;
using namespace amc::testing;

namespace {

double real(const Value& v) { return std::get<double>(v); }

SemiringParams params_for(const std::string& name, Var n) {
  SemiringParams p;
  if (name == "kWEIGHT") p.k = 12;
  if (name == "OBDD")
    for (Var v = 1; v <= n; ++v) p.order.push_back(v);
  return p;
}

} // namespace

TEST_CASE("counting the fixtures") {
  const auto count = builtin("#SAT");
  const auto lab = *default_labeling(count, 2);
  CHECK(evaluate(xor_circuit(), count, lab) == Value(NatInf::of(2)));
  CHECK(evaluate(and_of_ors_circuit(), count, lab) == Value(NatInf::of(4)));
}

TEST_CASE("non-deterministic and non-smooth disjunction") {
  const auto prob = builtin("PROB");
  const auto mpe = builtin("MPE");
  CHECK(real(evaluate(or_ab_circuit(), prob, complement_labels(prob, {0.6, 0.3}))) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(real(evaluate(or_ab_circuit(), mpe, complement_labels(mpe, {0.6, 0.3}))) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("shortest path through a neutral extension") {
  // st=1, sr=2, rt=3; OR(st, AND(sr, rt))
  const Circuit c = parse_nnf("nnf 5 4 3\nL 1\nL 2\nL 3\nA 2 1 2\nO 0 2 0 3\n");
  const auto sp = builtin("S-PATH");
  const Labeling lab(sp, {NatInf::of(5), NatInf::of(1), NatInf::of(2)},
                     {NatInf::of(0), NatInf::of(0), NatInf::of(0)});
  CHECK(evaluate(c, sp, lab) == Value(NatInf::of(3)));
  CHECK(amc_brute_force(c, sp, lab) == Value(NatInf::of(3)));
  const EvalOutcome r = evaluate_checked(c, sp, lab);
  CHECK(r.status == EvalStatus::Sound);
  CHECK(*r.value == Value(NatInf::of(3)));
}

TEST_CASE("table cells") {
  auto cell = [](bool idem, bool neutral, bool cp) { return required_circuit_class(TaskProfile{idem, neutral, cp}).name(); };
  CHECK(cell(false, false, false) == "sd-DNNF");
  CHECK(cell(true, false, false) == "s-DNNF");
  CHECK(cell(false, true, false) == "d-DNNF");
  CHECK(cell(true, true, false) == "DNNF");
  CHECK(cell(false, false, true) == "sd-NNF");
  CHECK(cell(true, false, true) == "s-NNF");
  CHECK(cell(false, true, true) == "d-NNF");
  CHECK(cell(true, true, true) == "NNF");
}

TEST_CASE("per-task circuit classes") {
  const std::map<std::string, std::string> expected = {
      {"OBDD", "NNF"},     {"SAT", "DNNF"},   {"S-PATH", "DNNF"},  {"W-PATH", "DNNF"},
      {"FUZZY", "DNNF"},   {"PROB", "d-DNNF"}, {"SENS", "d-DNNF"},  {"GRAD", "d-DNNF"},
      {"MPE", "s-DNNF"},   {"kWEIGHT", "s-DNNF"}, {"#SAT", "sd-DNNF"}, {"WMC", "sd-DNNF"},
      {"WHY", "s-DNNF"},   {"RA+", "sd-DNNF"}};
  Rng rng(8);
  for (const auto& [name, cls] : expected) {
    CAPTURE(name);
    const auto d = builtin(name, params_for(name, 5));
    CHECK(required_circuit_class(declared_profile(d)).name() == cls);
    CHECK(required_circuit_class(task_profile_of(d, canonical_labeling(d, 5, rng))).name() == cls);
  }
}

TEST_CASE("soundness predicate") {
  const TaskProfile count{false, false, false};
  const TaskProfile mpe{true, false, false};
  CHECK(is_sound(CircuitClass{true, true, true}, count));
  CHECK(is_sound(CircuitClass{true, true, true}, TaskProfile{true, true, true}));
  CHECK_FALSE(is_sound(CircuitClass{true, false, false}, count));
  CHECK(is_sound(CircuitClass{true, false, true}, mpe));
  CHECK(missing_properties(CircuitClass{true, false, false}, count) ==
        std::vector<std::string>{"determinism", "smoothness"});
}

TEST_CASE("checked evaluation modes") {
  const auto prob = builtin("PROB");
  const auto mpe = builtin("MPE");
  SUBCASE("repair smooths for MPE") {
    EvalOptions o;
    o.mode = Mode::Repair;
    const EvalOutcome r = evaluate_checked(or_ab_circuit(), mpe, complement_labels(mpe, {0.6, 0.3}), o);
    CHECK(r.status == EvalStatus::Repaired);
    REQUIRE(r.value);
    CHECK(real(*r.value) == doctest::Approx(0.42).epsilon(1e-12));
    REQUIRE(r.repaired);
    CHECK(check_smooth(*r.repaired).holds);
  }
  SUBCASE("strict refuses PROB on a non-deterministic OR") {
    const EvalOutcome r = evaluate_checked(or_ab_circuit(), prob, complement_labels(prob, {0.6, 0.3}));
    CHECK(r.status == EvalStatus::Refused);
    CHECK_FALSE(r.value);
    CHECK(r.missing == std::vector<std::string>{"determinism"});
    CHECK(r.note.find("determinism") != std::string::npos);
    CHECK(r.note.find("d-DNNF") != std::string::npos);
  }
  SUBCASE("repair cannot add determinism") {
    EvalOptions o;
    o.mode = Mode::Repair;
    CHECK(evaluate_checked(or_ab_circuit(), prob, complement_labels(prob, {0.6, 0.3}), o).status == EvalStatus::Refused);
  }
  SUBCASE("force evaluates and flags") {
    EvalOptions o;
    o.mode = Mode::Force;
    const EvalOutcome r = evaluate_checked(or_ab_circuit(), prob, complement_labels(prob, {0.6, 0.3}), o);
    CHECK(r.status == EvalStatus::Unsound);
    CHECK(real(*r.value) == doctest::Approx(0.9));
  }
  SUBCASE("sd-DNNF is accepted for arbitrary weights") {
    const auto wmc = builtin("WMC");
    const Labeling lab(wmc, {1.5, 0.25}, {0.5, 3.0});
    const EvalOutcome r = evaluate_checked(xor_circuit(), wmc, lab);
    CHECK(r.status == EvalStatus::Sound);
    CHECK(real(*r.value) == doctest::Approx(1.5 * 3.0 + 0.5 * 0.25));
  }
  SUBCASE("measured labeling demotes neutrality") {
    const Labeling lab(prob, {0.6, 0.3}, {0.6, 0.3});
    const EvalOutcome r = evaluate_checked(xor_circuit(), prob, lab);
    CHECK(r.required.name() == "sd-DNNF");
    CHECK(r.status == EvalStatus::Sound);
  }
}

TEST_CASE("root extension covers unmentioned variables") {
  const Circuit c = parse_nnf("nnf 1 0 3\nL 2\n");
  const auto count = builtin("#SAT");
  const auto lab = *default_labeling(count, 3);
  CHECK(evaluate(c, count, lab) == Value(NatInf::of(1)));
  const EvalOutcome r = evaluate_checked(c, count, lab);
  CHECK(*r.value == Value(NatInf::of(4)));
  CHECK(r.extended_vars == std::vector<Var>{1, 3});
  CHECK(amc_brute_force(c, count, lab) == Value(NatInf::of(4)));
  EvalOptions raw;
  raw.extend_root = false;
  CHECK(*evaluate_checked(c, count, lab, raw).value == Value(NatInf::of(1)));
}

TEST_CASE("positive-only semirings") {
  const auto why = builtin("WHY");
  const auto lab = *default_labeling(why, 2);
  CHECK_THROWS_AS(evaluate(xor_circuit(), why, lab), UnsupportedLiteralError);
  const Circuit mono = parse_nnf("nnf 3 2 2\nL 1\nL 2\nA 2 0 1\n");
  CHECK(evaluate(mono, why, lab) == Value(VarSet{1, 2}));
  CHECK(amc_brute_force(mono, why, lab) == Value(VarSet{1, 2}));

  // FALSE below the root: the empty set does not annihilate, so refuse.
  const Circuit withfalse = parse_nnf("nnf 3 2 2\nL 1\nO 0 0\nA 2 0 1\n");
  CHECK(evaluate_checked(withfalse, why, lab).status == EvalStatus::Refused);
  EvalOptions force;
  force.mode = Mode::Force;
  CHECK(evaluate_checked(withfalse, why, lab, force).value.has_value());

  const auto ra = builtin("RA+");
  const auto rl = *default_labeling(ra, 2);
  CHECK(format_value(evaluate(mono, ra, rl)) == "x1*x2");
}

TEST_CASE("obdd semiring yields the model set") {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Var n = std::uniform_int_distribution<Var>(1, 8)(rng);
    const Circuit c = random_nnf(rng, n, 10);
    const auto d = builtin("OBDD", params_for("OBDD", n));
    const Value f = evaluate(c, d, *default_labeling(d, n));
    const ObddRef r = std::get<ObddRef>(f);
    const Circuit back = obdd_to_circuit(*d.store, r, n);
    CHECK(enumerate_models(back) == enumerate_models(c));
  }
}

TEST_CASE("evaluation matches the oracle across semirings on compiled circuits") {
  Rng rng(10);
  for (int i = 0; i < 40; ++i) {
    const Cnf cnf = random_cnf(rng, 8, 16);
    const Circuit c = compile_cnf_to_sddnnf(cnf);
    const auto models = enumerate_models(c);
    for (const auto& name : builtin_names()) {
      if (name == "WHY" || name == "RA+") continue;
      CAPTURE(name);
      const auto d = builtin(name, params_for(name, c.variable_count()));
      const Labeling lab = canonical_labeling(d, c.variable_count(), rng);
      CHECK(values_match(evaluate(c, d, lab), amc_over_models(models, d, lab)));
    }
  }
}

TEST_CASE("memoisation and fold order do not change values") {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    CircuitShape shape;
    shape.vars = 6;
    shape.decomposable = shape.deterministic = shape.smooth = true;
    const Circuit c = random_circuit(rng, shape);
    const Circuit tree = unfold(c);
    const Circuit perm = permute_children(c, rng);
    for (const char* name : {"#SAT", "WMC", "SENS", "kWEIGHT", "OBDD"}) {
      CAPTURE(name);
      const auto d = builtin(name, params_for(name, 6));
      const Labeling lab = canonical_labeling(d, 6, rng);
      const Value v = evaluate(c, d, lab);
      CHECK(values_match(v, evaluate(tree, d, lab)));
      CHECK(values_match(v, evaluate(perm, d, lab)));
    }
  }
}

TEST_CASE("sensitivity polynomial substitutes to the probability") {
  Rng rng(13);
  const auto sens = builtin("SENS");
  const auto prob = builtin("PROB");
  for (int i = 0; i < 30; ++i) {
    const Circuit c = compile_cnf_to_sddnnf(random_cnf(rng, 8, 14));
    const Var n = c.variable_count();
    std::vector<double> p(n + 1, 0.0);
    std::vector<Value> spos, ppos;
    std::vector<std::optional<Value>> sneg, pneg;
    for (Var v = 1; v <= n; ++v) {
      p[v] = std::uniform_real_distribution<double>(0, 1)(rng);
      const Polynomial x = Polynomial::variable(v);
      spos.emplace_back(x);
      sneg.emplace_back(Polynomial::constant(1) - x);
      ppos.emplace_back(p[v]);
      pneg.emplace_back(1 - p[v]);
    }
    if (n > 6) continue; // keep the symbolic result small
    const auto poly = std::get<Polynomial>(evaluate(c, sens, Labeling(sens, spos, sneg)));
    const double pr = real(evaluate(c, prob, Labeling(prob, ppos, pneg)));
    CHECK(poly.evaluate(p) == doctest::Approx(pr).epsilon(1e-9));
  }
}

TEST_CASE("mode parsing") {
  CHECK(parse_mode("repair") == Mode::Repair);
  CHECK(std::string(to_string(EvalStatus::Refused)) == "refused");
  CHECK_THROWS_AS(parse_mode("lenient"), ConfigError);
}

TEST_CASE("subset semirings used for the idempotent-product cells") {
  Rng rng(19);
  for (const auto& d : {subset_ring(3), subset_lattice(3)}) {
    CAPTURE(d.name);
    CHECK(check_axioms(d, 500).all_passed());
    for (bool empty : {false, true}) {
      const Labeling lab = disjoint_labeling(d, 4, 3, rng, empty);
      const TaskProfile p = task_profile_of(d, lab);
      CHECK(p.plus_idempotent == (d.name == "SUBSET-LATTICE"));
      CHECK(p.pair_neutral == !empty);
      CHECK(p.times_idempotent_consistency_preserving);
    }
  }
}
