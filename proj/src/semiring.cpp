#include "amc/semiring.hpp"
#include "amc/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace amc {

namespace {

std::string describe(const Value& v) {
  static const char* kinds[] = {"boolean", "natural", "real", "pair", "polynomial", "set", "diagram"};
  return std::string(kinds[v.index()]) + " " + format_value(v);
}


bool structural_eq(const Value& a, const Value& b) { return a == b; }

bool tolerant_eq(const Value& a, const Value& b) { return approx_equal(a, b, 0.0, kRealTolerance); }

bool is_finite_nat(const Value& v) {
  auto n = std::get_if<NatInf>(&v);
  return n && !n->infinite;
}

bool nonneg_real(const Value& v) {
  auto x = std::get_if<double>(&v);
  return x && std::isfinite(*x) && *x >= 0.0;
}

const NatInf& nat(const Value& v) { return std::get<NatInf>(v); }
double real(const Value& v) { return std::get<double>(v); }
const RealPair& pair(const Value& v) { return std::get<RealPair>(v); }
const Polynomial& poly(const Value& v) { return std::get<Polynomial>(v); }
const VarSet& varset(const Value& v) { return std::get<VarSet>(v); }

Polynomial random_polynomial(Rng& rng, bool natural) {
  std::uniform_int_distribution<int> nterms(0, 3), coef_int(natural ? 1 : -3, 3), var(1, 3), exp(1, 2),
      nfactors(0, 2);
  Polynomial p;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    int c = coef_int(rng);
    if (c == 0) c = 1;
    Polynomial term = Polynomial::constant(c);
    const int f = nfactors(rng);
    for (int i = 0; i < f; ++i) {
      const int e = exp(rng);
      const Var v = static_cast<Var>(var(rng));
      for (int j = 0; j < e; ++j) term = term * Polynomial::variable(v);
    }
    p = p + term;
  }
  return p;
}

NatInf random_extended(Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<std::uint64_t> n(0, 30);
  return coin(rng) == 0 ? NatInf::inf() : NatInf::of(n(rng));
}

SemiringDescriptor real_semiring(std::string name) {
  SemiringDescriptor d;
  d.name = std::move(name);
  d.carrier = Carrier::Real;
  d.zero = 0.0;
  d.one = 1.0;
  d.contains = nonneg_real;
  d.equal = tolerant_eq;
  d.sample = [](Rng& rng) -> Value { return std::uniform_real_distribution<double>(0.0, 4.0)(rng); };
  d.plus_op = [](const Value& a, const Value& b) -> Value { return real(a) + real(b); };
  d.times_op = [](const Value& a, const Value& b) -> Value { return real(a) * real(b); };
  return d;
}

SemiringDescriptor make_sat() {
  SemiringDescriptor d;
  d.name = "SAT";
  d.carrier = Carrier::Boolean;
  d.zero = false;
  d.one = true;
  d.plus_op = [](const Value& a, const Value& b) -> Value { return std::get<bool>(a) || std::get<bool>(b); };
  d.times_op = [](const Value& a, const Value& b) -> Value { return std::get<bool>(a) && std::get<bool>(b); };
  d.plus_idempotent = true;
  d.canonical_pair_neutral = true;
  d.contains = [](const Value& v) { return std::holds_alternative<bool>(v); };
  d.equal = structural_eq;
  d.sample = [](Rng& rng) -> Value { return std::bernoulli_distribution(0.5)(rng); };
  return d;
}

SemiringDescriptor make_count() {
  SemiringDescriptor d;
  d.name = "#SAT";
  d.carrier = Carrier::Natural;
  d.zero = NatInf::of(0);
  d.one = NatInf::of(1);
  d.plus_op = [](const Value& a, const Value& b) -> Value { return NatInf::of(nat(a).value + nat(b).value); };
  d.times_op = [](const Value& a, const Value& b) -> Value { return NatInf::of(nat(a).value * nat(b).value); };
  d.contains = is_finite_nat;
  d.equal = structural_eq;
  d.sample = [](Rng& rng) -> Value { return NatInf::of(std::uniform_int_distribution<std::uint64_t>(0, 20)(rng)); };
  return d;
}

SemiringDescriptor make_sens() {
  SemiringDescriptor d;
  d.name = "SENS";
  d.carrier = Carrier::Polynomial;
  d.zero = Polynomial();
  d.one = Polynomial::constant(1.0);
  d.plus_op = [](const Value& a, const Value& b) -> Value { return poly(a) + poly(b); };
  d.times_op = [](const Value& a, const Value& b) -> Value { return poly(a) * poly(b); };
  d.canonical_pair_neutral = true;
  d.contains = [](const Value& v) { return std::holds_alternative<Polynomial>(v); };
  d.equal = tolerant_eq;
  d.sample = [](Rng& rng) -> Value { return random_polynomial(rng, false); };
  return d;
}

SemiringDescriptor make_grad(const SemiringParams& params) {
  SemiringDescriptor d;
  d.name = "GRAD";
  d.carrier = Carrier::RealPair;
  d.params.grad_var = params.grad_var.value_or(1);
  if (*d.params.grad_var == 0) throw ConfigError("GRAD: grad_var must be a variable index >= 1");
  d.zero = RealPair{0.0, 0.0};
  d.one = RealPair{1.0, 0.0};
  d.plus_op = [](const Value& a, const Value& b) -> Value {
    return RealPair{pair(a).first + pair(b).first, pair(a).second + pair(b).second};
  };
  d.times_op = [](const Value& a, const Value& b) -> Value {
    const auto& x = pair(a);
    const auto& y = pair(b);
    return RealPair{x.first * y.first, x.first * y.second + x.second * y.first};
  };
  d.canonical_pair_neutral = true;
  d.contains = [](const Value& v) {
    auto p = std::get_if<RealPair>(&v);
    return p && std::isfinite(p->first) && std::isfinite(p->second) && p->first >= 0.0;
  };
  d.equal = tolerant_eq;
  d.sample = [](Rng& rng) -> Value {
    return RealPair{std::uniform_real_distribution<double>(0.0, 4.0)(rng),
                    std::uniform_real_distribution<double>(-4.0, 4.0)(rng)};
  };
  return d;
}

SemiringDescriptor make_path(bool shortest) {
  SemiringDescriptor d;
  d.name = shortest ? "S-PATH" : "W-PATH";
  d.carrier = Carrier::ExtendedNatural;
  if (shortest) {
    d.zero = NatInf::inf();
    d.one = NatInf::of(0);
    d.plus_op = [](const Value& a, const Value& b) -> Value { return std::min(nat(a), nat(b)); };
    d.times_op = [](const Value& a, const Value& b) -> Value {
      if (nat(a).infinite || nat(b).infinite) return NatInf::inf();
      return NatInf::of(nat(a).value + nat(b).value);
    };
  } else {
    d.zero = NatInf::of(0);
    d.one = NatInf::inf();
    d.plus_op = [](const Value& a, const Value& b) -> Value { return std::max(nat(a), nat(b)); };
    d.times_op = [](const Value& a, const Value& b) -> Value { return std::min(nat(a), nat(b)); };
  }
  d.plus_idempotent = true;
  d.canonical_pair_neutral = true;
  d.contains = [](const Value& v) { return std::holds_alternative<NatInf>(v); };
  d.equal = structural_eq;
  d.sample = [](Rng& rng) -> Value { return random_extended(rng); };
  return d;
}

SemiringDescriptor make_fuzzy() {
  SemiringDescriptor d = real_semiring("FUZZY");
  d.plus_op = [](const Value& a, const Value& b) -> Value { return std::max(real(a), real(b)); };
  d.times_op = [](const Value& a, const Value& b) -> Value { return std::min(real(a), real(b)); };
  d.plus_idempotent = true;
  d.canonical_pair_neutral = true;
  d.contains = [](const Value& v) { return nonneg_real(v) && real(v) <= 1.0; };
  d.sample = [](Rng& rng) -> Value { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  return d;
}

SemiringDescriptor make_kweight(const SemiringParams& params) {
  if (!params.k) throw ConfigError("kWEIGHT requires parameter k");
  const std::uint64_t k = *params.k;
  SemiringDescriptor d;
  d.name = "kWEIGHT";
  d.carrier = Carrier::Natural;
  d.params.k = k;
  d.zero = NatInf::of(k);
  d.one = NatInf::of(0);
  d.plus_op = [](const Value& a, const Value& b) -> Value { return std::min(nat(a), nat(b)); };
  // Bounded addition: a +^k b = min(a + b, k).
  d.times_op = [k](const Value& a, const Value& b) -> Value { return NatInf::of(std::min(nat(a).value + nat(b).value, k)); };
  d.plus_idempotent = true;
  d.contains = [k](const Value& v) { return is_finite_nat(v) && nat(v).value <= k; };
  d.equal = structural_eq;
  d.sample = [k](Rng& rng) -> Value { return NatInf::of(std::uniform_int_distribution<std::uint64_t>(0, k)(rng)); };
  return d;
}

SemiringDescriptor make_obdd(const SemiringParams& params) {
  if (params.order.empty()) throw ConfigError("OBDD requires a variable order");
  SemiringDescriptor d;
  d.name = "OBDD";
  d.carrier = Carrier::Diagram;
  d.params.order = params.order;
  d.store = std::make_shared<ObddStore>(params.order);
  std::weak_ptr<ObddStore> weak = d.store;
  auto store = [weak]() {
    auto s = weak.lock();
    if (!s) throw UsageError("OBDD store released");
    return s;
  };
  d.zero = d.store->zero();
  d.one = d.store->one();
  d.plus_op = [store](const Value& a, const Value& b) -> Value {
    return store()->disjoin(std::get<ObddRef>(a), std::get<ObddRef>(b));
  };
  d.times_op = [store](const Value& a, const Value& b) -> Value {
    return store()->conjoin(std::get<ObddRef>(a), std::get<ObddRef>(b));
  };
  d.plus_idempotent = true;
  d.times_idempotent_consistency_preserving = true;
  d.canonical_pair_neutral = true;
  d.contains = [weak](const Value& v) {
    auto r = std::get_if<ObddRef>(&v);
    auto s = weak.lock();
    return r && s && s->owns(*r);
  };
  d.equal = structural_eq;
  d.sample = [store](Rng& rng) -> Value {
    auto s = store();
    const std::size_t m = std::min<std::size_t>(4, s->order().size());
    std::bernoulli_distribution coin(0.5);
    ObddRef f = s->zero();
    for (std::size_t row = 0; row < (std::size_t{1} << m); ++row) {
      if (!coin(rng)) continue;
      ObddRef cube = s->one();
      for (std::size_t i = 0; i < m; ++i) {
        const auto v = static_cast<Literal>(s->order()[i]);
        cube = s->conjoin(cube, s->literal((row >> i) & 1 ? v : -v));
      }
      f = s->disjoin(f, cube);
    }
    return f;
  };
  return d;
}

SemiringDescriptor make_why() {
  SemiringDescriptor d;
  d.name = "WHY";
  d.carrier = Carrier::VarSet;
  d.zero = VarSet{};
  d.one = VarSet{};
  auto unite = [](const Value& a, const Value& b) -> Value {
    VarSet r = varset(a);
    r.insert(varset(b).begin(), varset(b).end());
    return r;
  };
  d.plus_op = unite;
  d.times_op = unite;
  d.plus_idempotent = true;
  d.supports_negative_literals = false;
  d.zero_annihilates = false;
  d.contains = [](const Value& v) { return std::holds_alternative<VarSet>(v); };
  d.equal = structural_eq;
  d.sample = [](Rng& rng) -> Value {
    VarSet s;
    std::bernoulli_distribution coin(0.4);
    for (Var v = 1; v <= 6; ++v)
      if (coin(rng)) s.insert(v);
    return s;
  };
  return d;
}

SemiringDescriptor make_raplus() {
  SemiringDescriptor d = make_sens();
  d.name = "RA+";
  d.canonical_pair_neutral = false;
  d.supports_negative_literals = false;
  d.contains = [](const Value& v) {
    auto p = std::get_if<Polynomial>(&v);
    if (!p) return false;
    return std::all_of(p->terms().begin(), p->terms().end(),
                       [](const auto& t) { return t.second > 0 && t.second == std::floor(t.second); });
  };
  d.sample = [](Rng& rng) -> Value { return random_polynomial(rng, true); };
  return d;
}

std::string normalize(std::string_view name) {
  std::string out;
  for (char c : name)
    if (c != '-' && c != '_' && !std::isspace(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

Value plus(const SemiringDescriptor& desc, const Value& a, const Value& b) {
  if (!desc.contains(a)) throw SemiringTypeError(desc.name + ": " + describe(a) + " is not in the carrier");
  if (!desc.contains(b)) throw SemiringTypeError(desc.name + ": " + describe(b) + " is not in the carrier");
  return desc.plus_op(a, b);
}

Value times(const SemiringDescriptor& desc, const Value& a, const Value& b) {
  if (!desc.contains(a)) throw SemiringTypeError(desc.name + ": " + describe(a) + " is not in the carrier");
  if (!desc.contains(b)) throw SemiringTypeError(desc.name + ": " + describe(b) + " is not in the carrier");
  return desc.times_op(a, b);
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"SAT", "#SAT",   "WMC",     "PROB", "SENS", "GRAD", "MPE",
                                                 "S-PATH", "W-PATH", "FUZZY", "kWEIGHT", "OBDD", "WHY", "RA+"};
  return names;
}

std::string canonical_semiring_name(std::string_view name) {
  static const std::map<std::string, std::string> aliases = {
      {"SAT", "SAT"},       {"#SAT", "#SAT"},     {"COUNT", "#SAT"},     {"SHARPSAT", "#SAT"},
      {"MC", "#SAT"},       {"WMC", "WMC"},       {"PROB", "PROB"},      {"SENS", "SENS"},
      {"GRAD", "GRAD"},     {"MPE", "MPE"},       {"SPATH", "S-PATH"},   {"WPATH", "W-PATH"},
      {"FUZZY", "FUZZY"},   {"KWEIGHT", "kWEIGHT"}, {"OBDD", "OBDD"},    {"OBDD<", "OBDD"},
      {"WHY", "WHY"},       {"RA+", "RA+"},       {"RAPLUS", "RA+"},     {"RA", "RA+"}};
  auto it = aliases.find(normalize(name));
  if (it == aliases.end()) throw ConfigError("unknown semiring '" + std::string(name) + "'");
  return it->second;
}

SemiringDescriptor builtin(std::string_view name, const SemiringParams& params) {
  const std::string n = canonical_semiring_name(name);
  if (n == "SAT") return make_sat();
  if (n == "#SAT") return make_count();
  if (n == "WMC") return real_semiring("WMC");
  if (n == "PROB") {
    auto d = real_semiring("PROB");
    d.canonical_pair_neutral = true;
    return d;
  }
  if (n == "SENS") return make_sens();
  if (n == "GRAD") return make_grad(params);
  if (n == "MPE") {
    auto d = real_semiring("MPE");
    d.plus_op = [](const Value& a, const Value& b) -> Value { return std::max(real(a), real(b)); };
    d.plus_idempotent = true;
    return d;
  }
  if (n == "S-PATH") return make_path(true);
  if (n == "W-PATH") return make_path(false);
  if (n == "FUZZY") return make_fuzzy();
  if (n == "kWEIGHT") return make_kweight(params);
  if (n == "OBDD") return make_obdd(params);
  if (n == "WHY") return make_why();
  return make_raplus();
}

// ---------------------------------------------------------------------------
// Labeling

Labeling::Labeling(const SemiringDescriptor& desc, std::vector<Value> pos, std::vector<std::optional<Value>> neg)
    : semiring_(desc.name), positive_only_(!desc.supports_negative_literals), one_(desc.one), pos_(std::move(pos)),
      neg_(std::move(neg)) {
  if (neg_.size() != pos_.size()) throw ConfigError("labeling: positive and negative label counts differ");
  for (Var v = 1; v <= pos_.size(); ++v) {
    if (!desc.contains(pos_[v - 1]))
      throw SemiringTypeError(desc.name + ": label of " + std::to_string(v) + " (" + describe(pos_[v - 1]) +
                              ") is not in the carrier");
    const auto& n = neg_[v - 1];
    if (positive_only_ && n)
      throw UnsupportedLiteralError(desc.name + " applies to positive literals only; variable " + std::to_string(v) +
                                    " has a negative label");
    if (!positive_only_ && !n) throw ConfigError(desc.name + ": missing negative label for variable " + std::to_string(v));
    if (n && !desc.contains(*n))
      throw SemiringTypeError(desc.name + ": label of -" + std::to_string(v) + " (" + describe(*n) +
                              ") is not in the carrier");
  }
}

const Value& Labeling::positive(Var v) const {
  if (v == 0 || v > pos_.size()) throw ConfigError("no label for variable " + std::to_string(v));
  return pos_[v - 1];
}

const std::optional<Value>& Labeling::negative(Var v) const {
  if (v == 0 || v > neg_.size()) throw ConfigError("no label for variable " + std::to_string(v));
  return neg_[v - 1];
}

Value Labeling::label(Literal l) const {
  if (l > 0) return positive(var_of(l));
  const auto& n = negative(var_of(l));
  if (!n)
    throw UnsupportedLiteralError(semiring_ + " applies to positive literals only (literal " + std::to_string(l) + ")");
  return *n;
}

Value Labeling::model_factor(Literal l) const {
  if (l < 0 && positive_only_) {
    negative(var_of(l)); // range check
    return one_;
  }
  return label(l);
}

std::optional<Labeling> default_labeling(const SemiringDescriptor& desc, Var n) {
  std::vector<Value> pos;
  std::vector<std::optional<Value>> neg;
  for (Var v = 1; v <= n; ++v) {
    if (desc.name == "SAT") {
      pos.emplace_back(true);
      neg.emplace_back(true);
    } else if (desc.name == "#SAT") {
      pos.emplace_back(NatInf::of(1));
      neg.emplace_back(NatInf::of(1));
    } else if (desc.name == "OBDD") {
      pos.emplace_back(desc.store->var(v));
      neg.emplace_back(desc.store->negate(desc.store->var(v)));
    } else if (desc.name == "WHY") {
      pos.emplace_back(VarSet{v});
      neg.emplace_back(std::nullopt);
    } else if (desc.name == "RA+") {
      pos.emplace_back(Polynomial::variable(v));
      neg.emplace_back(std::nullopt);
    } else {
      return std::nullopt;
    }
  }
  return Labeling(desc, std::move(pos), std::move(neg));
}

Labeling canonical_labeling(const SemiringDescriptor& desc, Var n, Rng& rng) {
  if (auto fixed = default_labeling(desc, n)) return *fixed;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Value> pos;
  std::vector<std::optional<Value>> neg;
  // SENS keeps at most four parameters symbolic; the rest are constants.
  std::vector<bool> symbolic(n + 1, false);
  if (desc.name == "SENS") {
    std::vector<Var> vars;
    for (Var v = 1; v <= n; ++v) vars.push_back(v);
    std::shuffle(vars.begin(), vars.end(), rng);
    for (std::size_t i = 0; i < vars.size() && i < 4; ++i) symbolic[vars[i]] = true;
  }
  for (Var v = 1; v <= n; ++v) {
    const std::string& s = desc.name;
    if (s == "WMC") {
      pos.emplace_back(unit(rng) * 2.0);
      neg.emplace_back(unit(rng) * 2.0);
    } else if (s == "PROB" || s == "MPE") {
      const double p = unit(rng);
      pos.emplace_back(p);
      neg.emplace_back(1.0 - p);
    } else if (s == "SENS") {
      Polynomial p = symbolic[v] ? Polynomial::variable(v) : Polynomial::constant(unit(rng));
      neg.emplace_back(Polynomial::constant(1.0) - p);
      pos.emplace_back(std::move(p));
    } else if (s == "GRAD") {
      const double p = unit(rng);
      const bool k = v == desc.params.grad_var.value_or(1);
      pos.emplace_back(RealPair{p, k ? 1.0 : 0.0});
      neg.emplace_back(RealPair{1.0 - p, k ? -1.0 : 0.0});
    } else if (s == "S-PATH") {
      pos.emplace_back(NatInf::of(std::uniform_int_distribution<std::uint64_t>(0, 10)(rng)));
      neg.emplace_back(NatInf::of(0));
    } else if (s == "W-PATH") {
      pos.emplace_back(NatInf::of(std::uniform_int_distribution<std::uint64_t>(0, 10)(rng)));
      neg.emplace_back(NatInf::inf());
    } else if (s == "FUZZY") {
      pos.emplace_back(unit(rng));
      neg.emplace_back(1.0);
    } else if (s == "kWEIGHT") {
      std::uniform_int_distribution<std::uint64_t> w(0, *desc.params.k);
      pos.emplace_back(NatInf::of(w(rng)));
      neg.emplace_back(NatInf::of(w(rng)));
    } else {
      throw ConfigError("no canonical labeling for semiring " + s);
    }
  }
  return Labeling(desc, std::move(pos), std::move(neg));
}

// ---------------------------------------------------------------------------
// Value parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) throw ConfigError("empty number");
  char* end = nullptr;
  const double x = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size()) throw ConfigError("malformed number '" + str + "'");
  return x;
}

std::uint64_t parse_natural(std::string_view s) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ConfigError("malformed natural number '" + std::string(s) + "'");
  return std::stoull(std::string(s));
}

// expr := ['+'|'-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := number | 'x'[index]['^'exp] | '(' expr ')'
class PolynomialParser {
public:
  PolynomialParser(std::string_view text, Var own) : s_(text), own_(own) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("polynomial '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::uint64_t digits() {
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected digits");
    return std::stoull(std::string(s_.substr(start, i_ - start)));
  }
  Polynomial expr() {
    bool negative = eat('-');
    if (!negative) eat('+');
    Polynomial p = term();
    if (negative) p = Polynomial() - p;
    while (true) {
      if (eat('+')) {
        p = p + term();
      } else if (eat('-')) {
        p = p - term();
      } else {
        return p;
      }
    }
  }
  Polynomial term() {
    Polynomial p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }
  Polynomial factor() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Polynomial p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (s_[i_] == 'x') {
      ++i_;
      Var v = own_;
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = static_cast<Var>(digits());
      if (v == 0) fail("variable index must be >= 1");
      std::uint64_t e = 1;
      if (eat('^')) {
        skip();
        e = digits();
      }
      Polynomial p = Polynomial::constant(1.0);
      for (std::uint64_t k = 0; k < e; ++k) p = p * Polynomial::variable(v);
      return p;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' || s_[i_] == 'e' ||
                              s_[i_] == 'E' ||
                              ((s_[i_] == '-' || s_[i_] == '+') && i_ > start && (s_[i_ - 1] == 'e' || s_[i_ - 1] == 'E'))))
      ++i_;
    if (start == i_) fail("expected a number or x");
    return Polynomial::constant(parse_real(s_.substr(start, i_ - start)));
  }

  std::string_view s_;
  Var own_;
  std::size_t i_ = 0;
};

} // namespace

Value parse_value(const SemiringDescriptor& desc, std::string_view text, Var own) {
  text = trim(text);
  Value v;
  switch (desc.carrier) {
  case Carrier::Boolean:
    if (text == "true" || text == "1") {
      v = true;
    } else if (text == "false" || text == "0") {
      v = false;
    } else {
      throw ConfigError("expected true/false, got '" + std::string(text) + "'");
    }
    break;
  case Carrier::Natural:
  case Carrier::ExtendedNatural:
    if (text == "inf") {
      v = NatInf::inf();
    } else {
      v = NatInf::of(parse_natural(text));
    }
    break;
  case Carrier::Real:
    v = parse_real(text);
    break;
  case Carrier::RealPair: {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
      throw ConfigError("expected a pair '(a,b)', got '" + std::string(text) + "'");
    auto inner = text.substr(1, text.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ConfigError("pair without ','");
    v = RealPair{parse_real(inner.substr(0, comma)), parse_real(inner.substr(comma + 1))};
    break;
  }
  case Carrier::Polynomial:
    v = PolynomialParser(text, own).parse();
    break;
  case Carrier::VarSet: {
    if (text == "x") {
      v = VarSet{own};
      break;
    }
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
      throw ConfigError("expected a set '{1,3}', got '" + std::string(text) + "'");
    VarSet s;
    auto inner = trim(text.substr(1, text.size() - 2));
    while (!inner.empty()) {
      auto comma = inner.find(',');
      s.insert(static_cast<Var>(parse_natural(inner.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      inner = inner.substr(comma + 1);
    }
    v = std::move(s);
    break;
  }
  case Carrier::Diagram:
    if (text == "x") {
      v = desc.store->var(own);
    } else if (text == "!x" || text == "~x") {
      v = desc.store->negate(desc.store->var(own));
    } else if (text == "true" || text == "1") {
      v = desc.store->one();
    } else if (text == "false" || text == "0") {
      v = desc.store->zero();
    } else {
      throw ConfigError("expected x, !x, true or false for an OBDD label, got '" + std::string(text) + "'");
    }
    break;
  }
  if (!desc.contains(v)) throw SemiringTypeError(desc.name + ": " + describe(v) + " is not in the carrier");
  return v;
}

// ---------------------------------------------------------------------------
// Property checks

bool AxiomReport::all_passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.passed; });
}

AxiomReport check_axioms(const SemiringDescriptor& desc, std::size_t trials, std::uint64_t seed) {
  return check_axioms(desc, desc.sample, trials, seed);
}

AxiomReport check_axioms(const SemiringDescriptor& desc, const Sampler& sampler, std::size_t trials,
                         std::uint64_t seed) {
  if (trials == 0) throw ConfigError("check_axioms needs at least one trial");
  Rng rng(seed);
  AxiomReport report;
  report.semiring = desc.name;
  report.trials = trials;
  for (const char* law : {"associativity(plus)", "associativity(times)", "commutativity(plus)",
                          "commutativity(times)", "distributivity", "identity(plus)", "identity(times)",
                          "annihilation"})
    report.laws.push_back(LawResult{law, true, {}});
  auto P = [&](const Value& a, const Value& b) { return plus(desc, a, b); };
  auto T = [&](const Value& a, const Value& b) { return times(desc, a, b); };
  auto record = [&](std::size_t law, bool ok, std::string witness) {
    auto& r = report.laws[law];
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = std::move(witness);
    }
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const Value a = sampler(rng), b = sampler(rng), c = sampler(rng);
    const std::string ab = "a=" + format_value(a) + ", b=" + format_value(b);
    const std::string abc = ab + ", c=" + format_value(c);
    record(0, desc.equal(P(P(a, b), c), P(a, P(b, c))), abc);
    record(1, desc.equal(T(T(a, b), c), T(a, T(b, c))), abc);
    record(2, desc.equal(P(a, b), P(b, a)), ab);
    record(3, desc.equal(T(a, b), T(b, a)), ab);
    record(4, desc.equal(T(a, P(b, c)), P(T(a, b), T(a, c))), abc);
    record(5, desc.equal(P(desc.zero, a), a), "a=" + format_value(a));
    record(6, desc.equal(T(desc.one, a), a), "a=" + format_value(a));
    record(7, desc.equal(T(desc.zero, a), desc.zero), "a=" + format_value(a));
  }
  return report;
}

PairProperties check_pair_properties(const SemiringDescriptor& desc, const Labeling& lab, std::size_t samples,
                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Value> pool;
  for (std::size_t i = 0; i < samples; ++i) pool.push_back(desc.sample(rng));
  for (Var v = 1; v <= lab.variable_count(); ++v) {
    pool.push_back(lab.positive(v));
    pool.push_back(lab.model_factor(-static_cast<Literal>(v)));
  }

  PairProperties p;
  p.plus_idempotent = std::all_of(pool.begin(), pool.end(), [&](const Value& a) { return desc.equal(plus(desc, a, a), a); });
  const bool times_idempotent =
      std::all_of(pool.begin(), pool.end(), [&](const Value& a) { return desc.equal(times(desc, a, a), a); });

  p.pair_neutral = true;
  bool consistency_preserving = true;
  for (Var v = 1; v <= lab.variable_count(); ++v) {
    const Value pos = lab.positive(v);
    const Value neg = lab.model_factor(-static_cast<Literal>(v));
    if (!desc.equal(plus(desc, pos, neg), desc.one)) p.pair_neutral = false;
    if (!desc.equal(times(desc, pos, neg), desc.zero)) consistency_preserving = false;
  }
  p.times_idempotent_consistency_preserving = times_idempotent && consistency_preserving;
  return p;
}

} // namespace amc
