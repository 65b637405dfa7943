#pragma once

#include "amc/value.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x414D43;

enum class Carrier { Boolean, Natural, ExtendedNatural, Real, RealPair, Polynomial, VarSet, Diagram };

struct SemiringParams {
  std::optional<std::uint64_t> k;   // kWEIGHT bound
  std::optional<Var> grad_var;      // GRAD: index of the differentiated variable (default 1)
  std::vector<Var> order;           // OBDD variable order
};

// One commutative semiring instance. Operations are reached through the
// free functions plus()/times(), which check carrier membership first.
struct SemiringDescriptor {
  std::string name;
  Carrier carrier = Carrier::Real;
  std::function<Value(const Value&, const Value&)> plus_op;
  std::function<Value(const Value&, const Value&)> times_op;
  Value zero;
  Value one;

  bool plus_idempotent = false;
  bool times_idempotent_consistency_preserving = false;
  bool supports_negative_literals = true;
  // Whether the standard labeling of this instance is neutral.
  bool canonical_pair_neutral = false;
  // False only for WHY, whose zero does not annihilate.
  bool zero_annihilates = true;

  SemiringParams params;
  std::function<bool(const Value&)> contains;
  // Structural equality; reals compare with absolute tolerance 1e-12.
  std::function<bool(const Value&, const Value&)> equal;
  std::function<Value(Rng&)> sample;
  std::shared_ptr<ObddStore> store; // Diagram carrier only
};

inline constexpr double kRealTolerance = 1e-12;

Value plus(const SemiringDescriptor& desc, const Value& a, const Value& b);
Value times(const SemiringDescriptor& desc, const Value& a, const Value& b);

// Canonical name for a built-in ("count" -> "#SAT", "spath" -> "S-PATH", ...);
// throws ConfigError for unknown names.
std::string canonical_semiring_name(std::string_view name);
const std::vector<std::string>& builtin_names();
SemiringDescriptor builtin(std::string_view name, const SemiringParams& params = {});

// Literal labels α(v) / α(¬v). Negative labels are absent exactly when the
// semiring is positive-only (WHY, RA+).
class Labeling {
public:
  Labeling(const SemiringDescriptor& desc, std::vector<Value> pos, std::vector<std::optional<Value>> neg);

  Var variable_count() const noexcept { return static_cast<Var>(pos_.size()); }
  bool positive_only() const noexcept { return positive_only_; }
  const Value& positive(Var v) const;
  const std::optional<Value>& negative(Var v) const;

  // α(l); ConfigError for an unlabeled variable, UnsupportedLiteralError for
  // a negative literal under a positive-only semiring.
  Value label(Literal l) const;
  // Factor contributed by literal l inside a model: α(l), or e⊗ for negative
  // literals of positive-only semirings (they carry no label).
  Value model_factor(Literal l) const;

private:
  std::string semiring_;
  bool positive_only_;
  Value one_;
  std::vector<Value> pos_;
  std::vector<std::optional<Value>> neg_;
};

inline Value label(const Labeling& lab, Literal l) { return lab.label(l); }

// Fixed labelings that need no input: SAT (true/true), #SAT (1/1), OBDD
// (var / negated var), WHY ({v}), RA+ (x_v).
std::optional<Labeling> default_labeling(const SemiringDescriptor& desc, Var variable_count);
// Random labeling of the standard shape for the semiring (e.g. p / 1-p for PROB).
Labeling canonical_labeling(const SemiringDescriptor& desc, Var variable_count, Rng& rng);

// Parses one value of the labeling-file grammar for this semiring. `own`
// is the variable the token `x` refers to.
Value parse_value(const SemiringDescriptor& desc, std::string_view text, Var own);

struct LawResult {
  std::string law;
  bool passed = true;
  std::string counterexample;
};

struct AxiomReport {
  std::string semiring;
  std::size_t trials = 0;
  std::vector<LawResult> laws;
  bool all_passed() const;
};

using Sampler = std::function<Value(Rng&)>;

AxiomReport check_axioms(const SemiringDescriptor& desc, const Sampler& sampler, std::size_t trials,
                         std::uint64_t seed = kDefaultSeed);
AxiomReport check_axioms(const SemiringDescriptor& desc, std::size_t trials, std::uint64_t seed = kDefaultSeed);

struct PairProperties {
  bool plus_idempotent = false;
  bool pair_neutral = false;
  bool times_idempotent_consistency_preserving = false;
};

// Idempotence is sampled (plus the labels themselves); neutrality and
// consistency preservation are checked for every variable.
PairProperties check_pair_properties(const SemiringDescriptor& desc, const Labeling& lab, std::size_t samples = 256,
                                     std::uint64_t seed = kDefaultSeed);

} // namespace amc
