#pragma once

#include "amc/circuit.hpp"
#include "amc/semiring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace amc {

// Semiring/labeling characteristics that decide which circuit properties
// evaluation can do without.
struct TaskProfile {
  bool plus_idempotent = false;
  bool pair_neutral = false;
  bool times_idempotent_consistency_preserving = false;
  friend bool operator==(const TaskProfile&, const TaskProfile&) = default;
};

// Bottom-up single pass over the DAG: TRUE -> one, FALSE -> zero,
// literal -> label, OR -> plus-fold, AND -> times-fold, children folded
// left to right. Each reachable node is computed once.
Value evaluate(const Circuit& c, const SemiringDescriptor& desc, const Labeling& lab);

// decomposable iff ⊗ is not idempotent+consistency-preserving,
// deterministic iff ⊕ is not idempotent, smooth iff (⊕,α) is not neutral.
CircuitClass required_circuit_class(const TaskProfile& p);
bool is_sound(const CircuitClass& actual, const TaskProfile& p);
std::vector<std::string> missing_properties(const CircuitClass& actual, const TaskProfile& p);
std::string describe_cell(const TaskProfile& p);

// Profile implied by the semiring's canonical labeling.
TaskProfile declared_profile(const SemiringDescriptor& desc);
// Profile measured on a concrete labeling.
TaskProfile task_profile_of(const SemiringDescriptor& desc, const Labeling& lab);

// Multiplies `value` by α(v) ⊕ α(¬v) for every v in 1..variable_count that
// the circuit does not mention, so the count ranges over all variables.
Value extend_to_all_variables(const Value& value, const Circuit& c, const SemiringDescriptor& desc,
                              const Labeling& lab, std::vector<Var>* extended = nullptr);

enum class Mode { Strict, Repair, Force };
enum class EvalStatus { Sound, Repaired, Unsound, Refused };

const char* to_string(Mode m);
const char* to_string(EvalStatus s);
Mode parse_mode(std::string_view text);

struct EvalOptions {
  Mode mode = Mode::Strict;
  std::size_t budget = kDefaultBudget;
  bool extend_root = true;
};

struct EvalOutcome {
  std::optional<Value> value; // empty when refused
  EvalStatus status = EvalStatus::Sound;
  PropertyReport report;
  CircuitClass actual;
  CircuitClass required;
  TaskProfile profile;
  std::vector<std::string> missing;
  std::vector<Var> extended_vars;
  std::optional<Circuit> repaired; // the smoothed circuit in repair mode
  std::string note;
};

// strict: refuse unless the circuit class suffices for the profile;
// repair: smooth when smoothness is the only missing property;
// force: evaluate regardless and flag the result as unsound.
EvalOutcome evaluate_checked(const Circuit& c, const SemiringDescriptor& desc, const Labeling& lab,
                             const EvalOptions& options = {});

} // namespace amc
