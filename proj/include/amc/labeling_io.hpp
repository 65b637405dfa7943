#pragma once

#include "amc/semiring.hpp"

#include <string>
#include <string_view>

namespace amc {

// Labeling file:
//   semiring <NAME> [k=<int>] [grad_var=<int>] [order=v1,v2,...]
//   vars <n>
//   <var> <pos-value> <neg-value>      (one line per variable)
// '#' starts a comment. Values use the format_value() grammar and contain no
// whitespace; `x` is the variable's own indeterminate and `-` marks an
// absent negative label (WHY, RA+).
struct LoadedLabeling {
  SemiringDescriptor semiring;
  Labeling labeling;
};

LoadedLabeling parse_labeling(std::string_view text);
std::string write_labeling(const SemiringDescriptor& desc, const Labeling& lab);

// "1,2,3" -> {1,2,3}
std::vector<Var> parse_order(std::string_view text);

} // namespace amc
