#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amc::cli {

// Exit codes: 0 success/sound, 1 unsound/refused/mismatch, 2 input error,
// 3 axiom violation.
inline constexpr int kOk = 0;
inline constexpr int kUnsound = 1;
inline constexpr int kInputError = 2;
inline constexpr int kAxiomViolation = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace amc::cli
