#pragma once

#include "amc/circuit.hpp"
#include "amc/obdd.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace amc {

// Natural number extended with a distinguished infinity token.
struct NatInf {
  std::uint64_t value = 0;
  bool infinite = false;

  static NatInf of(std::uint64_t v) { return {v, false}; }
  static NatInf inf() { return {0, true}; }

  friend bool operator==(const NatInf& a, const NatInf& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator<(const NatInf& a, const NatInf& b) {
    if (a.infinite) return false;
    return b.infinite || a.value < b.value;
  }
};

struct RealPair {
  double first = 0.0;
  double second = 0.0;
  friend bool operator==(const RealPair&, const RealPair&) = default;
};

// Sparse multivariate polynomial with real coefficients. Canonical: no
// (near-)zero coefficients, monomials sorted by variable with exponents >= 1.
class Polynomial {
public:
  using Monomial = std::vector<std::pair<Var, std::uint32_t>>;

  static constexpr double kDropThreshold = 1e-15;

  Polynomial() = default;
  static Polynomial constant(double c);
  static Polynomial variable(Var v);

  const std::map<Monomial, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  double coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;

  // point[v] is the value substituted for variable v.
  double evaluate(std::span<const double> point) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  void add_term(const Monomial& m, double c);
  std::map<Monomial, double> terms_;
};

using VarSet = std::set<Var>;

using Value = std::variant<bool, NatInf, double, RealPair, Polynomial, VarSet, ObddRef>;

// Renders a value in the labeling-file grammar: 0.6, inf, (0.6,1), {1,3},
// polynomials such as "0.4+0.6*x1*x2^2" (no spaces), true/false. Diagrams print as
// "obdd:<node>".
std::string format_value(const Value& v);
std::string format_real(double x);

// Structural equality for exact carriers; for reals, |a-b| <= abs_tol or
// |a-b| <= rel_tol*max(|a|,|b|), applied component/coefficient-wise.
bool approx_equal(const Value& a, const Value& b, double rel_tol, double abs_tol);

} // namespace amc
