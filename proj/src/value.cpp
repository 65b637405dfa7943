#include "amc/value.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace amc {

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(Var v) {
  Polynomial p;
  p.add_term({{v, 1}}, 1.0);
  return p;
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double c) {
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) it->second += c;
  if (std::abs(it->second) < kDropThreshold) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  Monomial prod;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      prod.clear();
      auto ia = ma.begin(), ib = mb.begin();
      while (ia != ma.end() || ib != mb.end()) {
        if (ib == mb.end() || (ia != ma.end() && ia->first < ib->first)) {
          prod.push_back(*ia++);
        } else if (ia == ma.end() || ib->first < ia->first) {
          prod.push_back(*ib++);
        } else {
          prod.emplace_back(ia->first, ia->second + ib->second);
          ++ia;
          ++ib;
        }
      }
      r.add_term(prod, ca * cb);
    }
  }
  return r;
}

double Polynomial::evaluate(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c;
    for (auto [v, e] : m) t *= std::pow(point[v], static_cast<double>(e));
    sum += t;
  }
  return sum;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

namespace {

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    double mag = c;
    if (!first) {
      out << (c < 0 ? "-" : "+");
      mag = std::abs(c);
    }
    first = false;
    if (m.empty()) {
      out << format_real(mag);
      continue;
    }
    if (mag == -1.0) {
      out << '-';
    } else if (mag != 1.0) {
      out << format_real(mag) << '*';
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out << '*';
      out << 'x' << m[i].first;
      if (m[i].second != 1) out << '^' << m[i].second;
    }
  }
  return out.str();
}

struct Formatter {
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const NatInf& n) const { return n.infinite ? "inf" : std::to_string(n.value); }
  std::string operator()(double x) const { return format_real(x); }
  std::string operator()(const RealPair& p) const { return "(" + format_real(p.first) + "," + format_real(p.second) + ")"; }
  std::string operator()(const Polynomial& p) const { return format_polynomial(p); }
  std::string operator()(const VarSet& s) const {
    std::string out = "{";
    bool first = true;
    for (Var v : s) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(v);
    }
    return out + "}";
  }
  std::string operator()(const ObddRef& r) const { return "obdd:" + std::to_string(r.node); }
};

bool close(double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return true;
  const double d = std::abs(a - b);
  return d <= abs_tol || d <= rel_tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

std::string format_value(const Value& v) { return std::visit(Formatter{}, v); }

bool approx_equal(const Value& a, const Value& b, double rel_tol, double abs_tol) {
  if (a.index() != b.index()) return false;
  if (auto x = std::get_if<double>(&a)) return close(*x, std::get<double>(b), rel_tol, abs_tol);
  if (auto x = std::get_if<RealPair>(&a)) {
    const auto& y = std::get<RealPair>(b);
    return close(x->first, y.first, rel_tol, abs_tol) && close(x->second, y.second, rel_tol, abs_tol);
  }
  if (auto x = std::get_if<Polynomial>(&a)) {
    const auto& y = std::get<Polynomial>(b);
    for (const auto& [m, c] : x->terms())
      if (!close(c, y.coefficient(m), rel_tol, abs_tol)) return false;
    for (const auto& [m, c] : y.terms())
      if (!close(c, x->coefficient(m), rel_tol, abs_tol)) return false;
    return true;
  }
  return a == b;
}

} // namespace amc
