#include "amc/labeling_io.hpp"
#include "amc/error.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace amc {

namespace {

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::uint64_t to_uint(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
  return std::stoull(s);
}

// '#' opens a comment at the start of a line or when followed by whitespace,
// so names such as "#SAT" survive.
std::size_t comment_start(const std::string& line) {
  const std::size_t first = line.find_first_not_of(" \t");
  for (std::size_t i = line.find('#'); i != std::string::npos; i = line.find('#', i + 1)) {
    if (i == first || i + 1 == line.size() || std::isspace(static_cast<unsigned char>(line[i + 1]))) return i;
  }
  return line.size();
}

} // namespace

std::vector<Var> parse_order(std::string_view text) {
  std::vector<Var> order;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("malformed variable order '" + std::string(text) + "'");
    order.push_back(static_cast<Var>(std::stoul(item)));
  }
  return order;
}

LoadedLabeling parse_labeling(std::string_view text) {
  std::optional<SemiringDescriptor> desc;
  std::optional<Var> n;
  std::vector<std::optional<std::pair<Value, std::optional<Value>>>> entries;

  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    raw.erase(comment_start(raw));
    auto w = words(raw);
    if (w.empty()) continue;
    try {
      if (!desc) {
        if (w[0] != "semiring" || w.size() < 2) throw ParseError(line_no, "expected 'semiring <NAME> [params]'");
        SemiringParams params;
        for (std::size_t i = 2; i < w.size(); ++i) {
          auto eq = w[i].find('=');
          if (eq == std::string::npos) throw ParseError(line_no, "expected key=value, got '" + w[i] + "'");
          const std::string key = w[i].substr(0, eq), val = w[i].substr(eq + 1);
          if (key == "k") {
            params.k = to_uint(val, line_no);
          } else if (key == "grad_var") {
            params.grad_var = static_cast<Var>(to_uint(val, line_no));
          } else if (key == "order") {
            params.order = parse_order(val);
          } else {
            throw ParseError(line_no, "unknown parameter '" + key + "'");
          }
        }
        desc = builtin(w[1], params);
        continue;
      }
      if (!n) {
        if (w.size() != 2 || w[0] != "vars") throw ParseError(line_no, "expected 'vars <n>'");
        n = static_cast<Var>(to_uint(w[1], line_no));
        entries.resize(*n);
        continue;
      }
      if (w.size() != 3) throw ParseError(line_no, "expected '<var> <pos-value> <neg-value>'");
      const auto v = static_cast<Var>(to_uint(w[0], line_no));
      if (v == 0 || v > *n) throw ParseError(line_no, "variable " + w[0] + " outside 1.." + std::to_string(*n));
      if (entries[v - 1]) throw ParseError(line_no, "variable " + w[0] + " labeled twice");
      Value pos = parse_value(*desc, w[1], v);
      std::optional<Value> neg;
      if (w[2] != "-") {
        if (!desc->supports_negative_literals)
          throw ParseError(line_no, desc->name + " applies to positive literals only; use '-' for the negative label");
        neg = parse_value(*desc, w[2], v);
      }
      entries[v - 1].emplace(std::move(pos), std::move(neg));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!desc) throw ParseError(line_no, "missing 'semiring' line");
  if (!n) throw ParseError(line_no, "missing 'vars' line");

  std::vector<Value> pos;
  std::vector<std::optional<Value>> neg;
  for (Var v = 1; v <= *n; ++v) {
    if (!entries[v - 1]) throw ConfigError("labeling has no entry for variable " + std::to_string(v));
    pos.push_back(entries[v - 1]->first);
    neg.push_back(entries[v - 1]->second);
  }
  Labeling lab(*desc, std::move(pos), std::move(neg));
  return {std::move(*desc), std::move(lab)};
}

namespace {

std::string write_label(const SemiringDescriptor& desc, const Value& v, Var own) {
  if (desc.carrier == Carrier::Diagram) {
    if (v == Value(desc.store->var(own))) return "x";
    if (v == Value(desc.store->negate(desc.store->var(own)))) return "!x";
    if (v == desc.one) return "true";
    if (v == desc.zero) return "false";
    throw ConfigError("OBDD label of variable " + std::to_string(own) + " has no textual form");
  }
  return format_value(v);
}

} // namespace

std::string write_labeling(const SemiringDescriptor& desc, const Labeling& lab) {
  std::ostringstream out;
  out << "semiring " << desc.name;
  if (desc.params.k) out << " k=" << *desc.params.k;
  if (desc.params.grad_var) out << " grad_var=" << *desc.params.grad_var;
  if (!desc.params.order.empty()) {
    out << " order=";
    for (std::size_t i = 0; i < desc.params.order.size(); ++i) out << (i ? "," : "") << desc.params.order[i];
  }
  out << "\nvars " << lab.variable_count() << '\n';
  for (Var v = 1; v <= lab.variable_count(); ++v) {
    out << v << ' ' << write_label(desc, lab.positive(v), v) << ' ';
    const auto& n = lab.negative(v);
    out << (n ? write_label(desc, *n, v) : "-") << '\n';
  }
  return out.str();
}

} // namespace amc
