#include "logdup/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "logdup/error.hpp"

namespace logdup {

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Variable;
  t.name = std::move(name);
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (functor.empty())
    throw ContractViolation("functor names must be non-empty");
  Term t;
  t.kind = Kind::Compound;
  t.name = std::move(functor);
  t.args = std::move(args);
  return t;
}

bool operator==(const Term &a, const Term &b) {
  return a.kind == b.kind && a.name == b.name && a.args == b.args;
}

std::strong_ordering operator<=>(const Term &a, const Term &b) {
  if (auto c = a.kind <=> b.kind; c != 0)
    return c;
  if (auto c = a.name <=> b.name; c != 0)
    return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0)
    return c;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (auto c = a.args[i] <=> b.args[i]; c != 0)
      return c;
  return std::strong_ordering::equal;
}

Term make_list(std::vector<Term> items, Term tail) {
  Term result = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    result = Term::compound(std::string(kCons), {std::move(*it), std::move(result)});
  return result;
}

bool is_number_name(std::string_view name) {
  if (name.empty())
    return false;
  std::size_t i = name[0] == '-' ? 1 : 0;
  if (i >= name.size() || !std::isdigit(static_cast<unsigned char>(name[i])))
    return false;
  bool seen_dot = false;
  for (; i < name.size(); ++i) {
    char c = name[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  }
  return name.back() != '.';
}

Atom Atom::make(std::string name, std::vector<Term> args) {
  if (name.empty())
    throw ContractViolation("predicate names must be non-empty");
  Atom a;
  a.pred = PredSymbol{std::move(name), args.size()};
  a.args = std::move(args);
  return a;
}

bool operator==(const Atom &a, const Atom &b) {
  return a.pred == b.pred && a.args == b.args;
}

std::strong_ordering operator<=>(const Atom &a, const Atom &b) {
  if (auto c = a.pred <=> b.pred; c != 0)
    return c;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (auto c = a.args[i] <=> b.args[i]; c != 0)
      return c;
  return std::strong_ordering::equal;
}

bool same_clause(const Clause &a, const Clause &b) {
  return a.head == b.head && a.body == b.body;
}

std::string Diagnostic::str() const {
  std::string out = location.file;
  if (location.line > 0) {
    out += ":" + std::to_string(location.line);
    if (location.column > 0)
      out += ":" + std::to_string(location.column);
  }
  if (!out.empty())
    out += ": ";
  return out + message;
}

void Program::add_clause(Clause clause) {
  PredSymbol pred = clause.head.pred;
  auto [it, inserted] = clauses_.try_emplace(pred);
  if (inserted)
    order_.push_back(pred);
  it->second.push_back(std::move(clause));
}

void Program::exclude(const PredSymbol &pred, Diagnostic why) {
  excluded_.insert(pred);
  warnings_.push_back(std::move(why));
}

void Program::merge(const Program &other) {
  for (const auto &pred : other.order_)
    for (const auto &c : other.clauses_.at(pred))
      add_clause(c);
  excluded_.insert(other.excluded_.begin(), other.excluded_.end());
  warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

void Program::inherit_diagnostics(const Program &other) {
  excluded_.insert(other.excluded_.begin(), other.excluded_.end());
  warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

std::vector<PredSymbol> Program::predicates() const {
  std::vector<PredSymbol> out;
  for (const auto &p : order_)
    if (!excluded_.count(p))
      out.push_back(p);
  return out;
}

const std::vector<Clause> &Program::clauses(const PredSymbol &pred) const {
  static const std::vector<Clause> none;
  auto it = clauses_.find(pred);
  return it == clauses_.end() ? none : it->second;
}

std::size_t Program::clause_count() const {
  std::size_t n = 0;
  for (const auto &p : predicates())
    n += clauses(p).size();
  return n;
}

namespace {

void collect_vars(const Term &t, std::vector<std::string> &out,
                  std::unordered_set<std::string> &seen) {
  if (t.is_variable()) {
    if (seen.insert(t.name).second)
      out.push_back(t.name);
    return;
  }
  for (const auto &a : t.args)
    collect_vars(a, out, seen);
}

void collect_vars(const Atom &a, std::vector<std::string> &out,
                  std::unordered_set<std::string> &seen) {
  for (const auto &t : a.args)
    collect_vars(t, out, seen);
}

} // namespace

std::vector<std::string> variables_of(const Term &t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_vars(t, out, seen);
  return out;
}

std::vector<std::string> variables_of(const Atom &a) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_vars(a, out, seen);
  return out;
}

std::vector<std::string> variables_of(const Goal &g) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto &a : g)
    collect_vars(a, out, seen);
  return out;
}

std::vector<std::string> variables_of(const Clause &c) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_vars(c.head, out, seen);
  for (const auto &a : c.body)
    collect_vars(a, out, seen);
  return out;
}

Term rename(const Term &t, const Renaming &mapping) {
  if (t.is_variable()) {
    auto it = mapping.find(t.name);
    return it == mapping.end() ? t : Term::variable(it->second);
  }
  Term out;
  out.kind = Term::Kind::Compound;
  out.name = t.name;
  out.args.reserve(t.args.size());
  for (const auto &a : t.args)
    out.args.push_back(rename(a, mapping));
  return out;
}

Atom rename(const Atom &a, const Renaming &mapping) {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const auto &t : a.args)
    out.args.push_back(rename(t, mapping));
  return out;
}

Goal rename(const Goal &g, const Renaming &mapping) {
  Goal out;
  out.reserve(g.size());
  for (const auto &a : g)
    out.push_back(rename(a, mapping));
  return out;
}

Clause rename(const Clause &c, const Renaming &mapping) {
  return Clause{rename(c.head, mapping), rename(c.body, mapping), c.origin};
}

namespace {

class VariantMatcher {
public:
  bool match(const Term &a, const Term &b) {
    if (a.kind != b.kind)
      return false;
    if (a.is_variable()) {
      auto [fwd, f_new] = forward_.try_emplace(a.name, b.name);
      auto [bwd, b_new] = backward_.try_emplace(b.name, a.name);
      return fwd->second == b.name && bwd->second == a.name;
    }
    if (a.name != b.name || a.args.size() != b.args.size())
      return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!match(a.args[i], b.args[i]))
        return false;
    return true;
  }

  bool match(const Atom &a, const Atom &b) {
    if (a.pred != b.pred)
      return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!match(a.args[i], b.args[i]))
        return false;
    return true;
  }

  bool match(const Goal &a, const Goal &b) {
    if (a.size() != b.size())
      return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!match(a[i], b[i]))
        return false;
    return true;
  }

private:
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
};

} // namespace

bool is_variant(const Clause &a, const Clause &b) {
  VariantMatcher m;
  return m.match(a.head, b.head) && m.match(a.body, b.body);
}

bool is_variant(const Goal &a, const Goal &b) {
  VariantMatcher m;
  return m.match(a, b);
}

} // namespace logdup
