#include "logdup/normalize.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace logdup {
namespace {

bool is_unification(const Atom &a) { return a.pred.name == "=" && a.pred.arity == 2; }

bool is_var_var(const Atom &a) {
  return is_unification(a) && a.args[0].is_variable() && a.args[1].is_variable();
}

std::string head_param_name(std::size_t i) {
  if (i < 26)
    return std::string(1, static_cast<char>('A' + i));
  return "A" + std::to_string(i + 1);
}

bool mentions(const Term &t, const std::string &v) {
  if (t.is_variable())
    return t.name == v;
  return std::any_of(t.args.begin(), t.args.end(),
                     [&](const Term &a) { return mentions(a, v); });
}

bool mentions(const Atom &a, const std::string &v) {
  return std::any_of(a.args.begin(), a.args.end(),
                     [&](const Term &t) { return mentions(t, v); });
}

Atom unify(Term lhs, Term rhs) { return Atom::make("=", {std::move(lhs), std::move(rhs)}); }

class ClauseNormalizer {
public:
  Clause run(const Clause &c) {
    Clause out;
    out.origin = c.origin;
    out.head.pred = c.head.pred;
    for (std::size_t i = 0; i < c.head.args.size(); ++i) {
      std::string param = head_param_name(i);
      head_params_.insert(param);
      out.head.args.push_back(Term::variable(param));
      const Term &arg = c.head.args[i];
      if (arg.is_variable()) {
        auto it = image_.find(arg.name);
        if (it == image_.end())
          image_.emplace(arg.name, param);
        else
          body_.push_back(unify(Term::variable(param), Term::variable(it->second)));
      } else {
        flatten(param, arg);
      }
    }
    for (const Atom &a : c.body)
      normalize_atom(a);
    eliminate_aliases();
    out.body = std::move(body_);
    renumber(out);
    return out;
  }

private:
  std::string fresh() {
    std::string name = "#T" + std::to_string(next_temp_++);
    temps_.insert(name);
    return name;
  }

  std::string bind(const std::string &var) {
    auto it = image_.find(var);
    if (it != image_.end())
      return it->second;
    std::string t = fresh();
    image_.emplace(var, t);
    return t;
  }

  // Emits `lhs = f(T1,...,Tn)` and then, in pre-order, the unifications for
  // each compound argument.
  void flatten(const std::string &lhs, const Term &compound) {
    std::vector<Term> args;
    std::set<std::string> used{lhs};
    std::vector<std::pair<std::string, const Term *>> pending;
    std::vector<std::pair<std::string, std::string>> aliases;
    for (const Term &a : compound.args) {
      std::string v;
      if (a.is_variable()) {
        auto it = image_.find(a.name);
        if (it == image_.end()) {
          v = bind(a.name);
        } else if (used.count(it->second)) {
          v = fresh();
          aliases.emplace_back(v, it->second);
        } else {
          v = it->second;
        }
      } else {
        v = fresh();
        pending.emplace_back(v, &a);
      }
      used.insert(v);
      args.push_back(Term::variable(v));
    }
    body_.push_back(unify(Term::variable(lhs), Term::compound(compound.name, std::move(args))));
    for (auto &[t, target] : aliases)
      body_.push_back(unify(Term::variable(t), Term::variable(target)));
    for (auto &[t, sub] : pending)
      flatten(t, *sub);
  }

  Term rename_in_place(const Term &t) {
    if (t.is_variable())
      return Term::variable(bind(t.name));
    std::vector<Term> args;
    for (const Term &a : t.args)
      args.push_back(rename_in_place(a));
    return Term::compound(t.name, std::move(args));
  }

  void normalize_atom(const Atom &a) {
    if (is_unification(a)) {
      normalize_unification(a.args[0], a.args[1]);
      return;
    }
    if (is_arithmetic_builtin(a.pred)) {
      Atom out;
      out.pred = a.pred;
      for (const Term &t : a.args)
        out.args.push_back(rename_in_place(t));
      body_.push_back(std::move(out));
      return;
    }
    Atom call;
    call.pred = a.pred;
    for (const Term &t : a.args) {
      if (t.is_variable()) {
        call.args.push_back(Term::variable(bind(t.name)));
      } else {
        std::string v = fresh();
        flatten(v, t);
        call.args.push_back(Term::variable(v));
      }
    }
    body_.push_back(std::move(call));
  }

  void normalize_unification(const Term &s, const Term &t) {
    if (s.is_variable() && t.is_variable()) {
      if (s.name == t.name)
        return;
      auto is = image_.find(s.name);
      auto it = image_.find(t.name);
      if (is == image_.end() && it == image_.end()) {
        std::string v = fresh();
        image_.emplace(s.name, v);
        image_.emplace(t.name, v);
      } else if (is == image_.end()) {
        image_.emplace(s.name, it->second);
      } else if (it == image_.end()) {
        image_.emplace(t.name, is->second);
      } else if (is->second != it->second) {
        body_.push_back(unify(Term::variable(is->second), Term::variable(it->second)));
      }
      return;
    }
    if (s.is_variable()) {
      flatten(bind(s.name), t);
      return;
    }
    if (t.is_variable()) {
      flatten(bind(t.name), s);
      return;
    }
    std::string v = fresh();
    flatten(v, s);
    flatten(v, t);
  }

  // Substitutes away `X = Y` unifications unless both sides are head
  // parameters or the substitution would repeat a variable inside some
  // `X = f(...)` unification.
  void eliminate_aliases() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < body_.size(); ++i) {
        const Atom &a = body_[i];
        if (!is_var_var(a))
          continue;
        const std::string x = a.args[0].name, y = a.args[1].name;
        if (x == y) {
          body_.erase(body_.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        bool hx = head_params_.count(x) != 0, hy = head_params_.count(y) != 0;
        if (hx && hy)
          continue;
        std::string keeper, victim;
        if (hx) {
          keeper = x;
          victim = y;
        } else if (hy) {
          keeper = y;
          victim = x;
        } else if (first_use(x) <= first_use(y)) {
          keeper = x;
          victim = y;
        } else {
          keeper = y;
          victim = x;
        }
        bool blocked = false;
        for (std::size_t j = 0; j < body_.size() && !blocked; ++j)
          if (j != i && is_unification(body_[j]) && mentions(body_[j], keeper) &&
              mentions(body_[j], victim))
            blocked = true;
        if (blocked)
          continue;
        body_.erase(body_.begin() + static_cast<std::ptrdiff_t>(i));
        Renaming sub{{victim, keeper}};
        for (Atom &b : body_)
          b = rename(b, sub);
        for (auto &[orig, img] : image_)
          if (img == victim)
            img = keeper;
        changed = true;
        break;
      }
    }
  }

  std::size_t first_use(const std::string &v) const {
    for (std::size_t i = 0; i < body_.size(); ++i)
      if (mentions(body_[i], v))
        return i;
    return body_.size();
  }

  void renumber(Clause &c) {
    Renaming names;
    std::size_t n = 0;
    for (const std::string &v : variables_of(c))
      if (temps_.count(v))
        names.emplace(v, "V" + std::to_string(++n));
    c.body = rename(c.body, names);
  }

  std::unordered_map<std::string, std::string> image_;
  std::unordered_set<std::string> head_params_;
  std::unordered_set<std::string> temps_;
  Goal body_;
  std::size_t next_temp_ = 1;
};

} // namespace

bool is_arithmetic_builtin(const PredSymbol &p) {
  if (p.arity != 2)
    return false;
  const auto &n = p.name;
  return n == "is" || n == "<" || n == ">" || n == "=<" || n == ">=" || n == "=:=" ||
         n == "=\\=";
}

Clause normalize_clause(const Clause &c) { return ClauseNormalizer().run(c); }

Program normalize_program(const Program &p) {
  Program out;
  for (const PredSymbol &pred : p.predicates())
    for (const Clause &c : p.clauses(pred))
      out.add_clause(normalize_clause(c));
  out.inherit_diagnostics(p);
  return out;
}

bool is_normal_atom(const Atom &a) {
  if (is_arithmetic_builtin(a.pred))
    return true;
  if (is_unification(a)) {
    const Term &l = a.args[0], &r = a.args[1];
    if (!l.is_variable())
      return false;
    if (r.is_variable())
      return l.name != r.name;
    std::set<std::string> seen{l.name};
    for (const Term &x : r.args)
      if (!x.is_variable() || !seen.insert(x.name).second)
        return false;
    return true;
  }
  return std::all_of(a.args.begin(), a.args.end(),
                     [](const Term &t) { return t.is_variable(); });
}

bool is_normal_clause(const Clause &c) {
  std::set<std::string> seen;
  for (const Term &t : c.head.args)
    if (!t.is_variable() || !seen.insert(t.name).second)
      return false;
  return std::all_of(c.body.begin(), c.body.end(), is_normal_atom);
}

} // namespace logdup
