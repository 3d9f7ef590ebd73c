#include <cctype>
#include <string>

#include "logdup/syntax.hpp"
#include "operators.hpp"

namespace logdup {
namespace {

using detail::infix_op;
using detail::is_symbol_char;
using detail::OpType;
using detail::prefix_op;

bool is_operator_name(const std::string &name) {
  return infix_op(name).has_value() || prefix_op(name).has_value();
}

bool needs_quotes(const std::string &name) {
  if (name.empty())
    return true;
  if (name == "[]" || name == "!" || name == ";" || name == "{}")
    return false;
  if (is_number_name(name))
    return false;
  if (std::islower(static_cast<unsigned char>(name[0]))) {
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        return true;
    return false;
  }
  bool all_symbol = true;
  for (char c : name)
    all_symbol = all_symbol && is_symbol_char(c);
  return !all_symbol || name == ".";
}

std::string quote_name(const std::string &name) {
  if (!needs_quotes(name))
    return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'')
      out += "\\'";
    else if (c == '\\')
      out += "\\\\";
    else if (c == '\n')
      out += "\\n";
    else
      out += c;
  }
  return out + "'";
}

bool is_alpha_op(const std::string &name) {
  return !name.empty() && std::isalpha(static_cast<unsigned char>(name[0]));
}

std::string render(const Term &t, int max_priority, bool operand);

std::string render_list(const Term &t) {
  std::string out = "[";
  const Term *cur = &t;
  bool first = true;
  while (cur->is_compound() && cur->name == kCons && cur->arity() == 2) {
    if (!first)
      out += ",";
    out += render(cur->args[0], 999, false);
    first = false;
    cur = &cur->args[1];
  }
  if (!(cur->is_constant() && cur->name == kNil))
    out += "|" + render(*cur, 999, false);
  return out + "]";
}

std::string join_infix(const std::string &left, const std::string &op,
                       const std::string &right) {
  if (op == ",")
    return left + ", " + right;
  auto def = infix_op(op);
  if (is_alpha_op(op) || (def && def->priority >= 700))
    return left + " " + op + " " + right;
  std::string out = left;
  if (!left.empty() && is_symbol_char(left.back()))
    out += " ";
  out += op;
  if (!right.empty() && is_symbol_char(right.front()))
    out += " ";
  return out + right;
}

std::string render(const Term &t, int max_priority, bool operand) {
  if (t.is_variable())
    return t.name.rfind("_#", 0) == 0 ? std::string("_") : t.name;

  if (t.arity() == 0) {
    if (is_number_name(t.name))
      return operand && t.name[0] == '-' ? "(" + t.name + ")" : t.name;
    std::string q = quote_name(t.name);
    if (operand && is_operator_name(t.name))
      return "(" + q + ")";
    return q;
  }

  if (t.name == kCons && t.arity() == 2)
    return render_list(t);

  if (t.arity() == 2) {
    if (auto op = infix_op(t.name)) {
      int left_max = op->type == OpType::yfx ? op->priority : op->priority - 1;
      int right_max = op->type == OpType::xfy ? op->priority : op->priority - 1;
      std::string s = join_infix(render(t.args[0], left_max, true), t.name,
                                 render(t.args[1], right_max, true));
      return op->priority > max_priority ? "(" + s + ")" : s;
    }
  }

  if (t.arity() == 1) {
    if (auto op = prefix_op(t.name)) {
      int arg_max = op->type == OpType::fy ? op->priority : op->priority - 1;
      std::string arg = render(t.args[0], arg_max, true);
      bool space = is_alpha_op(t.name) ||
                   (!arg.empty() && (is_symbol_char(arg.front()) ||
                                     std::isdigit(static_cast<unsigned char>(arg.front())) ||
                                     arg.front() == '('));
      std::string s = t.name + (space ? " " : "") + arg;
      return op->priority > max_priority ? "(" + s + ")" : s;
    }
  }

  std::string out = quote_name(t.name) + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i)
      out += ",";
    out += render(t.args[i], 999, false);
  }
  return out + ")";
}

Term atom_term(const Atom &a) {
  Term t;
  t.kind = Term::Kind::Compound;
  t.name = a.pred.name;
  t.args = a.args;
  return t;
}

} // namespace

std::string render_term(const Term &t) { return render(t, 1200, false); }

std::string render_atom(const Atom &a) { return render(atom_term(a), 999, false); }

std::string render_goal(const Goal &g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i)
      out += ", ";
    out += render_atom(g[i]);
  }
  return out;
}

std::string render_clause(const Clause &c) {
  std::string out = render(atom_term(c.head), 1199, false);
  if (!c.body.empty())
    out += " :- " + render_goal(c.body);
  return out + ".";
}

} // namespace logdup
