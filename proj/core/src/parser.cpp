#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "logdup/error.hpp"
#include "logdup/syntax.hpp"
#include "operators.hpp"

namespace logdup {
namespace {

using detail::infix_op;
using detail::is_symbol_char;
using detail::OpType;
using detail::prefix_op;

enum class TokKind { Name, Var, Number, Punct, End, Eof };

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  int line = 1;
  int column = 1;
  bool layout_before = false;
  bool quoted = false;
};

class Lexer {
public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      bool layout = skip_layout();
      Token t = next_token();
      t.layout_before = layout;
      out.push_back(t);
      if (t.kind == TokKind::Eof)
        break;
    }
    return out;
  }

private:
  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  bool at_end() const { return pos_ >= src_.size(); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(file_, line_, col_, msg);
  }

  bool skip_layout() {
    bool skipped = false;
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        skipped = true;
      } else if (c == '%') {
        while (!at_end() && peek() != '\n')
          advance();
        skipped = true;
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/'))
          advance();
        if (at_end())
          fail("unterminated block comment");
        advance();
        advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  Token make(TokKind kind, std::string text, int line, int col) const {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = col;
    return t;
  }

  Token next_token() {
    int line = line_, col = col_;
    if (at_end())
      return make(TokKind::Eof, "", line, col);
    char c = peek();
    auto uc = static_cast<unsigned char>(c);

    if (std::isdigit(uc)) {
      std::string text;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        text += peek();
        advance();
      }
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        text += '.';
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          text += peek();
          advance();
        }
      }
      return make(TokKind::Number, text, line, col);
    }
    if (std::isupper(uc) || c == '_') {
      std::string text;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        text += peek();
        advance();
      }
      return make(TokKind::Var, text, line, col);
    }
    if (std::islower(uc)) {
      std::string text;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        text += peek();
        advance();
      }
      return make(TokKind::Name, text, line, col);
    }
    if (c == '\'' || c == '"') {
      char quote = c;
      advance();
      std::string text;
      for (;;) {
        if (at_end())
          fail("unterminated quoted atom");
        char d = peek();
        if (d == quote) {
          if (peek(1) == quote) {
            text += quote;
            advance();
            advance();
            continue;
          }
          advance();
          break;
        }
        if (d == '\\') {
          advance();
          if (at_end())
            fail("unterminated quoted atom");
          char e = peek();
          switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '\\': text += '\\'; break;
          case '\'': text += '\''; break;
          case '"': text += '"'; break;
          default: text += e; break;
          }
          advance();
          continue;
        }
        text += d;
        advance();
      }
      Token t = make(TokKind::Name, text, line, col);
      t.quoted = true;
      return t;
    }
    switch (c) {
    case '(': case ')': case '[': case ']': case '{': case '}': case ',': case '|':
      advance();
      return make(TokKind::Punct, std::string(1, c), line, col);
    case '!': case ';':
      advance();
      return make(TokKind::Name, std::string(1, c), line, col);
    default:
      break;
    }
    if (is_symbol_char(c)) {
      if (c == '.') {
        char n = peek(1);
        if (n == '\0' || n == '%' || std::isspace(static_cast<unsigned char>(n))) {
          advance();
          return make(TokKind::End, ".", line, col);
        }
      }
      std::string text;
      while (is_symbol_char(peek())) {
        text += peek();
        advance();
      }
      return make(TokKind::Name, text, line, col);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Parsed {
  Term term;
  int priority = 0;
};

class Parser {
public:
  Parser(std::vector<Token> tokens, std::string file)
      : toks_(std::move(tokens)), file_(std::move(file)) {}

  const Token &peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  const Token &take() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }
  bool at_eof() const { return peek().kind == TokKind::Eof; }

  [[noreturn]] void fail(const Token &at, const std::string &msg) const {
    throw ParseError(file_, at.line, at.column, msg);
  }

  void expect_punct(const char *p) {
    const Token &t = peek();
    if (t.kind != TokKind::Punct || t.text != p)
      fail(t, std::string("expected '") + p + "'" + describe(t));
    take();
  }

  static std::string describe(const Token &t) {
    switch (t.kind) {
    case TokKind::Eof: return " but reached end of input";
    case TokKind::End: return " but found end of clause";
    default: return " but found '" + t.text + "'";
    }
  }

  void reset_clause_scope() { anon_counter_ = 0; }

  Parsed parse(int max_priority) {
    Parsed left = parse_primary(max_priority);
    for (;;) {
      const Token &t = peek();
      std::string name;
      if (t.kind == TokKind::Punct && t.text == ",")
        name = ",";
      else if (t.kind == TokKind::Name && !t.quoted && infix_op(t.text))
        name = t.text;
      else
        break;
      auto op = *infix_op(name);
      int left_max = op.type == OpType::yfx ? op.priority : op.priority - 1;
      int right_max = op.type == OpType::xfy ? op.priority : op.priority - 1;
      if (op.priority > max_priority || left.priority > left_max)
        break;
      take();
      Parsed right = parse(right_max);
      left.term = Term::compound(name, {std::move(left.term), std::move(right.term)});
      left.priority = op.priority;
    }
    return left;
  }

  Term parse_arg() { return parse(999).term; }

private:
  bool starts_term(const Token &t) const {
    switch (t.kind) {
    case TokKind::Var:
    case TokKind::Number:
      return true;
    case TokKind::Punct:
      return t.text == "(" || t.text == "[" || t.text == "{";
    case TokKind::Name:
      if (t.quoted)
        return true;
      return !infix_op(t.text) || prefix_op(t.text) ||
             (peek(1).kind == TokKind::Punct && peek(1).text == "(" && !peek(1).layout_before);
    default:
      return false;
    }
  }

  Parsed parse_primary(int max_priority) {
    const Token tok = take();
    switch (tok.kind) {
    case TokKind::Number:
      return {Term::constant(tok.text), 0};
    case TokKind::Var:
      if (tok.text == "_")
        return {Term::variable("_#" + std::to_string(++anon_counter_)), 0};
      return {Term::variable(tok.text), 0};
    case TokKind::Punct:
      if (tok.text == "(") {
        Parsed inner = parse(1200);
        expect_punct(")");
        return {std::move(inner.term), 0};
      }
      if (tok.text == "[")
        return {parse_list(), 0};
      if (tok.text == "{")
        fail(tok, "curly-brace terms are not supported");
      fail(tok, "unexpected '" + tok.text + "'");
    case TokKind::Name:
      return parse_name(tok, max_priority);
    case TokKind::End:
      fail(tok, "unexpected end of clause");
    case TokKind::Eof:
      fail(tok, "unexpected end of input");
    }
    fail(tok, "unexpected token");
  }

  Term parse_list() {
    if (peek().kind == TokKind::Punct && peek().text == "]") {
      take();
      return Term::constant(std::string(kNil));
    }
    std::vector<Term> items;
    items.push_back(parse_arg());
    while (peek().kind == TokKind::Punct && peek().text == ",") {
      take();
      items.push_back(parse_arg());
    }
    Term tail = Term::constant(std::string(kNil));
    if (peek().kind == TokKind::Punct && peek().text == "|") {
      take();
      tail = parse_arg();
    }
    expect_punct("]");
    return make_list(std::move(items), std::move(tail));
  }

  Parsed parse_name(const Token &tok, int max_priority) {
    const Token &next = peek();
    if (next.kind == TokKind::Punct && next.text == "(" && !next.layout_before) {
      take();
      std::vector<Term> args;
      args.push_back(parse_arg());
      while (peek().kind == TokKind::Punct && peek().text == ",") {
        take();
        args.push_back(parse_arg());
      }
      expect_punct(")");
      return {Term::compound(tok.text, std::move(args)), 0};
    }
    if (!tok.quoted && tok.text == "-" && next.kind == TokKind::Number && !next.layout_before) {
      take();
      return {Term::constant("-" + next.text), 0};
    }
    if (!tok.quoted) {
      if (auto op = prefix_op(tok.text); op && starts_term(next)) {
        int arg_max = op->type == OpType::fy ? op->priority : op->priority - 1;
        int priority = op->priority;
        if (priority > max_priority) {
          priority = 999;
          arg_max = 999;
        }
        Parsed arg = parse(arg_max);
        return {Term::compound(tok.text, {std::move(arg.term)}), priority};
      }
    }
    return {Term::constant(tok.text), 0};
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
  int anon_counter_ = 0;
};

std::vector<Term> flatten_conjunction(const Term &t) {
  std::vector<Term> out;
  const Term *cur = &t;
  while (cur->is_compound() && cur->name == "," && cur->arity() == 2) {
    auto part = flatten_conjunction(cur->args[0]);
    out.insert(out.end(), part.begin(), part.end());
    cur = &cur->args[1];
  }
  out.push_back(*cur);
  return out;
}

std::optional<std::string> non_definite_construct(const Term &goal) {
  if (goal.is_variable())
    return "meta-call " + goal.name;
  const auto &n = goal.name;
  auto a = goal.arity();
  if ((n == ";" && a == 2) || (n == "->" && a == 2) || (n == "\\+" && a == 1) ||
      (n == "!" && a == 0) || (n == "not" && a == 1))
    return n;
  return std::nullopt;
}

Atom term_to_atom(const Term &t) {
  Atom a;
  a.pred = PredSymbol{t.name, t.args.size()};
  a.args = t.args;
  return a;
}

Parser make_parser(std::string_view text, const std::string &file) {
  return Parser(Lexer(text, file).tokenize(), file);
}

struct ClauseResult {
  std::optional<Clause> clause;
  std::optional<std::string> non_definite;
  bool directive = false;
};

ClauseResult read_clause(Parser &p, const std::string &file) {
  p.reset_clause_scope();
  const Token start = p.peek();
  Parsed parsed = p.parse(1200);
  const Token &end = p.peek();
  if (end.kind != TokKind::End)
    p.fail(end, "expected '.' at end of clause" + Parser::describe(end));
  p.take();

  ClauseResult result;
  const Term &t = parsed.term;
  if (t.is_compound() && t.name == ":-" && t.arity() == 1) {
    result.directive = true;
    return result;
  }
  const Term *head = &t;
  const Term *body = nullptr;
  if (t.is_compound() && t.name == ":-" && t.arity() == 2) {
    head = &t.args[0];
    body = &t.args[1];
  }
  if (head->is_variable())
    p.fail(start, "clause head cannot be a variable");
  if (is_number_name(head->name) && head->args.empty())
    p.fail(start, "clause head cannot be a number");
  if ((head->name == "," || head->name == ";" || head->name == "->") && head->arity() == 2)
    p.fail(start, "clause head cannot be a control construct");

  Clause c;
  c.head = term_to_atom(*head);
  c.origin = SourceLocation{file, start.line, start.column};
  if (body) {
    for (const Term &g : flatten_conjunction(*body)) {
      if (auto bad = non_definite_construct(g)) {
        result.non_definite = *bad;
        continue;
      }
      if (g.is_constant() && is_number_name(g.name))
        p.fail(start, "body goal cannot be a number");
      c.body.push_back(term_to_atom(g));
    }
  }
  result.clause = std::move(c);
  return result;
}

} // namespace

Program parse_program(std::string_view text, std::string_view file) {
  std::string fname(file);
  Parser p = make_parser(text, fname);
  Program prog;
  while (!p.at_eof()) {
    const Token start = p.peek();
    SourceLocation loc{fname, start.line, start.column};
    ClauseResult r = read_clause(p, fname);
    if (r.directive) {
      prog.warn(Diagnostic{loc, "directive skipped"});
      continue;
    }
    const PredSymbol pred = r.clause->head.pred;
    if (r.non_definite) {
      if (!prog.is_excluded(pred))
        prog.exclude(pred, Diagnostic{loc, "predicate " + pred.str() +
                                               " excluded from analysis: uses '" +
                                               *r.non_definite + "'"});
      continue;
    }
    prog.add_clause(std::move(*r.clause));
  }
  return prog;
}

Term parse_term(std::string_view text) {
  Parser p = make_parser(text, "<term>");
  Term t = p.parse(1200).term;
  if (p.peek().kind == TokKind::End)
    p.take();
  if (!p.at_eof())
    p.fail(p.peek(), "trailing input after term");
  return t;
}

Goal parse_goal(std::string_view text) {
  Goal g;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    return g;
  Term t = parse_term(text);
  for (const Term &part : flatten_conjunction(t)) {
    if (part.is_variable())
      throw ParseError("<goal>", 1, 1, "goal cannot be a variable");
    g.push_back(term_to_atom(part));
  }
  return g;
}

Clause parse_clause(std::string_view text) {
  std::string src(text);
  auto last = src.find_last_not_of(" \t\r\n");
  if (last == std::string::npos)
    throw ParseError("<clause>", 1, 1, "empty clause");
  if (src[last] != '.')
    src += ".";
  else
    src += "\n";
  Parser p = make_parser(src, "<clause>");
  ClauseResult r = read_clause(p, "<clause>");
  if (!r.clause || r.non_definite)
    throw ParseError("<clause>", 1, 1, "not a definite clause");
  if (!p.at_eof())
    p.fail(p.peek(), "more than one clause");
  return *r.clause;
}

} // namespace logdup
