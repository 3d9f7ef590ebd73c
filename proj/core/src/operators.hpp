#pragma once

#include <optional>
#include <string_view>

namespace logdup::detail {

enum class OpType { xfx, xfy, yfx, fy, fx };

struct OpDef {
  int priority;
  OpType type;
};

inline std::optional<OpDef> infix_op(std::string_view name) {
  if (name == ":-")
    return OpDef{1200, OpType::xfx};
  if (name == ";")
    return OpDef{1100, OpType::xfy};
  if (name == "->")
    return OpDef{1050, OpType::xfy};
  if (name == ",")
    return OpDef{1000, OpType::xfy};
  if (name == "=" || name == "\\=" || name == "==" || name == "\\==" ||
      name == "is" || name == "<" || name == ">" || name == "=<" ||
      name == ">=" || name == "=:=" || name == "=\\=")
    return OpDef{700, OpType::xfx};
  if (name == "+" || name == "-")
    return OpDef{500, OpType::yfx};
  if (name == "*" || name == "/" || name == "//" || name == "mod")
    return OpDef{400, OpType::yfx};
  return std::nullopt;
}

inline std::optional<OpDef> prefix_op(std::string_view name) {
  if (name == ":-")
    return OpDef{1200, OpType::fx};
  if (name == "\\+")
    return OpDef{900, OpType::fy};
  if (name == "-")
    return OpDef{200, OpType::fy};
  return std::nullopt;
}

inline bool is_symbol_char(char c) {
  switch (c) {
  case '+': case '-': case '*': case '/': case '\\': case '^': case '<':
  case '>': case '=': case '~': case ':': case '.': case '?': case '@':
  case '#': case '&': case '$':
    return true;
  default:
    return false;
  }
}

} // namespace logdup::detail
