#pragma once

#include "logdup/syntax.hpp"

namespace logdup {

/// Rewrites a clause so that the head is `p(A,B,...)` with distinct fresh
/// variables and every body atom has one of the shapes `p(X1,...,Xn)`,
/// `X = Y` or `X = f(X1,...,Xn)` (variables distinct within a unification).
///
/// Arithmetic built-ins (is/2 and the numeric comparisons) keep their
/// compound arguments nested. Head parameters are named A, B, C, ...;
/// flattening temporaries V1, V2, ... in order of first occurrence.
Clause normalize_clause(const Clause &c);

/// Applies normalize_clause to every clause; exclusions and warnings carry over.
Program normalize_program(const Program &p);

/// Built-ins whose arguments are arithmetic expressions.
bool is_arithmetic_builtin(const PredSymbol &p);

/// True for the three normal atom shapes, or an arithmetic built-in.
bool is_normal_atom(const Atom &a);
bool is_normal_clause(const Clause &c);

} // namespace logdup
