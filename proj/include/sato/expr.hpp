#ifndef SATO_EXPR_HPP
#define SATO_EXPR_HPP

// Text syntax for series and operators.
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' ['-'] int)?
//   atom   := rational | 'x' | 'D' | ident | '(' expr ')' | 'O' '(' atom '^' ['-'] int ')'
//
// Rationals are written p or p/q. Identifiers may carry trailing primes for
// jets (u, u', u''). O(D^k) or O(y^k) closes a sum and marks the truncation.
//
// As an operator, D is the derivation and x the coordinate. As a series in y,
// both D and y name the variable y (the symbol of D^-1 is y, so series text
// uses the generator directly: D^-2 means y^-2).

#include "sato/pdo.hpp"
#include "sato/series.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sato {

struct Expr {
  enum class Kind { Number, X, D, Ident, Sum, Product, Power, Negate, BigO };
  Kind kind = Kind::Number;
  Rational number;                  // Number
  std::string name;                 // Ident (primes included)
  int exponent = 0;                 // Power, BigO
  std::vector<Expr> args;           // Sum: summands; Product: factors; Power/Negate/BigO: one
  std::vector<bool> minus;          // Sum: sign of each summand after the first

  bool operator==(const Expr& other) const;
};

Expr parse_expr(const std::string& text);
/// Canonical text; parse_expr(print_expr(e)) == e.
std::string print_expr(const Expr& e);

/// Splits "a, b, c" at top-level commas.
std::vector<std::string> split_list(const std::string& text);

/// Evaluates as an operator over `ring` with the given depth.
PseudoOp to_operator(const Expr& e, const Ring& ring, int depth);
/// Evaluates as a Laurent series in `var` over `ring`. Literals are known below
/// exponent `window` (a monomial y^e below max(window, e + 1)).
Laurent to_series(const Expr& e, const Ring& ring, int window, const std::string& var = "y");
/// Evaluates as a plain ring element (no D).
RingElement to_element(const Expr& e, const Ring& ring);

PseudoOp parse_operator(const std::string& text, const Ring& ring, int depth);
Laurent parse_series(const std::string& text, const Ring& ring, int window, const std::string& var = "y");
RingElement parse_element(const std::string& text, const Ring& ring);

}  // namespace sato

#endif  // SATO_EXPR_HPP
