#pragma once

// Expression grammar shared by the CLI and the bindings.
//
//   top     := matrix | expr
//   matrix  := '[' row (',' row)* ']'      row := '[' expr (',' expr)* ']'
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?     exponent := INT | '(' INT ')'
//   primary := INT | IDENT | '(' expr ')'
//
// Precedence is ^ > unary - > * / > + -, binary operators associate left.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "arithlab/matrix.hpp"

namespace arithlab {

enum class ExprKind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Matrix, Row };

struct ExprAst {
  ExprKind kind = ExprKind::Number;
  std::string text;  // digits for Number and Pow exponent, name for Variable
  std::vector<ExprAst> children;
  std::size_t offset = 0;

  friend bool operator==(const ExprAst& a, const ExprAst& b) {
    return a.kind == b.kind && a.text == b.text && a.children == b.children;
  }
};

/// Throws SyntaxError(offset, expected) on malformed input.
ExprAst parse_expression(std::string_view text);

/// Canonical text with the minimal parentheses; parse(render(a)) == a.
std::string render_expression(const ExprAst& ast);

/// Evaluates in Q(var); other identifiers are rejected.
QRatFunc eval_ratfunc(const ExprAst& ast, const std::string& var = "z");
Rational eval_constant(const ExprAst& ast);
/// Accepts a matrix literal or a single expression (1×1).
RfMat<RationalField> eval_matrix(const ExprAst& ast, const std::string& var = "z");

/// Polynomial in Y with coefficients in Q[X], index = power of Y.
using BivariatePoly = std::vector<QPoly>;
BivariatePoly eval_bivariate(const ExprAst& ast, const std::string& xvar = "X", const std::string& yvar = "Y");

// Convenience wrappers: parse + evaluate.
QRatFunc parse_ratfunc(std::string_view text, const std::string& var = "z");
RfMat<RationalField> parse_matrix(std::string_view text, const std::string& var = "z");
BivariatePoly parse_bivariate(std::string_view text);

}  // namespace arithlab
