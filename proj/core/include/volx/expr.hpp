#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "volx/errors.hpp"

namespace volx::expr {

/// Closed expression grammar for user-supplied profile functions: numeric
/// literals, one free variable (u or r), + - * / ^ with standard precedence
/// (^ right-associative, binding tighter than unary minus), parentheses, and
/// the functions sin, cos, exp.
struct Node;
using ExprPtr = std::shared_ptr<const Node>;

enum class NodeKind { number, variable, unary_minus, binary, call };

struct Node {
  NodeKind kind;
  double value = 0.0;      // number
  char op = 0;             // binary: + - * / ^
  std::string name;        // variable or function name
  ExprPtr lhs, rhs;        // unary uses lhs only; call uses lhs as argument
};

/// Parses the text; throws ParseError with a byte offset on syntax errors or
/// unknown identifiers.
ExprPtr parse(std::string_view text);

/// Prints with explicit parentheses where precedence requires them;
/// parse(print(e)) reproduces the tree.
std::string print(const ExprPtr& e);

/// Structural equality.
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Symbolic derivative in the free variable, with light constant folding.
ExprPtr derivative(const ExprPtr& e);

/// Evaluates at x; throws NumericError on division by zero or 0^negative.
double eval(const ExprPtr& e, double x);

/// The variable name appearing in the expression ("u" or "r"),
/// empty if the expression is constant.
std::string variable_name(const ExprPtr& e);

}  // namespace volx::expr
