#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "radix/real.hpp"

namespace radix {

/// Node of a sequence expression over the free index n.
struct Expr {
  enum class Op { literal, index, negate, add, subtract, multiply, divide, power };

  Op op = Op::literal;
  Rational literal;  // Op::literal only
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make_literal(Rational value);
ExprPtr make_index();
ExprPtr make_unary(Expr::Op op, ExprPtr operand);
ExprPtr make_binary(Expr::Op op, ExprPtr lhs, ExprPtr rhs);

/// Parses the sequence mini-language.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?        right associative
///   primary := number | 'n' | '(' expr ')'
///
/// Numbers are decimal literals ("3", "0.25") and are kept as exact rationals.
/// Throws ParseError carrying the byte offset of the offending token.
ExprPtr parse_expr(std::string_view text);

/// Minimal-parenthesis rendering; parse_expr(to_string(e)) is structurally
/// equal to e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& lhs, const Expr& rhs);

}  // namespace radix
