#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radix/expr.hpp"
#include "radix/real.hpp"

namespace radix {

struct TermOptions {
  /// Largest exact rational (in decimal digits of numerator plus denominator)
  /// materialized before a value is kept symbolic or approximated.
  std::size_t max_digits = 100000;
  /// Precision of natural logarithms carried by approximate magnitudes.
  unsigned log_precision_bits = 1024;
};

/// A possibly astronomically large term value.
///
/// Exact values are held as base^exponent with a rational base and an integer
/// exponent, so rules like 2^(2^n*n) stay exact far beyond any digit budget.
/// When exactness cannot be kept (sums of huge values, products of unrelated
/// huge powers) the value is held as its natural logarithm.
class Magnitude {
 public:
  Magnitude() = default;  // exactly 1

  static Magnitude exact(const Rational& value);
  static Magnitude power(const Rational& base, const Integer& exponent);
  /// Positive value exp(natural_log).
  static Magnitude from_log(Real natural_log);

  bool is_exact() const { return !log_.has_value(); }
  const Rational& base() const { return base_; }
  const Integer& exponent() const { return exponent_; }

  int sign() const;
  bool is_zero() const { return is_exact() && sgn(base_) == 0; }

  /// Exact rational value if it fits in max_digits.
  std::optional<Rational> collapse(std::size_t max_digits) const;
  /// Exact rational value; throws OverflowError past the budget and
  /// DomainError for approximate magnitudes.
  Rational value(std::size_t max_digits) const;

  /// Natural logarithm; requires a positive value.
  Real log(unsigned precision_bits) const;

  struct Rounded {
    Real value;
    /// Relative error bound in units of 2^-precision.
    double error_units;
  };
  /// Value rounded to precision_bits. Throws OverflowError when the value
  /// leaves the floating exponent range.
  Rounded to_real(unsigned precision_bits) const;

  friend bool operator==(const Magnitude& lhs, const Magnitude& rhs);

 private:
  Rational base_{1};
  Integer exponent_{1};
  std::optional<Real> log_;
};

Magnitude multiply(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options = {});
Magnitude divide(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options = {});
Magnitude add(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options = {});
Magnitude subtract(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options = {});
Magnitude negate(const Magnitude& x, const TermOptions& options = {});
Magnitude power(const Magnitude& base, const Integer& exponent, const TermOptions& options = {});

/// Rule producing term n (n >= 1) of a sequence: either an expression in n or
/// an explicit list of rationals followed by a continuation. Without an
/// explicit continuation the list repeats periodically.
class SequenceRule {
 public:
  SequenceRule();  // constant 1

  static SequenceRule parse(std::string_view text);
  static SequenceRule from_expr(ExprPtr expr);
  static SequenceRule constant(const Rational& value);
  static SequenceRule list(std::vector<Rational> values, ExprPtr then = nullptr);

  Rational term(std::uint64_t n, const TermOptions& options = {}) const;
  Magnitude magnitude(std::uint64_t n, const TermOptions& options = {}) const;

  bool is_list() const { return !list_.empty(); }
  const ExprPtr& expr() const { return expr_; }
  const std::vector<Rational>& list_values() const { return list_; }
  const ExprPtr& continuation() const { return then_; }

  /// True for the literal constant 1 (the default weight rule).
  bool is_literal_one() const;
  std::string to_string() const;

 private:
  ExprPtr expr_;
  std::vector<Rational> list_;
  ExprPtr then_;
};

/// Magnitude of an expression at index n.
Magnitude evaluate(const Expr& expr, std::uint64_t n, const TermOptions& options = {});

/// Exact rational from a decimal or fraction string ("3", "-0.25", "7/3").
Rational parse_rational(std::string_view text);

}  // namespace radix
