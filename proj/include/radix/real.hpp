#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace radix {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned kMinPrecisionBits = 32;
inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Arbitrary-precision binary floating point value with an explicit precision
/// in bits. Every operation rounds to nearest; binary operations produce a
/// result at the larger of the operand precisions.
class Real {
 public:
  explicit Real(unsigned precision_bits = kDefaultPrecisionBits);
  Real(long value, unsigned precision_bits);
  Real(const Rational& value, unsigned precision_bits);
  Real(const Integer& value, unsigned precision_bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real infinity(int sign, unsigned precision_bits);
  static Real from_double(double value, unsigned precision_bits);
  /// Parses a decimal string; throws std::invalid_argument on malformed input.
  static Real from_string(const std::string& text, unsigned precision_bits);
  /// 2^exponent, exact.
  static Real pow2(long exponent, unsigned precision_bits);

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  /// Copy rounded to another precision.
  Real with_precision(unsigned precision_bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_inf() const { return mpfr_inf_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact rational value of a finite Real.
  Rational to_rational() const;
  /// Unit in the last place of this value at its precision.
  Real ulp() const;

  /// Shortest decimal that round-trips at this precision ("1.5", "-2.25e-30").
  std::string to_string() const;
  /// Decimal with a fixed number of significant digits.
  std::string to_string(int significant_digits) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator-(const Real& x);
  friend Real operator+(const Real& lhs, const Real& rhs);
  friend Real operator-(const Real& lhs, const Real& rhs);
  friend Real operator*(const Real& lhs, const Real& rhs);
  friend Real operator/(const Real& lhs, const Real& rhs);

  friend bool operator==(const Real& lhs, const Real& rhs) { return mpfr_equal_p(lhs.value_, rhs.value_) != 0; }
  friend bool operator<(const Real& lhs, const Real& rhs) { return mpfr_less_p(lhs.value_, rhs.value_) != 0; }
  friend bool operator<=(const Real& lhs, const Real& rhs) { return mpfr_lessequal_p(lhs.value_, rhs.value_) != 0; }
  friend bool operator>(const Real& lhs, const Real& rhs) { return mpfr_greater_p(lhs.value_, rhs.value_) != 0; }
  friend bool operator>=(const Real& lhs, const Real& rhs) { return mpfr_greaterequal_p(lhs.value_, rhs.value_) != 0; }

 private:
  mpfr_t value_;
};

/// Bitwise identity: same precision, same value (NaNs compare equal).
bool identical(const Real& lhs, const Real& rhs);

Real abs(const Real& x);
Real sqrt(const Real& x);
/// Correctly rounded r-th root, r >= 1.
Real root(const Real& x, std::uint64_t r);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, const Integer& exponent);
Real pow(const Real& base, std::uint64_t exponent);
Real exp(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real max(const Real& lhs, const Real& rhs);
Real min(const Real& lhs, const Real& rhs);

/// |lhs - rhs| measured in units of the last place of the larger magnitude.
double ulp_distance(const Real& lhs, const Real& rhs);

}  // namespace radix
