#include "radix/real.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace radix {
namespace {

// MPFR exponent bounds are thread-local; approximants of doubly exponential
// sequences need the widest range MPFR supports.
void widen_exponent_range() {
  thread_local bool widened = false;
  if (!widened) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    widened = true;
  }
}

mpfr_prec_t clamp_precision(unsigned bits) {
  return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(bits));
}

unsigned wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(unsigned precision_bits) {
  widen_exponent_range();
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, unsigned precision_bits) : Real(precision_bits) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, unsigned precision_bits) : Real(precision_bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Integer& value, unsigned precision_bits) : Real(precision_bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Real& other) : Real(other.precision()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::infinity(int sign, unsigned precision_bits) {
  Real r(precision_bits);
  mpfr_set_inf(r.value_, sign);
  return r;
}

Real Real::from_double(double value, unsigned precision_bits) {
  Real r(precision_bits);
  mpfr_set_d(r.value_, value, MPFR_RNDN);
  return r;
}

Real Real::from_string(const std::string& text, unsigned precision_bits) {
  Real r(precision_bits);
  char* end = nullptr;
  if (!text.empty()) mpfr_strtofr(r.value_, text.c_str(), &end, 10, MPFR_RNDN);
  if (end == nullptr || end == text.c_str() || *end != '\0') {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
  return r;
}

Real Real::pow2(long exponent, unsigned precision_bits) {
  Real r(precision_bits);
  mpfr_set_ui_2exp(r.value_, 1, exponent, MPFR_RNDN);
  return r;
}

Real Real::with_precision(unsigned precision_bits) const {
  Real r(precision_bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

Rational Real::to_rational() const {
  if (!is_finite()) throw std::domain_error("to_rational of a non-finite value");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

Real Real::ulp() const {
  Real r(precision());
  if (is_zero() || !is_finite()) {
    mpfr_set_ui_2exp(r.value_, 1, mpfr_get_emin(), MPFR_RNDN);
    return r;
  }
  mpfr_set_ui_2exp(r.value_, 1, mpfr_get_exp(value_) - mpfr_get_prec(value_), MPFR_RNDN);
  return r;
}

std::string Real::to_string() const {
  // Enough digits to round-trip: 1 + ceil(p log10 2).
  const int digits = 1 + static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120));
  return to_string(digits);
}

std::string Real::to_string(int significant_digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t exponent = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(significant_digits), value_, MPFR_RNDN), mpfr_free_str);
  std::string digits(raw.get());
  std::string sign_part;
  if (!digits.empty() && digits.front() == '-') {
    sign_part = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const long point = static_cast<long>(exponent);
  const long n = static_cast<long>(digits.size());
  std::string out;
  if (point > 0 && point <= 40) {
    if (n <= point) {
      out = digits + std::string(static_cast<size_t>(point - n), '0');
    } else {
      out = digits.substr(0, static_cast<size_t>(point)) + "." + digits.substr(static_cast<size_t>(point));
    }
  } else if (point <= 0 && point > -8) {
    out = "0." + std::string(static_cast<size_t>(-point), '0') + digits;
  } else {
    out = digits.substr(0, 1);
    if (n > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(point - 1);
  }
  return sign_part + out;
}

Real& Real::operator+=(const Real& rhs) {
  *this = *this + rhs;
  return *this;
}
Real& Real::operator-=(const Real& rhs) {
  *this = *this - rhs;
  return *this;
}
Real& Real::operator*=(const Real& rhs) {
  *this = *this * rhs;
  return *this;
}
Real& Real::operator/=(const Real& rhs) {
  *this = *this / rhs;
  return *this;
}

Real operator-(const Real& x) {
  Real r(x.precision());
  mpfr_neg(r.value_, x.value_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& lhs, const Real& rhs) {
  Real r(wider(lhs, rhs));
  mpfr_add(r.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& lhs, const Real& rhs) {
  Real r(wider(lhs, rhs));
  mpfr_sub(r.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& lhs, const Real& rhs) {
  Real r(wider(lhs, rhs));
  mpfr_mul(r.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& lhs, const Real& rhs) {
  Real r(wider(lhs, rhs));
  mpfr_div(r.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return r;
}

bool identical(const Real& lhs, const Real& rhs) {
  if (lhs.precision() != rhs.precision()) return false;
  if (lhs.is_nan() || rhs.is_nan()) return lhs.is_nan() && rhs.is_nan();
  return lhs == rhs && mpfr_signbit(lhs.get()) == mpfr_signbit(rhs.get());
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real root(const Real& x, std::uint64_t r) {
  if (r == 0) throw std::domain_error("zeroth root");
  Real out(x.precision());
  if (r == 1) {
    mpfr_set(out.get(), x.get(), MPFR_RNDN);
  } else if (r == 2) {
    mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  } else {
    mpfr_rootn_ui(out.get(), x.get(), static_cast<unsigned long>(r), MPFR_RNDN);
  }
  return out;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(wider(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Integer& exponent) {
  Real r(base.precision());
  mpfr_pow_z(r.get(), base.get(), exponent.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, std::uint64_t exponent) {
  Real r(base.precision());
  mpfr_pow_ui(r.get(), base.get(), static_cast<unsigned long>(exponent), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log2(const Real& x) {
  Real r(x.precision());
  mpfr_log2(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& lhs, const Real& rhs) { return lhs < rhs ? rhs : lhs; }
Real min(const Real& lhs, const Real& rhs) { return rhs < lhs ? rhs : lhs; }

double ulp_distance(const Real& lhs, const Real& rhs) {
  const Real& big = abs(lhs) < abs(rhs) ? rhs : lhs;
  const Real diff = abs(lhs.with_precision(wider(lhs, rhs) + 64) - rhs.with_precision(wider(lhs, rhs) + 64));
  return (diff / big.ulp()).to_double();
}

}  // namespace radix
