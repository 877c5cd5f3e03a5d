#include "radix/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "radix/error.hpp"

namespace radix {
namespace {

std::size_t digit_budget_bits(std::size_t max_digits) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(max_digits) * 3.3219280948873623));
}

std::size_t bit_size(const Integer& z) { return sgn(z) == 0 ? 1 : mpz_sizeinbase(z.get_mpz_t(), 2); }

std::size_t bit_size(const Rational& q) { return bit_size(q.get_num()) + bit_size(q.get_den()); }

Rational exact_pow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

// ln(exp(x) + exp(y)) for the larger argument first.
Real log_sum(const Real& x, const Real& y) {
  const Real& hi = x < y ? y : x;
  const Real& lo = x < y ? x : y;
  Real t = exp(lo - hi);
  Real r(hi.precision());
  mpfr_log1p(r.get(), t.get(), MPFR_RNDN);
  return hi + r;
}

}  // namespace

Magnitude Magnitude::exact(const Rational& value) {
  Magnitude m;
  m.base_ = value;
  m.base_.canonicalize();
  m.exponent_ = 1;
  return m;
}

Magnitude Magnitude::power(const Rational& base, const Integer& exponent) {
  Magnitude m;
  if (sgn(exponent) == 0) return m;
  if (sgn(base) == 0) {
    if (sgn(exponent) < 0) throw DomainError("division by zero (0 raised to a negative power)");
    return exact(0);
  }
  m.base_ = base;
  m.base_.canonicalize();
  m.exponent_ = exponent;
  if (m.base_ == 1) m.exponent_ = 1;
  if (m.base_ == -1) {
    m.base_ = mpz_odd_p(exponent.get_mpz_t()) ? -1 : 1;
    m.exponent_ = 1;
  }
  if (sgn(m.exponent_) < 0) {
    m.base_ = 1 / m.base_;
    m.exponent_ = -m.exponent_;
  }
  return m;
}

Magnitude Magnitude::from_log(Real natural_log) {
  if (!natural_log.is_finite()) throw DomainError("non-finite logarithm");
  Magnitude m;
  m.log_ = std::move(natural_log);
  return m;
}

int Magnitude::sign() const {
  if (!is_exact()) return 1;
  const int s = sgn(base_);
  if (s >= 0) return s;
  return mpz_odd_p(exponent_.get_mpz_t()) ? -1 : 1;
}

std::optional<Rational> Magnitude::collapse(std::size_t max_digits) const {
  if (!is_exact()) return std::nullopt;
  if (exponent_ == 1) {
    if (bit_size(base_) > digit_budget_bits(max_digits)) return std::nullopt;
    return base_;
  }
  const std::size_t budget = digit_budget_bits(max_digits);
  if (!exponent_.fits_ulong_p()) return std::nullopt;
  const unsigned long e = exponent_.get_ui();
  const double estimate = static_cast<double>(e) * static_cast<double>(bit_size(base_));
  if (estimate > static_cast<double>(budget)) return std::nullopt;
  return exact_pow(base_, e);
}

Rational Magnitude::value(std::size_t max_digits) const {
  if (!is_exact()) throw DomainError("term is only known approximately");
  auto v = collapse(max_digits);
  if (!v) throw OverflowError("exact term exceeds the " + std::to_string(max_digits) + "-digit budget");
  return *v;
}

Real Magnitude::log(unsigned precision_bits) const {
  if (sign() <= 0) throw DomainError("logarithm of a non-positive term");
  if (log_) return log_->with_precision(precision_bits);
  const unsigned work = precision_bits + static_cast<unsigned>(bit_size(exponent_)) + 16;
  Real ln_base = radix::log(Real(abs(base_), work));
  return (ln_base * Real(exponent_, work)).with_precision(precision_bits);
}

Magnitude::Rounded Magnitude::to_real(unsigned precision_bits) const {
  Rounded out{Real(precision_bits), 1.0};
  if (log_) {
    const unsigned magnitude_bits = static_cast<unsigned>(std::max(0L, mpfr_get_exp(log_->get())));
    const unsigned work = precision_bits + magnitude_bits + 16;
    out.value = exp(log_->with_precision(work)).with_precision(precision_bits);
    // Absolute error of the stored log becomes relative error of the value.
    out.error_units = 2.0 + std::ldexp(std::fabs(log_->to_double()),
                                       static_cast<int>(precision_bits) - static_cast<int>(log_->precision()));
  } else if (exponent_ == 1) {
    out.value = Real(base_, precision_bits);
  } else {
    const unsigned work = precision_bits + static_cast<unsigned>(bit_size(exponent_)) + 16;
    out.value = pow(Real(base_, work), exponent_).with_precision(precision_bits);
    out.error_units = 2.0;
  }
  if (!out.value.is_finite()) throw OverflowError("term exceeds the floating exponent range");
  return out;
}

bool operator==(const Magnitude& lhs, const Magnitude& rhs) {
  if (lhs.is_exact() != rhs.is_exact()) return false;
  if (!lhs.is_exact()) return *lhs.log_ == *rhs.log_;
  return lhs.base_ == rhs.base_ && lhs.exponent_ == rhs.exponent_;
}

Magnitude multiply(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options) {
  if (lhs.is_zero() || rhs.is_zero()) return Magnitude::exact(0);
  if (lhs.is_exact() && rhs.is_exact()) {
    if (lhs.base() == rhs.base()) return Magnitude::power(lhs.base(), lhs.exponent() + rhs.exponent());
    if (lhs.exponent() == rhs.exponent()) return Magnitude::power(lhs.base() * rhs.base(), lhs.exponent());
    auto x = lhs.collapse(options.max_digits);
    auto y = rhs.collapse(options.max_digits);
    if (x && y) return Magnitude::exact(*x * *y);
  }
  if (lhs.sign() < 0 || rhs.sign() < 0) throw OverflowError("product of huge signed terms cannot be represented");
  return Magnitude::from_log(lhs.log(options.log_precision_bits) + rhs.log(options.log_precision_bits));
}

Magnitude divide(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  if (lhs.is_zero()) return lhs;
  if (lhs.is_exact() && rhs.is_exact()) {
    if (lhs.base() == rhs.base()) return Magnitude::power(lhs.base(), lhs.exponent() - rhs.exponent());
    if (lhs.exponent() == rhs.exponent()) return Magnitude::power(lhs.base() / rhs.base(), lhs.exponent());
    auto x = lhs.collapse(options.max_digits);
    auto y = rhs.collapse(options.max_digits);
    if (x && y) return Magnitude::exact(*x / *y);
  }
  if (lhs.sign() < 0 || rhs.sign() < 0) throw OverflowError("quotient of huge signed terms cannot be represented");
  return Magnitude::from_log(lhs.log(options.log_precision_bits) - rhs.log(options.log_precision_bits));
}

Magnitude add(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options) {
  if (lhs.is_zero()) return rhs;
  if (rhs.is_zero()) return lhs;
  auto x = lhs.collapse(options.max_digits);
  auto y = rhs.collapse(options.max_digits);
  if (x && y) return Magnitude::exact(*x + *y);
  if (lhs.sign() < 0 || rhs.sign() < 0) throw OverflowError("sum of huge signed terms cannot be represented");
  return Magnitude::from_log(log_sum(lhs.log(options.log_precision_bits), rhs.log(options.log_precision_bits)));
}

Magnitude subtract(const Magnitude& lhs, const Magnitude& rhs, const TermOptions& options) {
  if (rhs.is_zero()) return lhs;
  auto x = lhs.collapse(options.max_digits);
  auto y = rhs.collapse(options.max_digits);
  if (x && y) return Magnitude::exact(*x - *y);
  if (lhs.sign() <= 0 || rhs.sign() < 0) throw OverflowError("difference of huge signed terms cannot be represented");
  const Real lx = lhs.log(options.log_precision_bits);
  const Real ly = rhs.log(options.log_precision_bits);
  if (!(ly < lx)) throw DomainError("difference of huge terms is not certifiably positive");
  Real t = -exp(ly - lx);
  Real r(lx.precision());
  mpfr_log1p(r.get(), t.get(), MPFR_RNDN);
  return Magnitude::from_log(lx + r);
}

Magnitude negate(const Magnitude& x, const TermOptions& options) {
  if (x.is_exact() && mpz_odd_p(x.exponent().get_mpz_t())) return Magnitude::power(-x.base(), x.exponent());
  if (auto v = x.collapse(options.max_digits)) return Magnitude::exact(-*v);
  throw OverflowError("negation of a huge even power cannot be represented");
}

Magnitude power(const Magnitude& base, const Integer& exponent, const TermOptions& options) {
  if (base.is_exact()) return Magnitude::power(base.base(), base.exponent() * exponent);
  return Magnitude::from_log(base.log(options.log_precision_bits) * Real(exponent, options.log_precision_bits));
}

Magnitude evaluate(const Expr& expr, std::uint64_t n, const TermOptions& options) {
  switch (expr.op) {
    case Expr::Op::literal:
      return Magnitude::exact(expr.literal);
    case Expr::Op::index:
      return Magnitude::exact(Rational(Integer(std::to_string(n), 10)));
    case Expr::Op::negate:
      return negate(evaluate(*expr.lhs, n, options), options);
    case Expr::Op::add:
      return add(evaluate(*expr.lhs, n, options), evaluate(*expr.rhs, n, options), options);
    case Expr::Op::subtract:
      return subtract(evaluate(*expr.lhs, n, options), evaluate(*expr.rhs, n, options), options);
    case Expr::Op::multiply:
      return multiply(evaluate(*expr.lhs, n, options), evaluate(*expr.rhs, n, options), options);
    case Expr::Op::divide: {
      Magnitude den = evaluate(*expr.rhs, n, options);
      if (den.is_zero()) throw DomainError("division by zero at n=" + std::to_string(n));
      return divide(evaluate(*expr.lhs, n, options), den, options);
    }
    case Expr::Op::power: {
      const Magnitude e = evaluate(*expr.rhs, n, options);
      if (!e.is_exact()) throw DomainError("exponent is not exactly known at n=" + std::to_string(n));
      const Rational k = e.value(options.max_digits);
      if (k.get_den() != 1) throw DomainError("non-integer exponent at n=" + std::to_string(n));
      const Magnitude b = evaluate(*expr.lhs, n, options);
      if (b.is_zero() && sgn(k) < 0) throw DomainError("division by zero at n=" + std::to_string(n));
      return power(b, k.get_num(), options);
    }
  }
  throw DomainError("malformed expression");
}

SequenceRule::SequenceRule() : expr_(make_literal(1)) {}

SequenceRule SequenceRule::parse(std::string_view text) { return from_expr(parse_expr(text)); }

SequenceRule SequenceRule::from_expr(ExprPtr expr) {
  SequenceRule rule;
  rule.expr_ = std::move(expr);
  return rule;
}

SequenceRule SequenceRule::constant(const Rational& value) { return from_expr(make_literal(value)); }

SequenceRule SequenceRule::list(std::vector<Rational> values, ExprPtr then) {
  if (values.empty()) throw DomainError("explicit list rule needs at least one value");
  SequenceRule rule;
  rule.expr_ = nullptr;
  rule.list_ = std::move(values);
  rule.then_ = std::move(then);
  return rule;
}

Magnitude SequenceRule::magnitude(std::uint64_t n, const TermOptions& options) const {
  if (n < 1) throw DomainError("sequence index must be >= 1, got " + std::to_string(n));
  if (!is_list()) return evaluate(*expr_, n, options);
  if (n <= list_.size()) return Magnitude::exact(list_[n - 1]);
  if (then_) return evaluate(*then_, n, options);
  return Magnitude::exact(list_[(n - 1) % list_.size()]);
}

Rational SequenceRule::term(std::uint64_t n, const TermOptions& options) const {
  return magnitude(n, options).value(options.max_digits);
}

bool SequenceRule::is_literal_one() const {
  return !is_list() && expr_->op == Expr::Op::literal && expr_->literal == 1;
}

std::string SequenceRule::to_string() const {
  if (!is_list()) return radix::to_string(*expr_);
  std::string s = "[";
  for (std::size_t i = 0; i < list_.size(); ++i) {
    if (i) s += ", ";
    s += list_[i].get_str();
  }
  s += "]";
  if (then_) s += " then " + radix::to_string(*then_);
  return s;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw ParseError("empty rational", 0);
  Rational q;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const Magnitude num = evaluate(*parse_expr(s.substr(0, slash)), 1);
    const Magnitude den = evaluate(*parse_expr(s.substr(slash + 1)), 1);
    if (den.is_zero()) throw DomainError("zero denominator in '" + std::string(text) + "'");
    q = num.value(1000) / den.value(1000);
  } else {
    const ExprPtr e = parse_expr(s);
    if (e->op != Expr::Op::literal) throw ParseError("not a rational literal: '" + std::string(text) + "'", 0);
    q = e->literal;
  }
  return negative ? Rational(-q) : q;
}

}  // namespace radix
