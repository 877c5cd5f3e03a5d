#include "radix/eval.hpp"

#include <algorithm>
#include <cmath>

#include "radix/error.hpp"

namespace radix {
namespace {

// Slack for second-order terms dropped by the first-order error recursion.
constexpr double kSlack = 1.0 + 1e-6;

double ln_estimate(const Real& x) {
  long e = 0;
  const double mantissa = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log(std::fabs(mantissa)) + static_cast<double>(e) * 0.69314718055994531;
}

}  // namespace

void check_precision(unsigned precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw PrecisionError("precision " + std::to_string(precision_bits) + " bits is below the minimum of " +
                         std::to_string(kMinPrecisionBits));
  }
}

Real error_bound(const Real& value, double error_units, unsigned precision_bits) {
  Real e = Real::from_double(error_units, 64) * Real::pow2(-static_cast<long>(precision_bits), 64);
  return abs(value).with_precision(64) * e;
}

Real TailTable::rounding_bound(std::size_t i) const {
  return error_bound(at(i), error_units.at(i - 1), precision_bits);
}

RealTerms real_terms(const NormalizedSpec& spec, std::size_t upto, unsigned precision_bits) {
  check_precision(precision_bits);
  RealTerms terms;
  terms.precision_bits = precision_bits;
  extend_real_terms(terms, spec, upto);
  return terms;
}

void extend_real_terms(RealTerms& terms, const NormalizedSpec& spec, std::size_t upto) {
  if (upto > spec.horizon()) {
    throw HorizonError("depth " + std::to_string(upto) + " exceeds the normalized horizon " +
                       std::to_string(spec.horizon()));
  }
  const unsigned precision_bits = terms.precision_bits;
  for (std::size_t i = terms.a.size(); i < upto; ++i) {
    auto a = spec.a[i].to_real(precision_bits);
    terms.a.push_back(std::move(a.value));
    terms.a_error.push_back(a.error_units);
    if (spec.kind == SpecKind::weighted) {
      auto b = spec.b[i].to_real(precision_bits);
      terms.b.push_back(std::move(b.value));
      terms.b_error.push_back(b.error_units);
    }
    if (spec.kind == SpecKind::power) {
      const Rational& p = spec.p[i];
      terms.p.emplace_back(p, precision_bits);
      terms.reciprocal.push_back(p.get_num() == 1 && p.get_den().fits_ulong_p() ? p.get_den().get_ui() : 0);
    }
  }
}

TailTable tail_table(const NormalizedSpec& spec, const RealTerms& terms, std::size_t n) {
  if (n < 1) throw DomainError("depth must be >= 1");
  if (n > terms.a.size()) throw HorizonError("depth " + std::to_string(n) + " exceeds the prepared terms");
  TailTable table;
  table.depth = n;
  table.precision_bits = terms.precision_bits;
  table.kind = spec.kind;
  table.values.reserve(n);
  table.error_units.reserve(n);

  const bool power = spec.kind == SpecKind::power;
  const bool weighted = spec.kind == SpecKind::weighted;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t k = n + 1 - step;  // 1-based term index
    const Real& a = terms.a[k - 1];
    Real x = a;
    double err = terms.a_error[k - 1];
    if (step > 1) {
      x = a + table.values.back();
      err = std::max(err, table.error_units.back()) + 1.0;
    }
    if (x.sign() < 0) throw DomainError("negative intermediate value (normalization invariant violated)");
    Real t(terms.precision_bits);
    if (power) {
      const std::uint64_t m = terms.reciprocal[k - 1];
      if (m == 1) {
        t = x;
      } else if (m > 1) {
        t = root(x, m);
        err = err / static_cast<double>(m) + 1.0;
      } else {
        const double p = terms.p[k - 1].to_double();
        t = pow(x, terms.p[k - 1]);
        err = p * err + p * std::fabs(ln_estimate(x)) + 1.0;
      }
    } else {
      const std::uint64_t r = spec.r[k - 1];
      t = root(x, r);
      if (r > 1) err = err / static_cast<double>(r) + 1.0;
    }
    if (weighted) {
      t = terms.b[k - 1] * t;
      err += terms.b_error[k - 1] + 1.0;
    }
    err *= kSlack;
    if (!power) err = std::max(err, 8.0 * static_cast<double>(step));
    if (!t.is_finite()) throw OverflowError("approximant left the floating exponent range");
    table.values.push_back(std::move(t));
    table.error_units.push_back(err);
  }
  return table;
}

TailTable tail_table(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return tail_table(spec, real_terms(spec, n, precision_bits), n);
}

Approximant to_approximant(const TailTable& table) {
  Approximant out;
  out.depth = table.depth;
  out.value = table.approximant();
  out.precision_bits = table.precision_bits;
  out.rounding_bound = table.rounding_bound(table.depth);
  return out;
}

Approximant approximant(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return to_approximant(tail_table(spec, n, precision_bits));
}

Approximant power_form_approximant(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  if (spec.kind != SpecKind::power) throw DomainError("not a continued power form");
  return approximant(spec, n, precision_bits);
}

}  // namespace radix
