#include "radix/denest.hpp"

#include <cmath>

#include "radix/error.hpp"

namespace radix {

DenestValue denest_forward(const DenestFamily& family, std::size_t k, const Real& y, unsigned precision_bits,
                           double input_error_units) {
  check_precision(precision_bits);
  const NormalizedSpec& spec = family.spec();
  if (k > spec.horizon()) {
    throw HorizonError("denesting order " + std::to_string(k) + " exceeds the normalized horizon " +
                       std::to_string(spec.horizon()));
  }
  if (!(y.sign() > 0)) throw DomainError("denesting needs a positive argument");
  if (k >= 2) {
    const Approximant floor = approximant(spec, k - 1, precision_bits);
    if (!(y > floor.value - floor.rounding_bound)) {
      throw DomainError("argument lies below v_" + std::to_string(k - 1) + ", outside the increasing domain of f_" +
                        std::to_string(k));
    }
  }

  const RealTerms terms = real_terms(spec, k, precision_bits);
  DenestValue out;
  out.value = y.with_precision(precision_bits);
  double err = input_error_units;
  const double half_precision = std::ldexp(1.0, static_cast<int>(precision_bits / 2));
  for (std::size_t m = 1; m <= k; ++m) {
    if (!(out.value.sign() > 0)) {
      throw DomainError("f_" + std::to_string(m - 1) + "(y) is not positive; y is outside the domain of f_" +
                        std::to_string(k));
    }
    Real base = out.value;
    if (spec.kind == SpecKind::weighted) {
      base = base / terms.b[m - 1];
      err += terms.b_error[m - 1] + 1.0;
    }
    Real raised(precision_bits);
    if (spec.kind == SpecKind::power) {
      const Rational inverse = 1 / spec.p[m - 1];
      if (inverse.get_den() == 1 && inverse.get_num().fits_ulong_p()) {
        const std::uint64_t e = inverse.get_num().get_ui();
        raised = pow(base, e);
        err = static_cast<double>(e) * err + 1.0;
      } else {
        const Real exponent(inverse, precision_bits);
        raised = pow(base, exponent);
        const double q = inverse.get_d();
        err = q * err + q * std::fabs(log(base).to_double()) + 1.0;
      }
    } else {
      const std::uint64_t r = spec.r[m - 1];
      raised = pow(base, r);
      err = static_cast<double>(r) * err + 1.0;
    }
    const Real& a = terms.a[m - 1];
    out.value = raised - a;
    // Absolute error (raised*err + a*a_err) measured relative to the difference.
    const double amplification = out.value.is_zero() ? HUGE_VAL : (abs(raised) / abs(out.value)).to_double();
    const double a_share = out.value.is_zero() ? HUGE_VAL : (a / abs(out.value)).to_double();
    err = amplification * err + a_share * terms.a_error[m - 1] + 1.0;
    // Accumulated loss, not just this step's.
    if (err > half_precision) out.cancellation_warning = true;
  }
  out.error_units = err * (1.0 + 1e-6);
  out.error_bound = error_bound(out.value, out.error_units, precision_bits);
  return out;
}

const Real& denest_from_tail(const TailTable& table, std::size_t j) {
  if (j >= table.depth) {
    throw DomainError("denesting order " + std::to_string(j) + " out of range for a depth-" +
                      std::to_string(table.depth) + " row");
  }
  return table.layer(j + 1);
}

}  // namespace radix
